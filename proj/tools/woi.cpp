// Command-line front end: describe a root datum, run verification suites,
// or evaluate a single operation. Exit codes: 0 pass, 1 check failure,
// 2 usage or configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "woi/commands.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::filesystem::path report_path(const woi::Config& c, const std::string& cli_output) {
  std::filesystem::path name = !cli_output.empty() ? cli_output
                               : !c.output.empty() ? c.output
                                                   : "report-" + c.group + ".json";
  if (const char* dir = std::getenv("WOI_REPORT_DIR"); dir && *dir) return std::filesystem::path(dir) / name.filename();
  return name;
}

int run_verify(const std::string& config_path, const std::string& group, const std::vector<std::string>& suites,
               const std::string& output, bool timings) {
  woi::Config cfg;
  try {
    if (!config_path.empty()) cfg = woi::load_config(config_path);
    nlohmann::json overrides = {{"schema", woi::kConfigSchema}};
    if (!suites.empty()) {
      overrides["suites"] = suites;
      cfg.suites = woi::parse_config(overrides).suites;
    }
    if (!group.empty()) cfg.group = group;
  } catch (const std::exception& e) {
    std::cerr << "woi: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  }
  woi::SuiteContext ctx;
  try {
    ctx.datum = std::make_shared<const woi::RootDatum>(woi::build_datum(cfg));
  } catch (const std::exception& e) {
    std::cerr << "woi: invalid group: " << e.what() << "\n";
    return kExitUsage;
  }
  ctx.config = cfg;
  ctx.timings = timings;
  woi::VerificationReport rep = woi::run_verify(ctx);
  nlohmann::json j = woi::report_json(ctx, rep);

  auto path = report_path(cfg, output);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) {
    std::cerr << "woi: cannot write report " << path << "\n";
    return kExitUsage;
  }
  out << j.dump(2) << "\n";
  for (const auto* c : rep.failures()) std::cout << "FAIL " << c->id << " residual=" << c->residual << "\n";
  std::cout << "group " << cfg.group << ": " << rep.count(woi::Status::Pass) << " pass, "
            << rep.count(woi::Status::Fail) << " fail, " << rep.count(woi::Status::Skip) << " skip; report "
            << path.string() << "\n";
  return rep.all_pass() ? kExitPass : kExitFail;
}

int run_eval(const std::string& config_path, const std::string& group, const std::string& expr, const std::string& args_text) {
  nlohmann::json args;
  woi::Config cfg;
  std::shared_ptr<const woi::RootDatum> d;
  try {
    args = args_text.empty() ? nlohmann::json::object() : nlohmann::json::parse(args_text);
    if (!args.is_object()) throw woi::Error(woi::ErrorKind::InvalidArgument, "--args must be a JSON object");
    if (!config_path.empty()) cfg = woi::load_config(config_path);
    if (args.contains("group")) cfg.group = args.at("group").get<std::string>();
    if (!group.empty()) cfg.group = group;
    if (std::find(woi::expression_ids().begin(), woi::expression_ids().end(), expr) == woi::expression_ids().end())
      throw woi::Error(woi::ErrorKind::InvalidArgument, "unknown expression id: " + expr);
    d = std::make_shared<const woi::RootDatum>(woi::build_datum(cfg));
  } catch (const std::exception& e) {
    std::cerr << "woi: " << e.what() << "\n";
    return kExitUsage;
  }
  args.erase("group");
  try {
    woi::EvalResult r = woi::eval_expr(d, expr, args);
    std::cout << r.value << "\n" << "provenance: " << r.provenance.dump(2) << "\n";
    return kExitPass;
  } catch (const woi::Error& e) {
    std::cerr << "woi: " << woi::to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "woi: bad arguments: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_describe(const std::string& config_path, const std::string& group) {
  try {
    woi::Config cfg;
    if (!config_path.empty()) cfg = woi::load_config(config_path);
    if (!group.empty()) cfg.group = group;
    std::cout << woi::describe_json(woi::build_datum(cfg)).dump(2) << "\n";
    return kExitPass;
  } catch (const std::exception& e) {
    std::cerr << "woi: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorics and numerics of weighted orbital integral identities"};
  app.require_subcommand(1);

  std::string config_path, group, output, expr, args_text;
  std::vector<std::string> suites;
  bool timings = false;

  auto* describe = app.add_subcommand("describe", "List Levis, parabolic counts, Weyl order and coset tables");
  describe->add_option("--group", group, "Root datum label, e.g. A2 or A1xA1");
  describe->add_option("--config", config_path, "Config file");

  auto* verify = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  verify->add_option("--group", group, "Root datum label");
  verify->add_option("--suite", suites, "Suite name (repeatable), or 'all'");
  verify->add_option("--config", config_path, "Config file");
  verify->add_option("--output", output, "Report file name");
  verify->add_flag("--timings", timings, "Record wall-clock runtimes (reports are then not reproducible)");

  auto* eval = app.add_subcommand("eval", "Evaluate one operation");
  eval->add_option("--expr", expr, "Expression id")->required();
  eval->add_option("--args", args_text, "Arguments as a JSON object");
  eval->add_option("--group", group, "Root datum label");
  eval->add_option("--config", config_path, "Config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (describe->parsed()) return run_describe(config_path, group);
  if (verify->parsed()) return run_verify(config_path, group, suites, output, timings);
  return run_eval(config_path, group, expr, args_text);
}
