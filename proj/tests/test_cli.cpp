#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "woi/commands.hpp"

using namespace woi;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_config() { return {{"schema", kConfigSchema}}; }

SuiteContext context(const nlohmann::json& j) {
  SuiteContext ctx;
  ctx.config = parse_config(j);
  ctx.datum = std::make_shared<const RootDatum>(build_datum(ctx.config));
  return ctx;
}

std::shared_ptr<const RootDatum> datum(const std::string& label) {
  return std::make_shared<const RootDatum>(build_root_system(label));
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("woi_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the CLI binary inside `dir`; returns its exit code.
int cli(const fs::path& dir, const std::string& args, const std::string& env = "") {
  std::string cmd = "cd '" + dir.string() + "' && " + env + " '" + WOI_CLI_PATH + "' " + args + " > out.txt 2> err.txt";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

// --- config ------------------------------------------------------------------

TEST(Config, DefaultsResolve) {
  Config c = parse_config(base_config());
  EXPECT_EQ(c.group, "A2");
  EXPECT_TRUE(c.suites.empty());
  EXPECT_EQ(c.battery.size(), 5u);
  EXPECT_EQ(c.delta_ladder.size(), 3u);
}

TEST(Config, RejectsUnknownKeysAndSchema) {
  auto j = base_config();
  j["colour"] = "blue";
  EXPECT_THROW(parse_config(j), Error);
  EXPECT_THROW(parse_config(nlohmann::json{{"group", "A2"}}), Error);
  EXPECT_THROW(parse_config(nlohmann::json{{"schema", "woi-config/0"}}), Error);
  auto t = base_config();
  t["tolerances"] = {{"everything", 1e-3}};
  EXPECT_THROW(parse_config(t), Error);
  auto h = base_config();
  h["battery"] = nlohmann::json::array({{{"poly", {1}}, {"width", 2}}});
  EXPECT_THROW(parse_config(h), Error);
}

TEST(Config, RejectsBadValues) {
  auto s = base_config();
  s["suites"] = {"trand", "nonsense"};
  EXPECT_THROW(parse_config(s), Error);
  auto d = base_config();
  d["densities"] = {"wiggle(3)"};
  EXPECT_THROW(parse_config(d), Error);
  auto l = base_config();
  l["ladders"] = {{"delta", {0.1, 0.01}}};
  EXPECT_THROW(parse_config(l), Error);
  auto n = base_config();
  n["ladders"] = {{"eps", {0.1, -0.2}}};
  EXPECT_THROW(parse_config(n), Error);
}

TEST(Config, AllExpandsToEverySuite) {
  auto j = base_config();
  j["suites"] = {"all"};
  EXPECT_EQ(parse_config(j).suites, known_suites());
  j["suites"] = {"trand", "trand", "tdisc"};
  EXPECT_EQ(parse_config(j).suites, (std::vector<std::string>{"trand", "tdisc"}));
}

TEST(Config, ParsesRationalsAndGram) {
  auto j = base_config();
  j["group"] = "B2";
  j["gram"] = {{2, -1}, {-1, 1}};
  j["battery"] = nlohmann::json::array({{{"poly", {"1/3", 0, 1}}, {"scale", "1/2"}}});
  Config c = parse_config(j);
  ASSERT_TRUE(c.gram.has_value());
  EXPECT_EQ((*c.gram)(0, 1), -1);
  EXPECT_EQ(c.battery[0].poly[0], rat(1, 3));
  EXPECT_EQ(c.battery[0].scale, rat(1, 2));
  EXPECT_EQ(build_datum(c).form, *c.gram);
}

TEST(Config, ShippedSamplesParse) {
  for (const auto& entry : fs::directory_iterator(fs::path(WOI_SOURCE_DIR) / "samples" / "configs")) {
    EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
  }
}

// --- verify -------------------------------------------------------------------

TEST(Verify, EmptySuiteListGivesEmptyReport) {
  auto ctx = context(base_config());
  auto rep = run_verify(ctx);
  EXPECT_TRUE(rep.checks.empty());
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(report_json(ctx, rep)["checks"].size(), 0u);
}

TEST(Verify, TrandOnA2AllPass) {
  auto j = base_config();
  j["suites"] = {"trand"};
  auto rep = run_verify(context(j));
  EXPECT_GT(rep.checks.size(), 0u);
  EXPECT_TRUE(rep.all_pass());
}

TEST(Verify, LemmaShiftOnA1Within1e6) {
  auto j = base_config();
  j["group"] = "A1";
  j["suites"] = {"lemma-shift"};
  j["tolerances"] = {{"lemma_shift", 1e-6}};
  auto rep = run_verify(context(j));
  EXPECT_GT(rep.count(Status::Pass), 0u);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_LE(rep.max_residual(), 1e-6);
}

TEST(Verify, RecordsAreSortedAndAnchored) {
  auto j = base_config();
  j["suites"] = {"examples", "nL-independence", "tdisc"};
  auto ctx = context(j);
  auto rep = run_verify(ctx);
  for (std::size_t i = 1; i < rep.checks.size(); ++i) EXPECT_LE(rep.checks[i - 1].id, rep.checks[i].id);
  for (const auto& c : rep.checks) {
    EXPECT_FALSE(c.anchor.empty()) << c.id;
    EXPECT_EQ(c.inputs_digest.size(), 16u);
    EXPECT_FALSE(c.runtime.has_value());
  }
  auto json = report_json(ctx, rep);
  EXPECT_EQ(json["schema"], kReportSchema);
  EXPECT_EQ(json["gram"], gram_json(ctx.datum->gram));
  EXPECT_TRUE(json["checks"][0]["runtime"].is_null());
}

TEST(Verify, HigherRankSkipsNumericSuites) {
  auto j = base_config();
  j["group"] = "A3";
  j["suites"] = {"lemma-shift", "tempext"};
  auto rep = run_verify(context(j));
  EXPECT_EQ(rep.count(Status::Skip), 2u);
  EXPECT_TRUE(rep.all_pass());
}

TEST(Verify, ImpossibleToleranceFails) {
  auto j = base_config();
  j["group"] = "A1";
  j["suites"] = {"residue-1d"};
  j["tolerances"] = {{"residue", 1e-30}};
  auto rep = run_verify(context(j));
  EXPECT_FALSE(rep.all_pass());
}

// --- describe and eval ----------------------------------------------------------

TEST(Describe, LeviAndWeylCounts) {
  for (const auto& [label, levis, order] :
       std::vector<std::tuple<std::string, std::size_t, std::size_t>>{{"A1", 2, 2}, {"A2", 5, 6}, {"B2", 6, 8}}) {
    auto j = describe_json(build_root_system(label));
    EXPECT_EQ(j["levis"].size(), levis) << label;
    EXPECT_EQ(j["weyl_order"], order) << label;
  }
}

TEST(Describe, CosetTablesHaveTheRightSize) {
  auto d = build_root_system("B2");
  auto j = describe_json(d);
  for (const auto& L : j["levis"]) {
    std::size_t wl = 1;
    for (const auto& x : enumerate_levis(d))
      if (x.label == L["label"]) wl = d.weyl.size() / weyl_cosets(d, x).size();
    EXPECT_EQ(L["coset_representatives"].size() * wl, d.weyl.size());
  }
}

TEST(Eval, SpecExamples) {
  EXPECT_EQ(eval_expr(datum("A2"), "d", {{"L1", "M0"}, {"L", "M0"}, {"S", "G"}}).value, "1");
  EXPECT_EQ(eval_expr(datum("A1"), "nL", {{"sigma", {0, 1}}}).value, "1/2");
  EXPECT_EQ(eval_expr(datum("A2"), "alpha_X", {{"X", {1, "2/3"}}}).value, "1");
}

TEST(Eval, EveryExpressionEvaluates) {
  auto d = datum("A2");
  const std::map<std::string, nlohmann::json> args{
      {"theta", {{"lambda", {1, 2}}}},
      {"d", {{"L1", "M0"}, {"L", "L[0]"}, {"S", "L[1]"}}},
      {"n_beta", {{"sigma", {0, 3}}, {"beta", {1, 0}}}},
      {"nL", {{"sigma", {0, 1, 2, 3, 4, 5}}, {"L", "G"}}},
      {"kL", {{"r", {0, 1}}}},
      {"alpha_X", {{"nu", {1, 1}}, {"X", {1, 0}}}},
      {"eps_M", {{"w", {0}}}},
      {"delta_Sigma", {{"Y", {0.5, {0.1, 0.2}}}}},
      {"c_coeff", {{"w", {1}}, {"L", "G"}, {"U", 1}}},
      {"phi_TT", {{"mu_im", {1, 3}}}}};
  for (const auto& id : expression_ids()) {
    ASSERT_TRUE(args.count(id)) << id;
    EvalResult r;
    ASSERT_NO_THROW(r = eval_expr(d, id, args.at(id))) << id;
    EXPECT_FALSE(r.value.empty()) << id;
    EXPECT_EQ(r.provenance["expr"], id);
  }
  EXPECT_EQ(eval_expr(d, "eps_M", {{"w", {0}}}).value, "-1");
  EXPECT_EQ(eval_expr(d, "d", {{"L1", "M0"}, {"L", "L[0]"}, {"S", "L[1]"}}).value, "sqrt(3/4)");
  auto tt = nlohmann::json::parse(eval_expr(d, "phi_TT", {{"mu_im", {1, 3}}}).value);
  EXPECT_EQ(tt["terms"].size(), 30u);
}

TEST(Eval, UnknownIdThrows) { EXPECT_THROW(eval_expr(datum("A1"), "zeta", {}), Error); }

// --- the binary ------------------------------------------------------------------

TEST(Binary, ExitCodes) {
  auto dir = scratch_dir("exit");
  EXPECT_EQ(cli(dir, "verify --group A1"), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "report-A1.json"))["checks"].size(), 0u);
  EXPECT_EQ(cli(dir, "verify --group A2 --suite trand"), 0);
  EXPECT_EQ(cli(dir, "verify --group A2 --suite nonsense"), 2);
  EXPECT_EQ(cli(dir, "verify --group Q7 --suite trand"), 2);
  EXPECT_EQ(cli(dir, "eval --expr zeta --group A1"), 2);
  EXPECT_EQ(cli(dir, "eval --expr d --args '{not json'"), 2);
  EXPECT_EQ(cli(dir, "frobnicate"), 2);
  std::ofstream(dir / "bad.json") << R"({"schema": "woi-config/1", "colour": 1})";
  EXPECT_EQ(cli(dir, "verify --config bad.json"), 2);
  std::ofstream(dir / "strict.json")
      << R"({"schema": "woi-config/1", "group": "A1", "suites": ["residue-1d"], "tolerances": {"residue": 1e-30}})";
  EXPECT_EQ(cli(dir, "verify --config strict.json"), 1);
}

TEST(Binary, EvalPrintsValueThenProvenance) {
  auto dir = scratch_dir("eval");
  ASSERT_EQ(cli(dir, "eval --group A1 --expr nL --args '{\"sigma\": [0, 1]}'"), 0);
  std::istringstream out(slurp(dir / "out.txt"));
  std::string first, second;
  std::getline(out, first);
  std::getline(out, second);
  EXPECT_EQ(first, "1/2");
  EXPECT_EQ(second.rfind("provenance:", 0), 0u);
}

TEST(Binary, DescribeCounts) {
  auto dir = scratch_dir("describe");
  ASSERT_EQ(cli(dir, "describe --group B2"), 0);
  auto j = nlohmann::json::parse(slurp(dir / "out.txt"));
  EXPECT_EQ(j["levis"].size(), 6u);
  EXPECT_EQ(j["weyl_order"], 8);
}

TEST(Binary, ReportDirectoryOverride) {
  auto dir = scratch_dir("envdir");
  auto target = dir / "reports";
  ASSERT_EQ(cli(dir, "verify --group A1 --suite trand --output named.json", "WOI_REPORT_DIR='" + target.string() + "'"), 0);
  EXPECT_TRUE(fs::exists(target / "named.json"));
  EXPECT_FALSE(fs::exists(dir / "named.json"));
}

TEST(Binary, ReportsAreByteIdentical) {
  auto dir = scratch_dir("determinism");
  ASSERT_EQ(cli(dir, "verify --group A2 --suite trand --suite examples --suite residue-1d --output a.json"), 0);
  ASSERT_EQ(cli(dir, "verify --group A2 --suite trand --suite examples --suite residue-1d --output b.json"), 0);
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  ASSERT_EQ(cli(dir, "verify --group A2 --suite trand --timings --output c.json"), 0);
  auto j = nlohmann::json::parse(slurp(dir / "c.json"));
  EXPECT_TRUE(j["checks"][0]["runtime"].is_number());
}
