#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "woi/asymptotic.hpp"
#include "woi/config.hpp"
#include "woi/contour.hpp"
#include "woi/gm_family.hpp"
#include "woi/spectral.hpp"

// The verification suites behind `woi verify`, each producing a report of
// independent checks, and the deterministic merge into one JSON document.

namespace woi {

struct SuiteContext {
  std::shared_ptr<const RootDatum> datum;
  Config config;
  bool timings = false;
};

namespace detail {

/// Runs one unit of work, stamping its wall time on the records it adds and
/// turning library errors into a failing record.
inline void run_unit(VerificationReport& rep, const SuiteContext& ctx, const std::string& id, const std::string& anchor,
                     const std::function<void(VerificationReport&)>& body) {
  VerificationReport local;
  auto start = std::chrono::steady_clock::now();
  try {
    body(local);
  } catch (const Error& e) {
    local.add(make_check(id + "/error", anchor, id, false, HUGE_VAL,
                         {{"error", e.what()}, {"kind", to_string(e.kind())}}));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ctx.timings)
    for (auto& c : local.checks) c.runtime = secs;
  rep.append(local);
}

inline CheckRecord skip_record(const std::string& id, const std::string& anchor, const std::string& why) {
  CheckRecord c = make_check(id, anchor, id, true, 0.0, {{"note", why}});
  c.status = Status::Skip;
  return c;
}

inline TauClass torus_class(const std::shared_ptr<const RootDatum>& d) {
  std::vector<int> all(d->roots.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return make_tau_class(build_spectral_triple(d, all, {}));
}

inline ComplexVec generic_lambda(int rank) {
  ComplexVec out;
  for (int i = 0; i < rank; ++i) out.emplace_back(0.3 / (i + 1), 0.2 + 0.15 * i);
  return out;
}

inline std::string double_str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline VerificationReport suite_hull_limit(const SuiteContext& ctx) {
  const RootDatum& d = *ctx.datum;
  VerificationReport rep;
  const std::string anchor = "family limit equals convex hull volume";
  std::mt19937 rng(ctx.config.seed);
  std::uniform_int_distribution<int> num(0, 9), den(1, 4);
  for (const auto& M : enumerate_levis(d))
    for (int i = 0; i < ctx.config.hull_samples; ++i) {
      RatVec T(d.rank);
      for (int k = 0; k < d.rank; ++k) T[k] = rat(num(rng), den(rng));
      const std::string id = "hull-limit/" + d.label + "/" + M.label + "/" + std::to_string(i);
      detail::run_unit(rep, ctx, id, anchor, [&](VerificationReport& r) {
        auto s = orthogonal_set(d, M, T);
        QuadConst hull = hull_volume(d, s);
        SurdValue lim = family_limit(d, exponential_family(d, s));
        auto q = lim.as_quad();
        bool pass = q && *q == hull;
        r.add(make_check(id, anchor, T.str(), pass, std::abs(lim.value() - hull.value()),
                         {{"T", T.str()}, {"hull", hull.str()}, {"limit", lim.str()}}));
      });
    }
  return rep;
}

inline VerificationReport suite_trand(const SuiteContext& ctx) {
  VerificationReport rep;
  detail::run_unit(rep, ctx, "trand/" + ctx.datum->label, "transitivity of splitting constants",
                   [&](VerificationReport& r) { r.append(trand_check(*ctx.datum)); });
  return rep;
}

inline VerificationReport suite_tdisc(const SuiteContext& ctx) {
  VerificationReport rep;
  const std::string anchor = "discreteness criterion";
  for (const auto& t : enumerate_triples(ctx.datum)) {
    const std::string base = "tdisc/" + ctx.datum->label + "/" + t.label();
    detail::run_unit(rep, ctx, base, anchor, [&](VerificationReport& r) {
      TauClass tc = make_tau_class(t);
      for (const auto& Gp : enumerate_levis(*ctx.datum, tc.levi)) {
        auto c = classify_tau(tc, Gp);
        r.add(make_check(base + "/" + Gp.label, anchor, base + Gp.label, c.span_test == c.brute_force,
                         c.span_test == c.brute_force ? 0.0 : 1.0,
                         {{"span_test", c.span_test}, {"brute_force", c.brute_force}, {"discrete", c.discrete}}));
      }
      WTauModel m = wtau_model(tc);
      bool ok = m.transitive && m.reflections_realized;
      r.add(make_check(base + "/w-tau", "chamber transitivity of W_tau", base, ok, ok ? 0.0 : 1.0,
                       {{"order", m.elements.size()}, {"transitive", m.transitive},
                        {"reflections_realized", m.reflections_realized}}));
    });
  }
  return rep;
}

inline VerificationReport suite_nl_independence(const SuiteContext& ctx) {
  VerificationReport rep;
  const std::string anchor = "n^L independent of the parabolic";
  for (const auto& t : enumerate_triples(ctx.datum)) {
    const std::string base = "nL-independence/" + ctx.datum->label + "/" + t.label();
    detail::run_unit(rep, ctx, base, anchor, [&](VerificationReport& r) {
      TauClass tc = make_tau_class(t);
      for (const auto& Lp : enumerate_levis(*ctx.datum, tc.levi)) {
        DiscreteConstants c = discrete_constants(tc, Lp);
        bool same = std::all_of(c.per_chamber.begin(), c.per_chamber.end(), [&](const Rational& v) { return v == c.nL; });
        bool base_case = !(Lp == tc.levi) || c.nL == 1;
        nlohmann::json per = nlohmann::json::array();
        for (const auto& v : c.per_chamber) per.push_back(v.get_str());
        r.add(make_check(base + "/" + Lp.label, anchor, base + Lp.label, same && base_case, same && base_case ? 0.0 : 1.0,
                         {{"nL", c.nL.get_str()}, {"kL", c.kL}, {"per_chamber", per}}));
      }
    });
  }
  return rep;
}

inline VerificationReport suite_residue_1d(const SuiteContext& ctx) {
  VerificationReport rep;
  const std::string anchor = "one-dimensional residue identity";
  ResidueIdentityOptions opt;
  opt.battery = ctx.config.battery;
  opt.tolerance = ctx.config.residue_tolerance;
  opt.pv.ladder = ctx.config.delta_ladder;
  std::vector<std::string> templates = ctx.config.densities;
  templates.push_back("pole()");
  for (const Rational& n : {rat(1, 2), rat(1), rat(2)})
    for (const auto& tmpl : templates) {
      const std::string id = "residue-1d/" + tmpl + "/n=" + n.get_str();
      detail::run_unit(rep, ctx, id, anchor, [&](VerificationReport& r) {
        Density f = tmpl == "pole()" ? Density::pole(n) : parse_density(tmpl, n);
        r.append(residue_identity_1d(f, n, opt));
        if (tmpl != "pole()") return;
        // Pure pole: the principal value of an even φ vanishes.
        for (const auto& phi : opt.battery) {
          if (phi.parity_on_axis() != 1) continue;
          LineValue pv = pv_integral(f, phi, opt.pv);
          const std::string pid = "residue-1d/" + f.describe() + "/pv-even/" + phi.describe();
          r.add(make_check(pid, anchor, pid, std::abs(pv.value) <= 1e-8, std::abs(pv.value),
                           {{"pv", {pv.value.real(), pv.value.imag()}}}));
        }
      });
    }
  return rep;
}

inline VerificationReport suite_lemma_shift(const SuiteContext& ctx) {
  const RootDatum& d = *ctx.datum;
  VerificationReport rep;
  const std::string anchor = "contour shift with principal values";
  if (d.rank > 2) {
    rep.add(detail::skip_record("lemma-shift/" + d.label, anchor, "numeric integration is limited to dim a_L1 <= 2"));
    return rep;
  }
  TauClass tc = detail::torus_class(ctx.datum);
  LemmaShiftOptions opt;
  opt.eps = ctx.config.eps_ladder;
  opt.tolerance = ctx.config.lemma_shift_tolerance;
  opt.pv.ladder = ctx.config.delta_ladder;
  for (const auto& tmpl : ctx.config.densities) {
    ScalarRootFns fns = tau_densities(tc, [&](const Rational& n) { return parse_density(tmpl, n); });
    for (const auto& M : enumerate_levis(d, tc.levi)) {
      auto chambers = parabolics(d, M);
      for (std::size_t i = 0; i < chambers.size(); ++i) {
        opt.label = "lemma-shift/" + d.label + "/" + tmpl + "/" + M.label + "/P" + std::to_string(i);
        detail::run_unit(rep, ctx, opt.label, anchor, [&](VerificationReport& r) {
          r.append(lemma_shift_check(d, tc.levi, M, chambers[i], tc, fns, ctx.config.shift_phi, opt));
        });
      }
    }
  }
  return rep;
}

inline VerificationReport suite_tempext(const SuiteContext& ctx) {
  const RootDatum& d = *ctx.datum;
  VerificationReport rep;
  const std::string anchor = "W_tau-symmetrised extension";
  if (d.rank > 2) {
    rep.add(detail::skip_record("tempext/" + d.label, anchor, "wall sampling is run at rank <= 2"));
    return rep;
  }
  TempextOptions opt;
  opt.deltas = ctx.config.tempext_deltas;
  opt.threshold = ctx.config.tempext_threshold;
  std::vector<std::string> templates = ctx.config.densities;
  templates.push_back("pole()");
  for (const auto& t : enumerate_triples(ctx.datum))
    for (const auto& tmpl : templates) {
      const std::string prefix = "tempext/" + tmpl + "/";
      detail::run_unit(rep, ctx, prefix + d.label + "/" + t.label(), anchor, [&](VerificationReport& r) {
        TauClass tc = make_tau_class(t);
        ScalarRootFns fns = tau_densities(
            tc, [&](const Rational& n) { return tmpl == "pole()" ? Density::pole(n) : parse_density(tmpl, n); });
        VerificationReport part = tempext_check(tc, fns, ctx.config.tempext_phi, opt);
        for (auto& c : part.checks) c.id = prefix + c.id.substr(std::string("tempext/").size());
        r.append(part);
      });
    }
  return rep;
}

/// Closed formulas of the asymptotic expansion, checked against the
/// building blocks they are assembled from.
inline VerificationReport suite_examples(const SuiteContext& ctx) {
  const RootDatum& d = *ctx.datum;
  VerificationReport rep;
  const std::string base = "examples/" + d.label;
  auto levis = enumerate_levis(d);

  detail::run_unit(rep, ctx, base + "/alpha", "multiplier", [&](VerificationReport& r) {
    for (const auto& M1 : levis) {
      RatVec X(d.rank);
      for (int i = 0; i < d.rank; ++i) X[i] = rat(i + 1, 3);
      double dev = std::abs(multiplier_alpha(d, M1, RatVec(d.rank), X) - 1.0);
      r.add(make_check(base + "/alpha/" + M1.label + "/nu=0", "multiplier at zero", M1.label, dev <= 1e-14, dev));
    }
    std::mt19937 rng(ctx.config.seed);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    double worst = 0;
    for (int s = 0; s < 100; ++s) {
      RatVec nu(d.rank), X(d.rank);
      for (int i = 0; i < d.rank; ++i) {
        nu[i] = rat(num(rng), den(rng));
        X[i] = rat(num(rng), den(rng));
      }
      worst = std::max(worst, std::abs(multiplier_alpha(d, levis[s % levis.size()], nu, X)));
    }
    r.add(make_check(base + "/alpha/bounded", "multiplier bounded by one", "100 samples", worst <= 1 + 1e-12,
                     std::max(0.0, worst - 1), {{"max_abs", worst}, {"samples", 100}}));
  });

  detail::run_unit(rep, ctx, base + "/signs", "Weyl denominator", [&](VerificationReport& r) {
    ComplexVec Y;
    for (int i = 0; i < d.rank; ++i) Y.emplace_back(0.4 - 0.3 * i, 0.1 * (i + 1));
    for (const auto& M : levis) {
      auto sigma = levi_positive_system(d, M);
      auto seq = weyl_sequence(d, M);
      bool character = true;
      for (int a : seq.normalizer)
        for (int b : seq.normalizer)
          character = character && eps_M_sign(d, d.weyl[d.mult[a][b]], sigma) ==
                                       eps_M_sign(d, d.weyl[a], sigma) * eps_M_sign(d, d.weyl[b], sigma);
      r.add(make_check(base + "/eps-character/" + M.label, "sign character on the normalizer", M.label, character,
                       character ? 0.0 : 1.0, {{"normalizer_order", seq.normalizer.size()}}));
      Complex ref = weyl_denominator(d, sigma, Y);
      double worst = 0;
      for (int w : seq.normalizer) {
        ComplexVec wY(d.rank, 0.0);
        for (int i = 0; i < d.rank; ++i)
          for (int j = 0; j < d.rank; ++j) wY[i] += d.weyl[w].matrix(i, j).get_d() * Y[j];
        worst = std::max(worst, std::abs(weyl_denominator(d, sigma, wY) - double(eps_M_sign(d, d.weyl[w], sigma)) * ref));
      }
      r.add(make_check(base + "/weyl-denominator/" + M.label, "Weyl denominator antisymmetry", M.label,
                       worst <= 1e-10 * (1 + std::abs(ref)), worst));
    }
  });

  TauClass tc = detail::torus_class(ctx.datum);
  const ComplexVec lambda = detail::generic_lambda(d.rank);
  for (const auto& tmpl : ctx.config.densities) {
    detail::run_unit(rep, ctx, base + "/c-coefficient/" + tmpl, "coefficient for L = M", [&](VerificationReport& r) {
      ScalarRootFns fns = tau_densities(tc, [&](const Rational& n) { return parse_density(tmpl, n); });
      SigmaModel model = make_sigma_model(tc, fns, lambda);
      auto chambers = parabolics(d, tc.levi);
      for (std::size_t i = 0; i < chambers.size(); ++i)
        for (int k = 0; k < 4; ++k) {
          UnitSign u{k};
          Complex c = c_coefficient_example(model, 0, chambers[i], u, tc.levi);
          Complex expect = u.value() * split_formula(d, fns.reflect(), tc.levi, chambers[i], chambers[i], lambda);
          double diff = std::abs(c - expect);
          const std::string id = base + "/c-coefficient/" + tmpl + "/P" + std::to_string(i) + "/U" + std::to_string(k);
          r.add(make_check(id, "coefficient for L = M", id, diff <= 1e-12 * (1 + std::abs(expect)), diff,
                           {{"c", {c.real(), c.imag()}}, {"split_formula", {expect.real(), expect.imag()}}}));
        }
    });
  }

  detail::run_unit(rep, ctx, base + "/assemble", "assembly over cosets", [&](VerificationReport& r) {
    TauClass top = make_tau_class(tc.triple, whole_group(d));
    auto P = parabolics(d, minimal_levi(d)).front();
    ScalarRootFns fns(Density::model_plancherel(1, 1));
    bool empty = phiP_index_set(d, minimal_levi(d), top.levi).empty();
    Complex v = assemble_PhiP({}, top, whole_group(d), P, fns, lambda);
    r.add(make_check(base + "/assemble/empty-coset-filter", "assembly over cosets", "L1=G,M=M0",
                     empty && v == Complex(0.0), std::abs(v)));
  });

  detail::run_unit(rep, ctx, base + "/phi-TT", "expansion for a split torus", [&](VerificationReport& r) {
    ScalarRootFns fns = tau_densities(tc, [&](const Rational& n) { return Density::model_plancherel(n, 1); });
    SigmaModel model = make_sigma_model(tc, fns, lambda);
    RatVec im(d.rank);
    for (int i = 0; i < d.rank; ++i) im[i] = rat(2 * i + 1, i + 2);
    auto P = parabolics(d, minimal_levi(d)).front();
    FormalExpansion e = phi_TT_expansion(model, {RatVec(d.rank), im}, P, "Y");
    bool count = e.terms.size() == levis.size() * d.weyl.size();
    double worst = 0;
    for (const auto& t : e.terms)
      if (t.levi == minimal_levi(d).label) worst = std::max(worst, std::abs(t.coefficient - 1.0));
    r.add(make_check(base + "/phi-TT/torus-terms", "expansion for a split torus", im.str(), count && worst == 0, worst,
                     {{"terms", e.terms.size()}}));
  });
  return rep;
}

// ---------------------------------------------------------------------------

inline VerificationReport run_suite(const SuiteContext& ctx, const std::string& name) {
  if (name == "hull-limit") return suite_hull_limit(ctx);
  if (name == "trand") return suite_trand(ctx);
  if (name == "tdisc") return suite_tdisc(ctx);
  if (name == "nL-independence") return suite_nl_independence(ctx);
  if (name == "residue-1d") return suite_residue_1d(ctx);
  if (name == "lemma-shift") return suite_lemma_shift(ctx);
  if (name == "tempext") return suite_tempext(ctx);
  if (name == "examples") return suite_examples(ctx);
  throw Error(ErrorKind::InvalidArgument, "unknown suite: " + name);
}

/// Runs the configured suites sequentially and merges the records by id.
inline VerificationReport run_verify(const SuiteContext& ctx) {
  VerificationReport rep;
  for (const auto& s : ctx.config.suites) rep.append(run_suite(ctx, s));
  std::stable_sort(rep.checks.begin(), rep.checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  return rep;
}

inline nlohmann::json gram_json(const RatMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::json report_json(const SuiteContext& ctx, const VerificationReport& rep) {
  const RootDatum& d = *ctx.datum;
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["group"] = d.label;
  j["form"] = gram_json(d.form);
  j["gram"] = gram_json(d.gram);
  j["config"] = config_json(ctx.config);
  j["conventions"] = {
      {"theta", "product of simple coroot pairings divided by the covolume of the simple coroot lattice"},
      {"k_L", "order of the centraliser of r in the R-group of L"},
      {"t_star", "only Weyl conjugacy of subspaces is tested; conjugacy of the pairs (M1, sigma) is not checked"},
      {"measure", "dz/(2 pi i) on vertical lines"}};
  j["summary"] = {{"total", rep.checks.size()},
                  {"pass", rep.count(Status::Pass)},
                  {"fail", rep.count(Status::Fail)},
                  {"skip", rep.count(Status::Skip)},
                  {"max_residual", std::isfinite(rep.max_residual()) ? nlohmann::json(rep.max_residual())
                                                                     : nlohmann::json("inf")}};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json r = to_json(c, ctx.timings);
    if (!std::isfinite(c.residual)) r["residual"] = "inf";
    checks.push_back(r);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace woi
