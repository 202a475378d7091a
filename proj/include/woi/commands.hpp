#pragma once

#include <string>

#include "woi/suites.hpp"

// `describe` and `eval`: inventories of a root datum and evaluation of single
// named operations from JSON arguments.

namespace woi {

namespace detail {

inline std::string complex_str(Complex z) {
  if (z.imag() == 0) return double_str(z.real());
  return double_str(z.real()) + (z.imag() < 0 ? "-" : "+") + double_str(std::abs(z.imag())) + "i";
}

inline std::string word_str(const std::vector<int>& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

inline RatVec arg_vector(const nlohmann::json& j, int rank, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw Error(ErrorKind::DimensionError, what + ": expected " + std::to_string(rank) + " entries");
  RatVec v(rank);
  for (int i = 0; i < rank; ++i) v[i] = json_rational(j[i], what);
  return v;
}

inline ComplexVec arg_complex_vector(const nlohmann::json& j, int rank, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw Error(ErrorKind::DimensionError, what + ": expected " + std::to_string(rank) + " entries");
  ComplexVec v;
  for (const auto& x : j) {
    if (x.is_array() && x.size() == 2) v.emplace_back(x[0].get<double>(), x[1].get<double>());
    else if (x.is_number()) v.emplace_back(x.get<double>(), 0.0);
    else throw Error(ErrorKind::InvalidArgument, what + ": entries must be numbers or [re, im] pairs");
  }
  return v;
}

inline std::vector<int> arg_ints(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, what + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(x.get<int>());
  return out;
}

/// A Levi given by its label ("M0", "G", "L[0,2]") or by generating roots.
inline Levi arg_levi(const RootDatum& d, const nlohmann::json& args, const std::string& key, const Levi& fallback) {
  if (!args.contains(key)) return fallback;
  const auto& j = args.at(key);
  if (j.is_array()) return levi_from_roots(d, arg_ints(j, key));
  std::string label = j.get<std::string>();
  for (const auto& L : enumerate_levis(d))
    if (L.label == label) return L;
  throw Error(ErrorKind::InvalidArgument, key + ": no Levi labelled " + label);
}

inline ParabolicChamber arg_chamber(const RootDatum& d, const Levi& M, const nlohmann::json& args) {
  auto chambers = parabolics(d, M);
  int i = args.value("P", 0);
  if (i < 0 || i >= static_cast<int>(chambers.size()))
    throw Error(ErrorKind::InvalidArgument, "P: chamber index out of range (" + std::to_string(chambers.size()) + " chambers)");
  return chambers[i];
}

/// Spectral triple from "sigma" (root indices) and "r" (word); the class
/// lives on "levi" when given, else on Fix(r).
inline TauClass arg_tau(const std::shared_ptr<const RootDatum>& d, const nlohmann::json& args) {
  std::vector<int> sigma = args.contains("sigma") ? arg_ints(args.at("sigma"), "sigma") : std::vector<int>{};
  std::vector<int> r = args.contains("r") ? arg_ints(args.at("r"), "r") : std::vector<int>{};
  auto t = build_spectral_triple(d, sigma, r);
  if (args.contains("levi")) return make_tau_class(t, arg_levi(*d, args, "levi", minimal_levi(*d)));
  return make_tau_class(t);
}

inline const WeylElement& arg_weyl(const RootDatum& d, const nlohmann::json& args, const std::string& key) {
  if (!args.contains(key)) return d.weyl[0];
  return weyl_from_word(d, arg_ints(args.at(key), key));
}

inline SigmaModel arg_model(const std::shared_ptr<const RootDatum>& d, const nlohmann::json& args) {
  TauClass tc = args.contains("sigma") || args.contains("r") ? arg_tau(d, args) : torus_class(d);
  std::string tmpl = args.value("density", std::string("model_plancherel(1)"));
  ScalarRootFns fns = tau_densities(tc, [&](const Rational& n) { return parse_density(tmpl, n); });
  ComplexVec lambda = args.contains("lambda") ? arg_complex_vector(args.at("lambda"), d->rank, "lambda")
                                              : generic_lambda(d->rank);
  return make_sigma_model(tc, fns, lambda);
}

}  // namespace detail

inline nlohmann::json describe_json(const RootDatum& d) {
  nlohmann::json j;
  j["group"] = d.label;
  j["rank"] = d.rank;
  j["weyl_order"] = d.weyl.size();
  j["roots"] = d.roots.size();
  j["form"] = gram_json(d.form);
  j["gram"] = gram_json(d.gram);
  nlohmann::json levis = nlohmann::json::array();
  for (const auto& L : enumerate_levis(d)) {
    nlohmann::json cosets = nlohmann::json::array();
    for (int w : weyl_cosets(d, L)) cosets.push_back(detail::word_str(d.weyl[w].word));
    levis.push_back({{"label", L.label},
                     {"dim", L.dim()},
                     {"roots", L.root_subset},
                     {"parabolics", parabolics(d, L).size()},
                     {"coset_representatives", cosets}});
  }
  j["levis"] = levis;
  return j;
}

inline const std::vector<std::string>& expression_ids() {
  static const std::vector<std::string> ids{"theta", "d",       "n_beta",      "nL",      "kL",
                                            "alpha_X", "eps_M", "delta_Sigma", "c_coeff", "phi_TT"};
  return ids;
}

struct EvalResult {
  std::string value;
  nlohmann::json provenance;
};

/// Evaluates one named operation. Unknown ids throw InvalidArgument.
inline EvalResult eval_expr(const std::shared_ptr<const RootDatum>& dp, const std::string& id, const nlohmann::json& args) {
  const RootDatum& d = *dp;
  EvalResult out;
  out.provenance = {{"expr", id}, {"group", d.label}, {"gram", gram_json(d.gram)}, {"args", args}};
  const Levi M0 = minimal_levi(d), G = whole_group(d);
  if (id == "theta") {
    Levi M = detail::arg_levi(d, args, "M", M0);
    ParabolicChamber P = detail::arg_chamber(d, M, args);
    ThetaValue t = theta(P, detail::arg_vector(args.at("lambda"), d.rank, "lambda"));
    QuadConst vol = t.volume();
    out.value = vol == QuadConst::one() ? t.product.get_str() : t.product.get_str() + "/" + vol.str();
    out.provenance["numeric"] = t.value();
    out.provenance["operation"] = "theta_P(lambda)";
  } else if (id == "d") {
    Levi L1 = detail::arg_levi(d, args, "L1", M0);
    Levi L = detail::arg_levi(d, args, "L", L1);
    Levi S = detail::arg_levi(d, args, "S", G);
    std::optional<Levi> top;
    if (args.contains("top")) top = detail::arg_levi(d, args, "top", G);
    out.value = d_constant(d, L1, L, S, top).str();
    out.provenance["operation"] = "d_{L1}(L,S)";
  } else if (id == "n_beta") {
    TauClass tc = detail::arg_tau(dp, args);
    out.value = n_beta(tc, detail::arg_vector(args.at("beta"), d.rank, "beta")).get_str();
    out.provenance["operation"] = "n_beta(tau)";
  } else if (id == "nL" || id == "kL") {
    TauClass tc = detail::arg_tau(dp, args);
    DiscreteConstants c = discrete_constants(tc, detail::arg_levi(d, args, "L", G));
    out.value = id == "nL" ? c.nL.get_str() : std::to_string(c.kL);
    out.provenance["operation"] = id + "(tau)";
    out.provenance["triple"] = tc.triple.label();
    out.provenance["tau_levi"] = tc.levi.label;
  } else if (id == "alpha_X") {
    Levi M1 = detail::arg_levi(d, args, "M1", M0);
    RatVec nu = args.contains("nu") ? detail::arg_vector(args.at("nu"), d.rank, "nu") : RatVec(d.rank);
    RatVec X = args.contains("X") ? detail::arg_vector(args.at("X"), d.rank, "X") : RatVec(d.rank);
    out.value = detail::complex_str(multiplier_alpha(d, M1, nu, X));
    out.provenance["operation"] = "Weyl average of exp(i nu(wX))";
  } else if (id == "eps_M") {
    Levi M = detail::arg_levi(d, args, "M", G);
    out.value = std::to_string(eps_M_sign(d, detail::arg_weyl(d, args, "w"), levi_positive_system(d, M)));
    out.provenance["operation"] = "(-1)^#(w Sigma cap -Sigma)";
  } else if (id == "delta_Sigma") {
    Levi M = detail::arg_levi(d, args, "M", G);
    ComplexVec Y = detail::arg_complex_vector(args.at("Y"), d.rank, "Y");
    out.value = detail::complex_str(weyl_denominator(d, levi_positive_system(d, M), Y));
    out.provenance["operation"] = "prod (e^{a/2} - e^{-a/2})";
  } else if (id == "c_coeff") {
    SigmaModel model = detail::arg_model(dp, args);
    ParabolicChamber P = detail::arg_chamber(d, model.levi(), args);
    Levi L = detail::arg_levi(d, args, "L", model.levi());
    int w = weyl_index(d, detail::arg_weyl(d, args, "w").matrix);
    out.value = detail::complex_str(c_coefficient_example(model, w, P, {args.value("U", 0)}, L));
    out.provenance["operation"] = "c^{P,U}_{M,L}(sigma^L, w mu)";
  } else if (id == "phi_TT") {
    SigmaModel model = detail::arg_model(dp, args);
    ParabolicChamber P = detail::arg_chamber(d, model.levi(), args);
    OrbitPoint mu{args.contains("mu_re") ? detail::arg_vector(args.at("mu_re"), d.rank, "mu_re") : RatVec(d.rank),
                  args.contains("mu_im") ? detail::arg_vector(args.at("mu_im"), d.rank, "mu_im") : RatVec(d.rank)};
    out.value = phi_TT_expansion(model, mu, P, args.value("domain", std::string("Y"))).to_json().dump();
    out.provenance["operation"] = "formal expansion of Phi_{T,T}";
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown expression id: " + id);
  }
  return out;
}

}  // namespace woi
