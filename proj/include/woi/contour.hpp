#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "woi/density.hpp"
#include "woi/quadrature.hpp"
#include "woi/report.hpp"
#include "woi/spectral.hpp"
#include "woi/split.hpp"
#include "woi/test_function.hpp"

// Line integrals with the measure dz/2πi over vertical lines, principal
// values on the imaginary axis, and the comparison between shifted contours
// and principal values plus residue contributions.

namespace woi {

constexpr double kTwoPi = 2.0 * M_PI;

struct LineValue {
  Complex value = 0;
  double error = 0;
  std::vector<Complex> truncated;  // per δ on the ladder, already divided by 2π
};

/// p.v. ∫_{iℝ} φ(z) f(z) dz/2πi, excising δ-intervals around the declared
/// axis poles.
inline LineValue pv_integral(const Density& f, const TestFunction& phi, const quad::PVSettings& s = {}) {
  const double T = phi.truncation();
  std::vector<double> poles;
  for (const auto& p : f.axis_poles()) poles.push_back(p.at.imag());
  auto h = [&](double t) {
    Complex z(0.0, t);
    return phi(z) * f(z);
  };
  auto r = quad::principal_value(h, poles, T, s);
  LineValue out{r.value / kTwoPi, r.error / kTwoPi, {}};
  for (auto& v : r.truncated) out.truncated.push_back(v / kTwoPi);
  return out;
}

/// ∫_{iℝ−ε} φ(z) f(z) dz/2πi. No pole may lie in the strip −ε ≤ Re z < 0.
inline Complex shifted_integral(const Density& f, const TestFunction& phi, double eps, const quad::Settings& s = {}) {
  if (!(eps > 0)) throw Error(ErrorKind::BadShift, "the shift must be positive");
  for (const auto& p : f.all_poles())
    if (p.at.real() < 0 && p.at.real() >= -eps)
      throw Error(ErrorKind::BadShift, "a pole lies between the shifted line and the imaginary axis");
  const double T = phi.truncation();
  auto h = [&](double t) {
    Complex z(-eps, t);
    return phi(z) * f(z);
  };
  // Splitting at 0 keeps the adaptive rule from sampling the near-pole region coarsely.
  return (quad::integrate(h, -T, 0, s) + quad::integrate(h, 0, T, s)) / kTwoPi;
}

/// (1/2πi)∮ f over a small circle around `at`, by the trapezoid rule.
inline Complex circle_residue(const Density& f, Complex at, double radius, int nodes = 256) {
  Complex acc = 0;
  for (int j = 0; j < nodes; ++j) {
    Complex u = std::polar(radius, kTwoPi * j / nodes);
    acc += f(at + u) * u;
  }
  return acc / static_cast<double>(nodes);
}

/// Compares every declared residue of f with a contour integral around it.
inline VerificationReport verify_residues(const Density& f, const std::string& prefix, double tol = 1e-8) {
  VerificationReport rep;
  auto poles = f.all_poles();
  for (std::size_t i = 0; i < poles.size(); ++i) {
    double radius = 0.1;
    for (std::size_t j = 0; j < poles.size(); ++j)
      if (j != i) radius = std::min(radius, 0.5 * std::abs(poles[i].at - poles[j].at));
    Complex numeric = circle_residue(f, poles[i].at, radius);
    double diff = std::abs(numeric - poles[i].residue);
    std::ostringstream at;
    at << poles[i].at.real() << (poles[i].at.imag() < 0 ? "" : "+") << poles[i].at.imag() << "i";
    rep.add(make_check(prefix + "/residue@" + at.str(), "declared residues", f.describe() + at.str(), diff <= tol, diff,
                       {{"declared", {poles[i].residue.real(), poles[i].residue.imag()}},
                        {"numeric", {numeric.real(), numeric.imag()}},
                        {"radius", radius}}));
  }
  return rep;
}

/// Default battery: degrees 0..3, three different scales.
inline std::vector<TestFunction> default_battery() {
  return {TestFunction::gauss_poly({1}, 1), TestFunction::gauss_poly({0, 1}, rat(1, 2)),
          TestFunction::gauss_poly({1, 1, rat(1, 2)}, rat(1, 4)), TestFunction::gauss_poly({1, 0, -1}, 2),
          TestFunction::gauss_poly({rat(1, 3), 1, 0, rat(1, 4)}, 1)};
}

struct ResidueIdentityOptions {
  std::vector<TestFunction> battery = default_battery();
  double eps = 0.1;
  double tolerance = 1e-6;
  quad::PVSettings pv;
};

/// shifted = (n/2)·φ(0) + p.v. for each φ in the battery. f must have the
/// single axis pole 0 with residue −n.
inline VerificationReport residue_identity_1d(const Density& f, const Rational& n,
                                              const ResidueIdentityOptions& opt = {}) {
  VerificationReport rep;
  const std::string base = "residue-1d/" + f.describe();
  auto axis = f.axis_poles();
  bool single = sgn(n) == 0 ? axis.empty() : axis.size() == 1 && std::abs(axis[0].at) < 1e-12;
  double res_gap = std::abs(f.residue_at_zero() + n.get_d());
  if (!single || res_gap > 1e-12) {
    rep.add(make_check(base + "/precondition", "one-dimensional residue identity", f.describe() + n.get_str(), false,
                       res_gap, {{"note", "density must have exactly one axis pole, at 0, with residue -n"}}));
    return rep;
  }
  rep.append(verify_residues(f, base));
  for (const auto& phi : opt.battery) {
    const std::string id = base + "/n=" + n.get_str() + "/" + phi.describe();
    nlohmann::json detail = {{"eps", opt.eps}, {"delta_ladder", opt.pv.ladder}, {"truncation", phi.truncation()}};
    try {
      Complex lhs = shifted_integral(f, phi, opt.eps);
      LineValue pv = pv_integral(f, phi, opt.pv);
      Complex residue_part = 0.5 * n.get_d() * phi(0.0);
      double diff = std::abs(lhs - residue_part - pv.value);
      detail["lhs"] = {lhs.real(), lhs.imag()};
      detail["pv"] = {pv.value.real(), pv.value.imag()};
      detail["pv_error"] = pv.error;
      detail["residue_term"] = {residue_part.real(), residue_part.imag()};
      rep.add(make_check(id, "one-dimensional residue identity", id, diff <= opt.tolerance, diff, detail));
    } catch (const Error& e) {
      detail["error"] = e.what();
      rep.add(make_check(id, "one-dimensional residue identity", id, false, HUGE_VAL, detail));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Contour shift on a_{L1}^*.

/// φ on a_{L1,ℂ}^*: p(λ(v))·exp(s·⟨λ,λ⟩) for a fixed generic v. With
/// λ = gram·Y this is p(⟨Y,v⟩)·exp(s·Yᵀ gram Y).
struct MultiTestFunction {
  TestFunction base;
  std::vector<double> v;                 // a_0 coordinates
  std::vector<std::vector<double>> gram;  // inner product on a_0

  Complex operator()(const std::vector<Complex>& Y) const {
    const std::size_t n = Y.size();
    Complex lin = 0, quadform = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex gy = 0;
      for (std::size_t j = 0; j < n; ++j) gy += gram[i][j] * Y[j];
      lin += gy * v[i];
      quadform += gy * Y[i];
    }
    return base.poly_at(lin) * std::exp(base.scale.get_d() * quadform);
  }
};

/// Generic direction for the polynomial factor, projected into a_{L1}.
inline RatVec generic_phi_direction(const RootDatum& d, const Levi& L1) {
  RatVec v(d.rank);
  for (int j = 0; j < d.rank; ++j) v[j] = rat(j + 2, 3 + j * j);
  return L1.proj * v;
}

inline MultiTestFunction lift_test_function(const RootDatum& d, const Levi& L1, const TestFunction& phi) {
  MultiTestFunction m{phi, {}, {}};
  const RatVec v = generic_phi_direction(d, L1);
  for (const auto& x : v.coords()) m.v.push_back(x.get_d());
  m.gram.assign(d.rank, std::vector<double>(d.rank));
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) m.gram[i][j] = d.gram(i, j).get_d();
  return m;
}

struct LemmaShiftOptions {
  std::vector<double> eps{0.1, 0.2};  // |X_ε| in the norm of a_0
  double tolerance = 1e-4;
  quad::PVSettings pv{{1e-1, 1e-2, 1e-3}, 1e-4, {1e-10, 12}};
  quad::Settings plain{1e-10, 12};
  std::string label;  // prefix for check ids
};

namespace detail {

inline std::vector<double> to_double(const RatVec& v) {
  std::vector<double> out;
  for (const auto& x : v.coords()) out.push_back(x.get_d());
  return out;
}

inline double inner(const std::vector<std::vector<double>>& g, const std::vector<double>& a,
                    const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * g[i][j] * b[j];
  return s;
}

/// Nested integration over a box in k coordinates; coordinates listed in
/// `pole_coords` carry a simple pole at 0 and are integrated as principal values.
inline Complex nested_integral(const std::function<Complex(const std::vector<double>&)>& f,
                               const std::vector<double>& bounds, std::size_t pole_coords,
                               const LemmaShiftOptions& opt, double* pv_error = nullptr) {
  const std::size_t k = bounds.size();
  std::vector<double> w(k, 0.0);
  double worst = 0;
  std::function<Complex(std::size_t)> level = [&](std::size_t j) -> Complex {
    if (j == k) return f(w);
    auto g = [&, j](double x) {
      w[j] = x;
      return level(j + 1);
    };
    if (j < pole_coords) {
      auto r = quad::principal_value(g, {0.0}, bounds[j], opt.pv);
      worst = std::max(worst, r.error);
      return r.value;
    }
    return quad::integrate(g, -bounds[j], 0, opt.plain) + quad::integrate(g, 0, bounds[j], opt.plain);
  };
  Complex v = level(0);
  if (pv_error) *pv_error = worst;
  return v;
}

inline std::vector<std::vector<double>> orthonormal_basis(const std::vector<RatVec>& basis,
                                                          const std::vector<std::vector<double>>& g) {
  std::vector<std::vector<double>> out;
  for (const auto& b : basis) {
    auto v = to_double(b);
    for (const auto& o : out) {
      double c = inner(g, v, o);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * o[i];
    }
    double n = std::sqrt(inner(g, v, v));
    for (auto& x : v) x /= n;
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

struct LemmaShiftResult {
  std::vector<Complex> lhs;  // per ε
  Complex rhs = 0;
  nlohmann::json terms = nlohmann::json::array();
};

/// Both sides of the contour-shift identity for one (M, P): the integral of
/// φ·m_M(·, P) over i a_{L1}^* + ε against
/// Σ_{L,S} d_{L1}^G(L,S) n^L(τ) p.v.∫_{i a_L^*} φ·m_M^S(·, P ∩ S).
/// Each splitting term of m_M^S is integrated in the coordinates
/// w_β = ⟨Y, β̌⟩ (β in the term's basis) completed by basis vectors of a_L.
inline LemmaShiftResult lemma_shift_sides(const RootDatum& d, const Levi& L1, const Levi& M, const ParabolicChamber& P,
                                          const TauClass& tc, const ScalarRootFns& fns, const TestFunction& phi,
                                          const LemmaShiftOptions& opt = {}) {
  if (!(tc.levi == L1)) throw Error(ErrorKind::InvalidArgument, "the tau class does not live on L1");
  if (L1.dim() > 2) throw Error(ErrorKind::DimensionError, "contour shifts are supported up to rank 2");
  if (!(P.levi == M)) throw Error(ErrorKind::InvalidArgument, "P is not a parabolic of M");
  const MultiTestFunction Phi = lift_test_function(d, L1, phi);
  const auto& g = Phi.gram;
  const double T = phi.truncation();
  const std::size_t n = d.rank;
  const ParabolicChamber Q1 = chamber_below(d, L1, P);
  LemmaShiftResult out;

  // Left side.
  auto e_full = split_terms(d, M, P, Q1);
  auto ortho = detail::orthonormal_basis(L1.basis, g);
  auto xp = detail::to_double(P.chamber_point);
  double xn = std::sqrt(detail::inner(g, xp, xp));
  for (double eps : opt.eps) {
    std::vector<double> X(n, 0.0);
    if (xn > 0)
      for (std::size_t i = 0; i < n; ++i) X[i] = eps * xp[i] / xn;
    auto integrand = [&](const std::vector<double>& y) {
      std::vector<Complex> Y(n);
      for (std::size_t i = 0; i < n; ++i) {
        Y[i] = X[i];
        for (std::size_t j = 0; j < y.size(); ++j) Y[i] += Complex(0, y[j] * ortho[j][i]);
      }
      ComplexVec lambda(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lambda[i] += g[i][j] * Y[j];
      return Phi(Y) * evaluate(e_full, fns, lambda);
    };
    std::vector<double> bounds(L1.dim(), T);
    Complex v = detail::nested_integral(integrand, bounds, 0, opt) / std::pow(kTwoPi, L1.dim());
    out.lhs.push_back(v);
  }

  // Right side.
  for (const auto& L : enumerate_levis(d, L1)) {
    Rational nL = 0;
    bool have_nL = false;
    for (const auto& S : enumerate_levis(d, M)) {
      QuadConst c = d_constant(d, L1, L, S);
      if (c.is_zero()) continue;
      if (!have_nL) {
        nL = discrete_constants(tc, L).nL;
        have_nL = true;
      }
      if (sgn(nL) == 0) continue;
      auto e = split_terms(d, M, P, Q1, S);
      Complex sum = 0;
      double worst = 0;
      for (const auto& term : e.terms) {
        std::vector<RatVec> h;
        for (int r : term.roots) h.push_back(L.proj * e.roots[r].coroot);
        if (h.size() > static_cast<std::size_t>(L.dim()) || rank(h) != h.size())
          throw Error(ErrorKind::UnsupportedType, "pole hyperplanes of a splitting term are not transversal on a_L");
        for (const auto& b : L.basis) {
          if (h.size() == static_cast<std::size_t>(L.dim())) break;
          auto trial = h;
          trial.push_back(b);
          if (rank(trial) == trial.size()) h = trial;
        }
        const std::size_t k = h.size();
        std::vector<std::vector<double>> hd;
        for (const auto& v : h) hd.push_back(detail::to_double(v));
        RatMat Gh = k ? gram_of(h, d.gram) : RatMat(0, 0);
        RatMat Ghi = k ? inverse(Gh) : RatMat(0, 0);
        double jac = 1.0 / (std::pow(kTwoPi, static_cast<double>(k)) * (k ? std::sqrt(det(Gh).get_d()) : 1.0));
        std::vector<const Density*> dens;
        for (int r : term.roots) dens.push_back(&fns.at(e.roots[r].form));
        std::vector<double> bounds;
        for (std::size_t i = 0; i < k; ++i) bounds.push_back(T * std::sqrt(detail::inner(g, hd[i], hd[i])));
        auto integrand = [&](const std::vector<double>& w) {
          std::vector<Complex> Y(n, 0.0);
          for (std::size_t a = 0; a < k; ++a) {
            double coef = 0;
            for (std::size_t b = 0; b < k; ++b) coef += Ghi(a, b).get_d() * w[b];
            for (std::size_t i = 0; i < n; ++i) Y[i] += Complex(0, coef * hd[a][i]);
          }
          Complex val = Phi(Y);
          for (std::size_t b = 0; b < dens.size(); ++b) val *= (*dens[b])(Complex(0, w[b]));
          return val;
        };
        double err = 0;
        Complex v = k ? detail::nested_integral(integrand, bounds, dens.size(), opt, &err) : integrand({});
        worst = std::max(worst, err);
        sum += term.volume.value() * jac * v;
      }
      Complex contrib = c.value() * nL.get_d() * sum;
      out.rhs += contrib;
      out.terms.push_back({{"L", L.label},
                           {"S", S.label},
                           {"d", c.value()},
                           {"nL", nL.get_str()},
                           {"value", {contrib.real(), contrib.imag()}},
                           {"pv_error", worst}});
    }
  }
  return out;
}

/// Runs the contour-shift comparison for two or more ε and reports
/// LHS(ε) = RHS and the ε-stability of the left side.
inline VerificationReport lemma_shift_check(const RootDatum& d, const Levi& L1, const Levi& M,
                                            const ParabolicChamber& P, const TauClass& tc, const ScalarRootFns& fns,
                                            const TestFunction& phi, const LemmaShiftOptions& opt = {}) {
  VerificationReport rep;
  const std::string base = opt.label.empty() ? "lemma-shift/" + d.label + "/" + L1.label + "/" + M.label : opt.label;
  const std::string anchor = "contour shift with principal values";
  // Residues first: the densities on a_{L1} must have residue −n_β at 0.
  for (const auto& beta : restricted_roots(d, L1, whole_group(d))) {
    const Density& f = fns.at(beta.form);
    rep.append(verify_residues(f, base + "/" + beta.form.str()));
    double gap = std::abs(f.residue_at_zero() + n_beta(tc, beta.form).get_d());
    rep.add(make_check(base + "/" + beta.form.str() + "/residue-vs-n", anchor, f.describe() + beta.form.str(),
                       gap <= 1e-12, gap, {{"n_beta", n_beta(tc, beta.form).get_str()}}));
  }
  nlohmann::json common = {{"phi", phi.describe()},
                           {"truncation", phi.truncation()},
                           {"delta_ladder", opt.pv.ladder},
                           {"triple", tc.triple.label()}};
  try {
    auto sides = lemma_shift_sides(d, L1, M, P, tc, fns, phi, opt);
    for (std::size_t i = 0; i < opt.eps.size(); ++i) {
      double diff = std::abs(sides.lhs[i] - sides.rhs);
      nlohmann::json detail = common;
      detail["eps"] = opt.eps[i];
      detail["lhs"] = {sides.lhs[i].real(), sides.lhs[i].imag()};
      detail["rhs"] = {sides.rhs.real(), sides.rhs.imag()};
      detail["terms"] = sides.terms;
      std::ostringstream id;
      id << base << "/eps=" << opt.eps[i];
      rep.add(make_check(id.str(), anchor, id.str() + phi.describe(), diff <= opt.tolerance, diff, detail));
    }
    double spread = 0;
    for (const auto& v : sides.lhs) spread = std::max(spread, std::abs(v - sides.lhs.front()));
    nlohmann::json detail = common;
    detail["eps"] = opt.eps;
    rep.add(make_check(base + "/eps-stability", anchor, base + phi.describe(), spread <= opt.tolerance, spread, detail));
  } catch (const Error& e) {
    nlohmann::json detail = common;
    detail["error"] = e.what();
    rep.add(make_check(base + "/evaluation", anchor, base, false, HUGE_VAL, detail));
  }
  return rep;
}

}  // namespace woi
