#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "woi/lp.hpp"
#include "woi/report.hpp"
#include "woi/spectral.hpp"
#include "woi/split.hpp"

// Explicit formulas of the asymptotic expansion: the multiplier α̂_X, the
// P-closure order on infinitesimal characters, Weyl denominators and signs,
// and the closed forms for Φ_{P,L} and the coefficients c^{P,U} when the
// Levi M plays the role of a minimal Levi.

namespace woi {

// ---------------------------------------------------------------------------
// Multiplier

namespace detail {

/// Distinct restrictions to a_L of the elements of W that preserve a_L.
inline std::vector<int> normalizer_of(const RootDatum& d, const Levi& L) {
  std::vector<int> out;
  const RatMat& P = L.proj;
  for (std::size_t i = 0; i < d.weyl.size(); ++i) {
    bool keeps = true;
    for (const auto& b : L.basis) keeps = keeps && P * (d.weyl[i].matrix * b) == d.weyl[i].matrix * b;
    if (keeps) out.push_back(static_cast<int>(i));
  }
  return out;
}

inline std::vector<int> distinct_restrictions(const RootDatum& d, const Levi& L, const std::vector<int>& elems) {
  std::set<std::vector<RatVec>> seen;
  std::vector<int> out;
  for (int w : elems) {
    std::vector<RatVec> key;
    for (const auto& b : L.basis) key.push_back(d.weyl[w].matrix * b);
    if (seen.insert(key).second) out.push_back(w);
  }
  return out;
}

inline Complex dot_complex(const ComplexVec& a, const RatVec& b) { return pair(a, b); }

inline ComplexVec act_dual_complex(const WeylElement& w, const ComplexVec& v) {
  ComplexVec out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += w.dual(i, j).get_d() * v[j];
  return out;
}

}  // namespace detail

/// W_{M1} = N_W(a_{M1}) restricted to a_{M1}.
inline std::vector<int> weyl_group_of_levi(const RootDatum& d, const Levi& M1) {
  return detail::distinct_restrictions(d, M1, detail::normalizer_of(d, M1));
}

/// α̂_X(ν) = |W_{M1}|⁻¹ Σ_w e^{(wν)(X)} for ν = i·nu_im, nu_im ∈ a_{M1}^*.
inline Complex multiplier_alpha(const RootDatum& d, const Levi& M1, const RatVec& nu_im, const RatVec& X) {
  if (nu_im.size() != static_cast<std::size_t>(d.rank) || X.size() != static_cast<std::size_t>(d.rank))
    throw Error(ErrorKind::DimensionError, "multiplier_alpha: dimension mismatch");
  // ν as a functional on a_{M1}: compose with the projection onto a_{M1}.
  RatVec nu = M1.proj.transpose() * nu_im;
  auto group = weyl_group_of_levi(d, M1);
  Complex acc = 0;
  for (int w : group) acc += std::exp(Complex(0, dot(act_dual(d.weyl[w], nu), X).get_d()));
  return acc / static_cast<double>(group.size());
}

// ---------------------------------------------------------------------------
// Infinitesimal orbits and P-minimality

/// A point of t^*_ℂ stored as exact real and imaginary parts (covectors).
struct OrbitPoint {
  RatVec re, im;
  friend bool operator<(const OrbitPoint& a, const OrbitPoint& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  }
  friend bool operator==(const OrbitPoint& a, const OrbitPoint& b) { return a.re == b.re && a.im == b.im; }
  std::string str() const { return im.is_zero() ? re.str() : re.str() + "+i" + im.str(); }
};

struct InfinitesimalOrbit {
  OrbitPoint base;
  std::vector<OrbitPoint> points;  // W-images in order of first appearance
  std::vector<int> first_w;        // an element of W sending base to each point
  std::size_t stabilizer_order = 1;
};

inline InfinitesimalOrbit infinitesimal_orbit(const RootDatum& d, const OrbitPoint& mu) {
  InfinitesimalOrbit o{mu, {}, {}, 0};
  std::set<OrbitPoint> seen;
  for (std::size_t w = 0; w < d.weyl.size(); ++w) {
    OrbitPoint p{act_dual(d.weyl[w], mu.re), act_dual(d.weyl[w], mu.im)};
    if (seen.insert(p).second) {
      o.points.push_back(p);
      o.first_w.push_back(static_cast<int>(w));
    }
  }
  o.stabilizer_order = d.weyl.size() / o.points.size();
  return o;
}

/// Roots of t in the unipotent radical of P.
inline std::vector<RatVec> nilradical_roots(const RootDatum& d, const ParabolicChamber& P) {
  std::vector<RatVec> out;
  for (int a : P.positive_roots) out.push_back(d.roots[a]);
  return out;
}

/// Whether ν lies strictly below μ: μ − ν is a nonzero nonnegative
/// combination of roots in n_P (exact LP).
inline bool strictly_below(const std::vector<RatVec>& n_roots, const OrbitPoint& nu, const OrbitPoint& mu) {
  if (nu == mu || nu.im != mu.im) return false;
  return lp::in_cone(n_roots, mu.re - nu.re);
}

inline std::map<OrbitPoint, bool> p_minimality(const RootDatum& d, const InfinitesimalOrbit& o,
                                               const ParabolicChamber& P) {
  auto n_roots = nilradical_roots(d, P);
  std::map<OrbitPoint, bool> out;
  for (const auto& mu : o.points) {
    bool minimal = true;
    for (const auto& nu : o.points) minimal = minimal && !strictly_below(n_roots, nu, mu);
    out[mu] = minimal;
  }
  return out;
}

/// E ⊆ orbit is P-closed when everything in the orbit below an element of E
/// is again in E.
inline bool p_closed(const RootDatum& d, const InfinitesimalOrbit& o, const ParabolicChamber& P,
                     const std::set<OrbitPoint>& E) {
  auto n_roots = nilradical_roots(d, P);
  for (const auto& mu : E)
    for (const auto& nu : o.points)
      if (!E.count(nu) && strictly_below(n_roots, nu, mu)) return false;
  return true;
}

/// Smallest P-closed subset of the orbit containing E.
inline std::set<OrbitPoint> p_closure(const RootDatum& d, const InfinitesimalOrbit& o, const ParabolicChamber& P,
                                      std::set<OrbitPoint> E) {
  auto n_roots = nilradical_roots(d, P);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& nu : o.points) {
      if (E.count(nu)) continue;
      for (const auto& mu : E)
        if (strictly_below(n_roots, nu, mu)) {
          E.insert(nu);
          grew = true;
          break;
        }
    }
  }
  return E;
}

// ---------------------------------------------------------------------------
// Weyl denominator and the sign ε^M

/// Positive roots of the Levi's own root system (indices into d.roots).
inline std::vector<int> levi_positive_system(const RootDatum& d, const Levi& M) {
  std::vector<int> out;
  for (int a : M.root_subset)
    if (d.is_positive(a)) out.push_back(a);
  return out;
}

/// Δ_Σ(exp Y) = ∏_{α∈Σ} (e^{α(Y)/2} − e^{−α(Y)/2}).
inline Complex weyl_denominator(const RootDatum& d, const std::vector<int>& sigma, const ComplexVec& Y) {
  Complex prod = 1;
  for (int a : sigma) {
    Complex h = 0.5 * pair(Y, d.roots[a]);
    prod *= std::exp(h) - std::exp(-h);
  }
  return prod;
}

/// (−1)^{#(wΣ ∩ −Σ)}.
inline int eps_M_sign(const RootDatum& d, const WeylElement& w, const std::vector<int>& sigma) {
  std::set<int> neg;
  for (int a : sigma) neg.insert(d.negative_of(a));
  int count = 0;
  for (int a : sigma) count += neg.count(w.root_perm[a]) ? 1 : 0;
  return count % 2 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// The spectral model for the closed formulas

/// A fourth root of unity i^k, the constant attached to a component U.
struct UnitSign {
  int k = 0;
  Complex value() const {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
  }
};

/// σ ∈ Π_2(M) on the Levi M = tc.levi, its scalar densities on the restricted
/// roots of a_M, and the point λ ∈ a_{M,ℂ}^* (a_0 covector coordinates) at
/// which the densities are evaluated.
struct SigmaModel {
  TauClass tc;
  ScalarRootFns fns;
  ComplexVec lambda;

  const RootDatum& datum() const { return tc.triple.datum(); }
  const Levi& levi() const { return tc.levi; }
};

inline SigmaModel make_sigma_model(const TauClass& tc, ScalarRootFns fns, ComplexVec lambda = {}) {
  const RootDatum& d = tc.triple.datum();
  if (lambda.empty()) lambda.assign(d.rank, 0.0);
  if (lambda.size() != static_cast<std::size_t>(d.rank)) throw Error(ErrorKind::DimensionError, "λ has the wrong size");
  return {tc, std::move(fns), std::move(lambda)};
}

/// The model conjugated by w ∈ N_W(a_M): densities transported along w and
/// λ ↦ wλ.
inline SigmaModel conjugate_model(const SigmaModel& m, int w) {
  const RootDatum& d = m.datum();
  const WeylElement& g = d.weyl[w];
  const WeylElement& ginv = d.weyl[d.inv[w]];
  SigmaModel out = m;
  out.fns = ScalarRootFns();
  for (const auto& beta : restricted_roots(d, m.levi(), whole_group(d)))
    out.fns.set(act_dual(g, beta.form), m.fns.at(act_dual(ginv, beta.form)));
  out.lambda = detail::act_dual_complex(g, m.lambda);
  return out;
}

/// The chamber wP ∈ P(wM).
inline ParabolicChamber conjugate_chamber(const RootDatum& d, const WeylElement& w, const ParabolicChamber& P) {
  Levi wM = conjugate(d, w, P.levi);
  auto chambers = parabolics(d, wM);
  int c = chamber_containing(chambers, act(w, P.chamber_point));
  if (c < 0) throw Error(ErrorKind::InternalInconsistency, "conjugated chamber not found");
  return chambers[c];
}

/// m_M^S(σ̌, P ∩ S) for the model: reflected densities, evaluated at λ.
inline Complex m_contragredient(const SigmaModel& m, const ParabolicChamber& P, const Levi& S) {
  return split_formula(m.datum(), m.fns.reflect(), m.levi(), P, P, m.lambda, S);
}

struct WeylSequence {
  std::vector<int> normalizer;  // W_T^G: elements preserving a_M
  std::vector<int> levi_weyl;   // W_T^M: elements fixing a_M pointwise
  std::vector<int> section;     // stabiliser of Σ inside W_T^G
  std::size_t quotient_order = 0;  // |W_M^G|
};

/// The split exact sequence 1 → W_T^M → W_T^G → W_M^G → 1 with the
/// stabiliser of Σ as section; throws if the orders do not fit.
inline WeylSequence weyl_sequence(const RootDatum& d, const Levi& M) {
  WeylSequence s;
  s.normalizer = detail::normalizer_of(d, M);
  auto sigma = levi_positive_system(d, M);
  std::set<int> sig(sigma.begin(), sigma.end());
  for (int w : s.normalizer) {
    bool fixes = true;
    for (const auto& b : M.basis) fixes = fixes && d.weyl[w].matrix * b == b;
    if (fixes) s.levi_weyl.push_back(w);
    bool keeps = true;
    for (int a : sigma) keeps = keeps && sig.count(d.weyl[w].root_perm[a]);
    if (keeps) s.section.push_back(w);
  }
  s.quotient_order = detail::distinct_restrictions(d, M, s.normalizer).size();
  bool injective = detail::distinct_restrictions(d, M, s.section).size() == s.section.size();
  if (s.normalizer.size() != s.levi_weyl.size() * s.quotient_order || s.section.size() != s.quotient_order ||
      !injective)
    throw Error(ErrorKind::InternalInconsistency, "the Weyl group sequence does not split as expected");
  return s;
}

/// Φ_{P,L}(exp Y, σ^L) = n^L(σ) ε^U Σ_{w∈W_T^G} ε^M(w) e^{μ(wY)} Σ_S d_M^G(L,S) m_M^S(σ̌, wP ∩ S).
inline Complex phi_minimal_levi(const ComplexVec& Y, const ComplexVec& mu, const SigmaModel& m, const Levi& L,
                                const ParabolicChamber& P, UnitSign u) {
  const RootDatum& d = m.datum();
  const Levi& M = m.levi();
  if (!(P.levi == M)) throw Error(ErrorKind::InvalidArgument, "P is not a parabolic of the model's Levi");
  if (!classify_tau(m.tc, L).discrete) throw Error(ErrorKind::NotDiscrete, "σ^L is not discrete");
  auto seq = weyl_sequence(d, M);
  auto sigma = levi_positive_system(d, M);
  auto levis = enumerate_levis(d, M);
  Rational nL = discrete_constants(m.tc, L).nL;
  Complex total = 0;
  for (int w : seq.normalizer) {
    const WeylElement& g = d.weyl[w];
    ParabolicChamber wP = conjugate_chamber(d, g, P);
    Complex inner = 0;
    for (const auto& S : levis) {
      QuadConst c = d_constant(d, M, L, S);
      if (c.is_zero()) continue;
      inner += c.value() * m_contragredient(m, wP, S);
    }
    ComplexVec wY(d.rank, 0.0);
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) wY[i] += g.matrix(i, j).get_d() * Y[j];
    Complex mu_wY = 0;
    for (int i = 0; i < d.rank; ++i) mu_wY += mu[i] * wY[i];
    total += static_cast<double>(eps_M_sign(d, g, sigma)) * std::exp(mu_wY) * inner;
  }
  return nL.get_d() * u.value() * total;
}

/// c_{M,L}^{P,U}(σ^L, wμ) = n^L(σ) ε^U ε^M(w) Σ_S d_M^G(L,S) m_M^S(σ̌, w⁻¹P ∩ S).
inline Complex c_coefficient_example(const SigmaModel& m, int w, const ParabolicChamber& P, UnitSign u,
                                     const Levi& L) {
  const RootDatum& d = m.datum();
  const Levi& M = m.levi();
  if (!(P.levi == M)) throw Error(ErrorKind::InvalidArgument, "P is not a parabolic of the model's Levi");
  if (!contains(L, M)) throw Error(ErrorKind::NotComparable, "L must contain M");
  auto normal = detail::normalizer_of(d, M);
  if (std::find(normal.begin(), normal.end(), w) == normal.end())
    throw Error(ErrorKind::NotInStabilizer, "w does not normalise a_M");
  if (!classify_tau(m.tc, L).discrete) throw Error(ErrorKind::NotDiscrete, "σ^L is not discrete");
  ParabolicChamber Pw = conjugate_chamber(d, d.weyl[d.inv[w]], P);
  Complex inner = 0;
  for (const auto& S : enumerate_levis(d, M)) {
    QuadConst c = d_constant(d, M, L, S);
    if (!c.is_zero()) inner += c.value() * m_contragredient(m, Pw, S);
  }
  int eps = eps_M_sign(d, d.weyl[w], levi_positive_system(d, M));
  return discrete_constants(m.tc, L).nL.get_d() * u.value() * static_cast<double>(eps) * inner;
}

// ---------------------------------------------------------------------------
// Assembly of Φ_{P,L} from the Φ^{wM}_{wM,L1}

/// Key under which assemble_PhiP looks up the value Φ^{wM}_{wM,L1}(wγ, τ)
/// for the coset wW_M: the reduced word of the minimal representative.
inline std::string coset_key(const RootDatum& d, int w) {
  std::string s = "w[";
  const auto& word = d.weyl[w].word;
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "," : "") + std::to_string(word[i]);
  return s + "]";
}

/// The coset representatives whose values assemble_PhiP needs, over all S.
inline std::vector<int> phiP_index_set(const RootDatum& d, const Levi& M, const Levi& L1) {
  std::set<int> out;
  for (const auto& S : enumerate_levis(d, L1))
    for (int w : weyl_cosets_between(d, M, L1, S)) out.insert(w);
  return {out.begin(), out.end()};
}

/// k_{L1}^L(τ) n^L(τ) Σ_{S∈L(L1)} d_{L1}^G(L,S) Σ_{w: L1⊆wM⊆S} inputs[w] · m_{wM}^S(τ̌^{wM}, wP ∩ S),
/// with τ = tc on L1 and the densities of τ on a_{L1} evaluated at λ.
inline Complex assemble_PhiP(const std::map<std::string, Complex>& inputs, const TauClass& tc, const Levi& L,
                             const ParabolicChamber& P, const ScalarRootFns& fns, const ComplexVec& lambda) {
  const RootDatum& d = tc.triple.datum();
  const Levi& L1 = tc.levi;
  const Levi& M = P.levi;
  if (!contains(L, L1)) throw Error(ErrorKind::NotComparable, "L must contain L1");
  auto index = phiP_index_set(d, M, L1);
  if (index.empty()) return 0.0;
  for (int w : index)
    if (!inputs.count(coset_key(d, w)))
      throw Error(ErrorKind::IncompleteInput, "missing input for coset " + coset_key(d, w));
  auto kL = discrete_constants(tc, L).kL, k1 = discrete_constants(tc, L1).kL;
  Rational nL = discrete_constants(tc, L).nL;
  if (sgn(nL) == 0) return 0.0;
  ScalarRootFns dual = fns.reflect();
  Complex total = 0;
  for (const auto& S : enumerate_levis(d, L1)) {
    QuadConst c = d_constant(d, L1, L, S);
    if (c.is_zero()) continue;
    for (int w : weyl_cosets_between(d, M, L1, S)) {
      ParabolicChamber wP = conjugate_chamber(d, d.weyl[w], P);
      ParabolicChamber Q1 = chamber_below(d, L1, wP);
      total += c.value() * inputs.at(coset_key(d, w)) * split_formula(d, dual, wP.levi, wP, Q1, lambda, S);
    }
  }
  return Rational(Rational(kL) / k1).get_d() * nL.get_d() * total;
}

// ---------------------------------------------------------------------------
// Φ_{T,T} for a split maximal torus

struct ExpansionTerm {
  std::string levi;   // S
  int w = 0;          // index into d.weyl
  std::string word;   // reduced word of w
  std::string mu;     // wμ
  Complex coefficient;
  std::string psi;    // opaque tag for Ψ_S^P(Y, wμ)
};

struct FormalExpansion {
  std::string domain;
  std::vector<ExpansionTerm> terms;

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms)
      arr.push_back({{"S", t.levi},
                     {"w", t.word},
                     {"mu", t.mu},
                     {"coefficient_re", t.coefficient.real()},
                     {"coefficient_im", t.coefficient.imag()},
                     {"psi_tag", t.psi}});
    return {{"domain", domain}, {"terms", arr}};
  }
};

/// Φ_{T,T}(exp Y, σ) = Σ_{S∈L} Σ_{w∈W} m_M^S(wσ̌, P ∩ S) Ψ_S^P(Y, wμ) for
/// T = M = M0. The model's Levi must be minimal and every point of the
/// orbit of μ must be P-minimal.
inline FormalExpansion phi_TT_expansion(const SigmaModel& m, const OrbitPoint& mu, const ParabolicChamber& P,
                                        const std::string& domain) {
  const RootDatum& d = m.datum();
  const Levi& M = m.levi();
  if (!M.root_subset.empty()) throw Error(ErrorKind::InvalidArgument, "the torus example needs the minimal Levi");
  if (!(P.levi == M)) throw Error(ErrorKind::InvalidArgument, "P is not a parabolic of M0");
  auto orbit = infinitesimal_orbit(d, mu);
  for (const auto& [point, minimal] : p_minimality(d, orbit, P))
    if (!minimal) throw Error(ErrorKind::NotPRegular, "orbit element " + point.str() + " is not P-minimal");
  FormalExpansion out{domain, {}};
  auto levis = enumerate_levis(d, M);
  std::string p_tag;
  for (int a : P.positive_roots) p_tag += (p_tag.empty() ? "" : ",") + std::to_string(a);
  for (const auto& S : levis)
    for (std::size_t w = 0; w < d.weyl.size(); ++w) {
      SigmaModel mw = conjugate_model(m, static_cast<int>(w));
      ExpansionTerm t;
      t.levi = S.label;
      t.w = static_cast<int>(w);
      t.word = coset_key(d, static_cast<int>(w));
      OrbitPoint wmu{act_dual(d.weyl[w], mu.re), act_dual(d.weyl[w], mu.im)};
      t.mu = wmu.str();
      t.coefficient = m_contragredient(mw, intersect_with(d, P, S), S);
      t.psi = "Psi[" + S.label + "|P{" + p_tag + "}](" + domain + "," + t.mu + ")";
      out.terms.push_back(t);
    }
  return out;
}

}  // namespace woi
