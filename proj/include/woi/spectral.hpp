#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "woi/density.hpp"
#include "woi/levi.hpp"
#include "woi/report.hpp"
#include "woi/test_function.hpp"

// Combinatorial model of a triple (M1, σ, r) with M1 the minimal Levi of a
// split group: only the zero set Σ_σ of the Plancherel densities and the
// chamber-stabilising element r are represented.

namespace woi {

struct SpectralTriple {
  std::shared_ptr<const RootDatum> ambient;
  std::vector<int> sigma_zero;      // Σ_σ, sorted root indices
  std::vector<int> sigma_positive;  // Σ_σ ∩ Σ⁺, the roots positive on chamber_c
  RatVec chamber_c;                 // interior point of the chosen chamber of Σ_σ
  int r = 0;                        // index into ambient->weyl
  std::vector<int> r_word;

  const RootDatum& datum() const { return *ambient; }
  const WeylElement& r_elem() const { return ambient->weyl[r]; }
  bool in_sigma(int i) const { return std::binary_search(sigma_zero.begin(), sigma_zero.end(), i); }

  std::string label() const {
    std::string s = "S{";
    for (std::size_t i = 0; i < sigma_positive.size(); ++i) s += (i ? "," : "") + std::to_string(sigma_positive[i]);
    s += "}r[";
    for (std::size_t i = 0; i < r_word.size(); ++i) s += (i ? "," : "") + std::to_string(r_word[i]);
    return s + "]";
  }
};

namespace detail {

inline bool reflection_closed(const RootDatum& d, const std::vector<int>& roots) {
  std::set<int> in(roots.begin(), roots.end());
  for (int a : roots) {
    const auto& s = d.weyl[reflection_index(d, a)];
    for (int b : roots)
      if (!in.count(s.root_perm[b])) return false;
  }
  return true;
}

/// Subgroup of W generated by `gens` (indices), sorted.
inline std::vector<int> generated_subgroup(const RootDatum& d, const std::vector<int>& gens) {
  std::set<int> seen{0};
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int g : gens) {
      int h = d.mult[g][queue[k]];
      if (seen.insert(h).second) queue.push_back(h);
    }
  return {seen.begin(), seen.end()};
}

inline bool preserves_set(const WeylElement& w, const std::vector<int>& sorted) {
  for (int i : sorted)
    if (!std::binary_search(sorted.begin(), sorted.end(), w.root_perm[i])) return false;
  return true;
}

inline int fixed_dim(const RatMat& m) {
  RatMat a = m - RatMat::identity(m.rows());
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  return static_cast<int>(m.rows() - rank(rows));
}

}  // namespace detail

/// Validates Σ_σ (closed under its own reflections) and r (given as a word in
/// the simple reflections of the ambient Weyl group). The chamber of Σ_σ is
/// the one containing the dominant point ρ̌ = (1, ..., 1), so r must map
/// Σ_σ ∩ Σ⁺ onto itself.
inline SpectralTriple build_spectral_triple(std::shared_ptr<const RootDatum> d, std::vector<int> sigma,
                                            const std::vector<int>& r_word) {
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  for (int i : sigma)
    if (i < 0 || i >= static_cast<int>(d->roots.size()))
      throw Error(ErrorKind::InvalidArgument, "root index out of range: " + std::to_string(i));
  if (!detail::reflection_closed(*d, sigma))
    throw Error(ErrorKind::NotSubsystem, "zero set is not closed under its reflections");
  SpectralTriple t;
  t.ambient = d;
  t.sigma_zero = sigma;
  for (int i : sigma)
    if (d->is_positive(i)) t.sigma_positive.push_back(i);
  t.chamber_c = RatVec(d->rank);
  for (int i = 0; i < d->rank; ++i) t.chamber_c[i] = 1;
  t.r = weyl_word_index(*d, r_word);
  t.r_word = d->weyl[t.r].word;
  if (!detail::preserves_set(t.r_elem(), t.sigma_positive))
    throw Error(ErrorKind::NotChamberStabilizer, "r does not stabilise the chamber of the zero set");
  return t;
}

/// Every triple on the datum: each reflection-closed Σ_σ together with every
/// r stabilising its positive chamber.
inline std::vector<SpectralTriple> enumerate_triples(std::shared_ptr<const RootDatum> d) {
  const int np = d->num_positive();
  std::vector<SpectralTriple> out;
  for (long mask = 0; mask < (1L << np); ++mask) {
    std::vector<int> sigma;
    for (int i = 0; i < np; ++i)
      if (mask >> i & 1) {
        sigma.push_back(i);
        sigma.push_back(d->negative_of(i));
      }
    std::sort(sigma.begin(), sigma.end());
    if (!detail::reflection_closed(*d, sigma)) continue;
    std::vector<int> pos(sigma.begin(), sigma.begin() + sigma.size() / 2);
    for (std::size_t w = 0; w < d->weyl.size(); ++w)
      if (detail::preserves_set(d->weyl[w], pos)) out.push_back(build_spectral_triple(d, sigma, d->weyl[w].word));
  }
  return out;
}

struct RGroup {
  std::vector<int> W_sigma;   // ⟨W_σ⁰, r⟩
  std::vector<int> W_sigma0;  // reflection group of Σ_σ
  std::vector<int> R;         // stabiliser of the chamber in W_σ
};

inline RGroup r_group(const SpectralTriple& t) {
  const RootDatum& d = t.datum();
  std::vector<int> refl;
  for (int a : t.sigma_positive) refl.push_back(reflection_index(d, a));
  RGroup g;
  g.W_sigma0 = detail::generated_subgroup(d, refl);
  refl.push_back(t.r);
  g.W_sigma = detail::generated_subgroup(d, refl);
  for (int w : g.W_sigma)
    if (detail::preserves_set(d.weyl[w], t.sigma_positive)) g.R.push_back(w);
  for (int w : g.W_sigma)
    for (int h : g.W_sigma0)
      if (!std::binary_search(g.W_sigma0.begin(), g.W_sigma0.end(), d.mult[d.mult[w][h]][d.inv[w]]))
        throw Error(ErrorKind::InternalInconsistency, "reflection subgroup is not normal");
  if (g.R.size() * g.W_sigma0.size() != g.W_sigma.size())
    throw Error(ErrorKind::InternalInconsistency, "R-group does not complement the reflection subgroup");
  return g;
}

/// τ ∈ Tℓ(L) represented by a triple; a_L is the fixed space of r unless a
/// smaller Levi-component space is requested explicitly.
struct TauClass {
  SpectralTriple triple;
  Levi levi;
};

inline TauClass make_tau_class(const SpectralTriple& t) {
  const RootDatum& d = t.datum();
  RatMat a = t.r_elem().matrix - RatMat::identity(d.rank);
  std::vector<RatVec> rows;
  for (int i = 0; i < d.rank; ++i) rows.push_back(a.row(i));
  return {t, levi_from_subspace(d, nullspace(rows, d.rank))};
}

inline TauClass make_tau_class(const SpectralTriple& t, const Levi& L) {
  for (const auto& b : L.basis)
    if (!(t.r_elem().matrix * b == b)) throw Error(ErrorKind::InvalidArgument, "r does not fix a_L pointwise");
  return {t, L};
}

struct TauClassification {
  bool elliptic = false;
  bool span_test = false;    // Σ^r_τ (within G') spans (a_L^{G'})^*
  bool brute_force = false;  // some w ∈ W_σ⁰ ∩ W_{G'} has a_{M1}^{rw} = a_{G'}
  bool discrete = false;
};

inline TauClassification classify_tau(const TauClass& tc, const Levi& Gp) {
  const SpectralTriple& t = tc.triple;
  const RootDatum& d = t.datum();
  if (!contains(Gp, tc.levi)) throw Error(ErrorKind::NotComparable, "L is not contained in the given Levi");
  TauClassification c;
  c.elliptic = detail::fixed_dim(t.r_elem().matrix) == tc.levi.dim();
  std::vector<RatVec> restricted;
  std::vector<int> refl;
  RatMat pt = tc.levi.proj.transpose();
  for (int a : t.sigma_zero) {
    if (!Gp.has_root(a)) continue;
    restricted.push_back(pt * d.roots[a]);
    if (d.is_positive(a)) refl.push_back(reflection_index(d, a));
  }
  c.span_test = static_cast<int>(rank(restricted)) == tc.levi.dim() - Gp.dim();
  for (int w : detail::generated_subgroup(d, refl))
    if (detail::fixed_dim(d.weyl[d.mult[t.r][w]].matrix) == Gp.dim()) {
      c.brute_force = true;
      break;
    }
  if (c.elliptic && c.span_test != c.brute_force)
    throw Error(ErrorKind::InternalInconsistency, "span criterion and brute-force criterion disagree");
  c.discrete = c.brute_force;
  return c;
}

/// n_β(τ): half the number of α ∈ Σ_σ restricting to a nonzero multiple of β.
inline Rational n_beta(const TauClass& tc, const RatVec& beta) {
  const RootDatum& d = tc.triple.datum();
  auto rs = restricted_roots(d, tc.levi, whole_group(d));
  if (find_restricted(rs, beta) < 0) throw Error(ErrorKind::NotARoot, "not a restricted root: " + beta.str());
  RatMat pt = tc.levi.proj.transpose();
  int count = 0;
  for (int a : tc.triple.sigma_zero) {
    RatVec x = pt * d.roots[a];
    if (x.is_zero()) continue;
    if (rank(std::vector<RatVec>{x, beta}) == 1) ++count;
  }
  return rat(count, 2);
}

/// Σ^r_τ: the restricted roots of a_L (both signs) with n_β > 0.
inline std::vector<RestrictedRoot> tau_roots(const TauClass& tc) {
  const RootDatum& d = tc.triple.datum();
  std::vector<RestrictedRoot> out;
  for (auto& r : restricted_roots(d, tc.levi, whole_group(d)))
    if (sgn(n_beta(tc, r.form)) > 0) out.push_back(r);
  return out;
}

/// Densities for every restricted root of a_L, built from n_β(τ) so that the
/// residue at 0 is −n_β.
inline ScalarRootFns tau_densities(const TauClass& tc, const std::function<Density(const Rational&)>& make) {
  const RootDatum& d = tc.triple.datum();
  ScalarRootFns fns;
  for (const auto& r : restricted_roots(d, tc.levi, whole_group(d))) fns.set(r.form, make(n_beta(tc, r.form)));
  return fns;
}

struct DiscreteConstants {
  Rational nL = 0;
  int kL = 0;
  std::vector<Rational> per_chamber;  // n^L computed from each Q ∈ P^{L'}(L)
};

/// n^{L'}(τ) = Σ_F ∏_{β∈F} n_β/2 over bases F of (a_L^{L'})^* inside Σ^r_Q,
/// evaluated for every Q; k^{L'}(τ) = order of the centraliser of r in the
/// R-group of the triple inside L'.
inline DiscreteConstants discrete_constants(const TauClass& tc, const Levi& Lp) {
  const SpectralTriple& t = tc.triple;
  const RootDatum& d = t.datum();
  if (!contains(Lp, tc.levi)) throw Error(ErrorKind::NotComparable, "L is not contained in L'");
  DiscreteConstants out;
  const std::size_t k = tc.levi.dim() - Lp.dim();
  for (const auto& Q : parabolics(d, tc.levi, Lp)) {
    std::vector<RatVec> pos;
    std::vector<Rational> half;
    for (std::size_t i = 0; i < Q.reduced.size(); ++i)
      if (Q.sign[i] > 0) {
        pos.push_back(Q.reduced[i].form);
        half.push_back(n_beta(tc, Q.reduced[i].form) / 2);
      }
    Rational total = 0;
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (chosen.size() == k) {
        std::vector<RatVec> vs;
        Rational prod = 1;
        for (int c : chosen) {
          vs.push_back(pos[c]);
          prod *= half[c];
        }
        if (k == 0 || rank(vs) == k) total += prod;
        return;
      }
      for (std::size_t i = start; i < pos.size(); ++i) {
        chosen.push_back(static_cast<int>(i));
        rec(i + 1);
        chosen.pop_back();
      }
    };
    rec(0);
    out.per_chamber.push_back(total);
  }
  out.nL = out.per_chamber.front();
  for (const auto& v : out.per_chamber)
    if (v != out.nL) throw Error(ErrorKind::InternalInconsistency, "n^L depends on the chosen parabolic");

  std::vector<int> refl, pos_in;
  for (int a : t.sigma_positive)
    if (Lp.has_root(a)) {
      refl.push_back(reflection_index(d, a));
      pos_in.push_back(a);
    }
  refl.push_back(t.r);
  for (int w : detail::generated_subgroup(d, refl))
    if (detail::preserves_set(d.weyl[w], pos_in) && d.mult[w][t.r] == d.mult[t.r][w]) ++out.kL;
  return out;
}

/// Model of the stabiliser W_τ acting on a_L: the restrictions of elements of
/// W_σ⁰ commuting with r, together with the reflections in Σ^r_τ. Elements
/// are k×k matrices in the coordinates of the Levi's basis of a_L.
struct WTauModel {
  Levi levi;
  RatMat gram;                        // inner product in basis coordinates
  std::vector<RestrictedRoot> roots;  // Σ^r_τ
  std::vector<RatVec> root_coords;    // β(b_j)
  std::vector<RatVec> coroot_coords;  // β̌ in basis coordinates
  std::vector<RatMat> elements;       // identity first
  std::vector<RatVec> chambers;       // interior points (basis coordinates)
  bool reflections_realized = false;  // every s_β is a centraliser restriction
  bool transitive = false;

  int find(const RatMat& g) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == g) return static_cast<int>(i);
    return -1;
  }
  std::vector<int> sign_vector(const RatVec& x) const {
    std::vector<int> s;
    for (const auto& b : root_coords) s.push_back(sgn(dot(b, x)));
    return s;
  }
};

namespace detail {

inline std::vector<RatMat> close_matrices(std::vector<RatMat> gens, std::size_t k) {
  std::vector<RatMat> out{RatMat::identity(k)};
  std::set<std::vector<Rational>> seen{out.front().data()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      RatMat h = g * out[i];
      if (seen.insert(h.data()).second) out.push_back(h);
    }
  return out;
}

}  // namespace detail

inline WTauModel wtau_model(const TauClass& tc) {
  const SpectralTriple& t = tc.triple;
  const RootDatum& d = t.datum();
  const auto& basis = tc.levi.basis;
  const std::size_t k = basis.size();
  WTauModel m;
  m.levi = tc.levi;
  m.gram = gram_of(basis, d.gram);
  m.roots = tau_roots(tc);
  for (const auto& r : m.roots) {
    RatVec c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = dot(r.form, basis[j]);
    m.root_coords.push_back(c);
    m.coroot_coords.push_back(*coordinates_in(basis, r.coroot));
  }

  std::vector<RatMat> central;
  for (int w : r_group(t).W_sigma0) {
    if (d.mult[w][t.r] != d.mult[t.r][w]) continue;
    std::vector<RatVec> cols;
    bool keeps = true;
    for (const auto& b : basis) {
      auto c = coordinates_in(basis, d.weyl[w].matrix * b);
      if (!c) {
        keeps = false;
        break;
      }
      cols.push_back(*c);
    }
    if (keeps) central.push_back(RatMat::from_columns(cols, k));
  }
  auto restricted = detail::close_matrices(central, k);

  std::vector<RatMat> reflections;
  for (std::size_t i = 0; i < m.roots.size(); ++i) {
    RatMat s = RatMat::identity(k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) s(a, b) -= m.coroot_coords[i][a] * m.root_coords[i][b];
    reflections.push_back(s);
  }
  m.reflections_realized = true;
  for (const auto& s : reflections) {
    bool found = false;
    for (const auto& g : restricted) found = found || g == s;
    m.reflections_realized = m.reflections_realized && found;
  }
  central.insert(central.end(), reflections.begin(), reflections.end());
  m.elements = detail::close_matrices(central, k);

  std::vector<RatVec> normals;
  for (std::size_t i = 0; i < m.roots.size(); ++i)
    if (d.is_positive(m.roots[i].sources.front())) normals.push_back(m.root_coords[i]);
  m.chambers = lp::arrangement_chambers(normals, k);
  std::set<std::vector<int>> all, reached;
  for (const auto& c : m.chambers) all.insert(m.sign_vector(c));
  for (const auto& g : m.elements) reached.insert(m.sign_vector(g * m.chambers.front()));
  m.transitive = all == reached;
  return m;
}

/// ε_τ(w) = Π_c(wλ)/Π_c(λ), computed exactly for every chamber c of Σ^r_τ;
/// throws if the value depends on c or w is not in the model.
inline int eps_tau(const WTauModel& m, const RatMat& g) {
  if (m.find(g) < 0) throw Error(ErrorKind::NotInStabilizer, "element is not in the modelled W_tau");
  // λ = ⟨X, ·⟩ with X generic; λ(β̌) is a positive multiple of β(X).
  RatVec X = m.chambers.front();
  for (std::size_t j = 0; j < X.size(); ++j) X[j] += Rational(1, 7 + 3 * static_cast<long>(j * j));
  RatVec wX = g * X;
  int value = 0;
  for (const auto& c : m.chambers) {
    Rational ratio = 1;
    for (const auto& b : m.root_coords) {
      if (sgn(dot(b, c)) < 0) continue;
      Rational den = dot(b, X);
      if (sgn(den) == 0) throw Error(ErrorKind::InternalInconsistency, "sample point lies on a wall");
      ratio *= dot(b, wX) / den;
    }
    int s = ratio == 1 ? 1 : ratio == -1 ? -1 : 0;
    if (s == 0) throw Error(ErrorKind::InternalInconsistency, "element does not permute the roots of W_tau");
    if (value != 0 && s != value) throw Error(ErrorKind::InternalInconsistency, "sign depends on the chamber");
    value = s;
  }
  return value;
}

/// Restriction of a Weyl element to a_L, looked up in the model.
inline int eps_tau(const RootDatum& d, const WTauModel& m, const WeylElement& w) {
  std::vector<RatVec> cols;
  for (const auto& b : m.levi.basis) {
    auto c = coordinates_in(m.levi.basis, w.matrix * b);
    if (!c) throw Error(ErrorKind::NotInStabilizer, "element does not preserve a_L");
    cols.push_back(*c);
  }
  (void)d;
  return eps_tau(m, RatMat::from_columns(cols, m.levi.basis.size()));
}

struct TempextOptions {
  std::vector<double> deltas{1e-2, 1e-4, 1e-6};
  double threshold = 0.5;
  bool symmetrize = true;  // false gives the unsymmetrised negative control
  double floor = 1e-9;     // magnitudes below this count as zero
};

/// Samples Σ_{w∈W_τ} φ(wλ)·∏_{β∈F} m'_β((wλ)(β̌)) for λ = i⟨X,·⟩ with X at
/// distance δ from each wall of Σ^r_τ and records the growth exponent e
/// (|sum| ~ δ^{-e}) for every linearly independent F of positive roots.
/// φ(λ) = p(λ(v))·exp(s⟨λ,λ⟩) for the test function (p, s) and a fixed
/// vector v with no symmetry under W_τ.
inline VerificationReport tempext_check(const TauClass& tc, const ScalarRootFns& fns, const TestFunction& phi,
                                        const TempextOptions& opt = {}) {
  const RootDatum& d = tc.triple.datum();
  WTauModel m = wtau_model(tc);
  VerificationReport rep;
  const std::size_t k = m.levi.basis.size();
  const std::string base = "tempext/" + d.label + "/" + tc.triple.label() + (opt.symmetrize ? "" : "/unsymmetrized");
  std::vector<int> positive;
  for (std::size_t i = 0; i < m.roots.size(); ++i)
    if (d.is_positive(m.roots[i].sources.front())) positive.push_back(static_cast<int>(i));
  if (positive.empty()) {
    rep.add(make_check(base, "W_tau-symmetrised extension", base, true, 0.0, {{"note", "no poles"}}));
    return rep;
  }

  std::vector<const RatMat*> group;
  for (const auto& g : m.elements) {
    group.push_back(&g);
    if (!opt.symmetrize) break;
  }
  RatVec e0(k);  // the fixed vector v of φ
  for (std::size_t j = 0; j < k; ++j) e0[j] = rat(static_cast<long>(j) + 2, 3 + static_cast<long>(j * j));

  // Independent subsets of the positive roots.
  std::vector<std::vector<int>> subsets;
  for (long mask = 1; mask < (1L << positive.size()); ++mask) {
    std::vector<int> F;
    std::vector<RatVec> vs;
    for (std::size_t i = 0; i < positive.size(); ++i)
      if (mask >> i & 1) {
        F.push_back(positive[i]);
        vs.push_back(m.root_coords[positive[i]]);
      }
    if (rank(vs) == F.size()) subsets.push_back(F);
  }

  // Every pairing along X = y + t·n is affine in t with exact rational
  // coefficients, so evaluating base + t·slope keeps full relative accuracy
  // close to the wall.
  struct Affine {
    double base, slope;
    double at(double t) const { return base + t * slope; }
  };
  auto pairing = [&](const RatVec& u, const RatVec& v) { return dot(m.gram * u, v); };

  for (int wall : positive) {
    RatVec cor = m.coroot_coords[wall];
    Rational cc = pairing(cor, cor);
    const double unit = 1.0 / std::sqrt(cc.get_d());
    // Wall points: chamber points projected onto the wall, kept if they avoid
    // every other wall.
    std::vector<RatVec> samples;
    for (const auto& c : m.chambers) {
      RatVec y = c - (pairing(cor, c) / cc) * cor;
      bool ok = true;
      for (std::size_t i = 0; i < m.roots.size(); ++i)
        if (static_cast<int>(i) != wall && rank(std::vector<RatVec>{m.root_coords[i], m.root_coords[wall]}) == 2 &&
            sgn(dot(m.root_coords[i], y)) == 0)
          ok = false;
      if (ok) samples.push_back(y);
      if (samples.size() == 2) break;
    }
    // Per sample and group element: λ(v), |X|² and every λ(β̌) as affine
    // functions of the signed distance t.
    struct Frame {
      Affine b0;
      std::vector<Affine> z;
    };
    std::vector<std::vector<Frame>> frames;
    std::vector<std::array<double, 3>> norms;  // |X|² = a + b t + c t²
    for (const auto& y : samples) {
      std::vector<Frame> fs;
      for (const RatMat* g : group) {
        RatVec wy = *g * y, wn = *g * cor;
        Frame f{{pairing(wy, e0).get_d(), pairing(wn, e0).get_d() * unit}, {}};
        for (const auto& b : m.coroot_coords) f.z.push_back({pairing(wy, b).get_d(), pairing(wn, b).get_d() * unit});
        fs.push_back(f);
      }
      frames.push_back(fs);
      norms.push_back({pairing(y, y).get_d(), 2 * pairing(y, cor).get_d() * unit, 1.0});
    }
    auto sum_at = [&](std::size_t sample, double t, const std::vector<int>& F) {
      const auto& q = norms[sample];
      double norm2 = q[0] + t * q[1] + t * t * q[2];
      Complex total = 0;
      for (const auto& f : frames[sample]) {
        Complex term = phi.poly_at(Complex(0.0, f.b0.at(t))) * std::exp(-phi.scale.get_d() * norm2);
        for (int b : F) term *= fns.at(m.roots[b].form)(Complex(0.0, f.z[b].at(t)));
        total += term;
      }
      return total;
    };
    for (const auto& F : subsets) {
      std::vector<double> maxima;
      for (double delta : opt.deltas) {
        double mx = 0;
        for (std::size_t i = 0; i < samples.size(); ++i)
          for (int side : {1, -1}) mx = std::max(mx, std::abs(sum_at(i, side * delta, F)));
        maxima.push_back(std::max(mx, opt.floor));
      }
      double growth = 0;
      for (std::size_t i = 0; i + 1 < maxima.size(); ++i)
        growth = std::max(growth, std::log(maxima[i + 1] / maxima[i]) / std::log(opt.deltas[i] / opt.deltas[i + 1]));
      std::string fid;
      for (int b : F) fid += (fid.empty() ? "" : ",") + std::to_string(b);
      std::string id = base + "/wall" + std::to_string(wall) + "/F{" + fid + "}";
      nlohmann::json detail{{"wall", m.roots[wall].form.str()}, {"deltas", opt.deltas}, {"maxima", maxima},
                            {"growth_exponent", growth}, {"threshold", opt.threshold},
                            {"group_order", group.size()}, {"phi", phi.describe()}};
      rep.add(make_check(id, "W_tau-symmetrised extension", id, growth < opt.threshold, growth, detail));
    }
  }
  return rep;
}

}  // namespace woi
