#pragma once

#include <map>
#include <string>
#include <vector>

#include "woi/levi.hpp"

namespace woi {

/// Polynomial with rational coefficients; exponent vectors index the
/// variables (coordinates of λ in simple-root coordinates by default).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    if (sgn(c) != 0) p.terms_[std::vector<int>(nvars, 0)] = c;
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    Poly p(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& e, const Rational& c) {
    if (e.size() != nvars_) throw Error(ErrorKind::DimensionError, "monomial has wrong number of variables");
    Rational& slot = terms_[e];
    slot += c;
    if (sgn(slot) == 0) terms_.erase(e);
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        std::vector<int> e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend Poly operator*(const Rational& s, const Poly& a) {
    Poly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
    return out;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Rational evaluate(const RatVec& x) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational m = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) m *= x[i];
      s += m;
    }
    return s;
  }

  /// Values at x of the homogeneous components, indexed by degree.
  std::vector<Rational> graded_values(const RatVec& x) const {
    std::vector<Rational> out;
    for (const auto& [e, c] : terms_) {
      std::size_t deg = 0;
      Rational m = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        deg += e[i];
        for (int k = 0; k < e[i]; ++k) m *= x[i];
      }
      if (out.size() <= deg) out.resize(deg + 1, Rational(0));
      out[deg] += m;
    }
    return out;
  }

  /// Substitute x_i = Σ_j A(i, j) s_j; the result is a polynomial in s.
  Poly substitute(const RatMat& A) const {
    Poly out(A.cols());
    std::vector<Poly> lin;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Poly l(A.cols());
      for (std::size_t j = 0; j < A.cols(); ++j)
        if (sgn(A(i, j)) != 0) l += A(i, j) * Poly::variable(A.cols(), j);
      lin.push_back(l);
    }
    for (const auto& [e, c] : terms_) {
      Poly m = Poly::constant(A.cols(), c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) m = m * lin[i];
      out += m;
    }
    return out;
  }

 private:
  std::size_t nvars_ = 0;
  std::map<std::vector<int>, Rational> terms_;
};

/// poly(λ) · e^{λ(X)}
struct ExpPolyTerm {
  Poly poly;
  RatVec exponent;
};

/// A (G,M)-family given chamber by chamber as exponential polynomials.
struct ExpPolyFamily {
  Levi levi;
  std::vector<ParabolicChamber> chambers;
  std::vector<std::vector<ExpPolyTerm>> members;  // parallel to chambers
};

/// Points X_P ∈ a_M^G, one per chamber.
struct OrthogonalSet {
  Levi levi;
  std::vector<ParabolicChamber> chambers;
  std::vector<RatVec> points;
};

inline bool is_dominant(const RatVec& T) {
  for (const auto& x : T.coords())
    if (sgn(x) < 0) return false;
  return true;
}

/// Index of the chamber of P(M0) containing the generic point H.
inline int chamber_containing(const std::vector<ParabolicChamber>& chambers, const RatVec& H) {
  for (std::size_t c = 0; c < chambers.size(); ++c) {
    const auto& P = chambers[c];
    bool in = true;
    for (std::size_t i = 0; i < P.reduced.size() && in; ++i) in = sgn(dot(P.reduced[i].form, H)) == P.sign[i];
    if (in) return static_cast<int>(c);
  }
  return -1;
}

/// The positive orthogonal set attached to a dominant T.
inline OrthogonalSet orthogonal_set(const RootDatum& d, const Levi& M, const RatVec& T) {
  if (T.size() != static_cast<std::size_t>(d.rank)) throw Error(ErrorKind::DimensionError, "T has wrong length");
  if (!is_dominant(T)) throw Error(ErrorKind::NotDominant, "T is not in the closed dominant chamber");
  Levi M0 = minimal_levi(d);
  auto base = parabolics(d, M0);
  std::vector<RatVec> x0(base.size());
  RatVec rho(d.rank);
  for (int i = 0; i < d.rank; ++i) rho[i] = 1;
  for (const auto& w : d.weyl) {
    int c = chamber_containing(base, act(w, rho));
    x0[c] = act(w, T);
  }
  OrthogonalSet out;
  out.levi = M;
  out.chambers = parabolics(d, M);
  for (const auto& P : out.chambers) {
    std::optional<RatVec> value;
    for (std::size_t q = 0; q < base.size(); ++q) {
      if (!contained_in(base[q], P)) continue;
      RatVec proj = M.proj * x0[q];
      if (value && !(*value == proj))
        throw Error(ErrorKind::InternalInconsistency, "projected points differ within one chamber");
      value = proj;
    }
    if (!value) throw Error(ErrorKind::InternalInconsistency, "no minimal parabolic below P");
    out.points.push_back(*value);
  }
  return out;
}

/// Adjacent chamber pairs (a, b, wall) where wall indexes the reduced root
/// positive on a and negative on b.
inline std::vector<std::tuple<int, int, int>> adjacent_pairs(const std::vector<ParabolicChamber>& chambers) {
  std::vector<std::tuple<int, int, int>> out;
  for (std::size_t a = 0; a < chambers.size(); ++a)
    for (std::size_t b = 0; b < chambers.size(); ++b) {
      if (a == b) continue;
      std::vector<int> diff;
      for (std::size_t i = 0; i < chambers[a].sign.size(); ++i)
        if (chambers[a].sign[i] != chambers[b].sign[i]) diff.push_back(static_cast<int>(i));
      if (diff.size() != 2) continue;
      int wall = chambers[a].sign[diff[0]] > 0 ? diff[0] : diff[1];
      out.emplace_back(static_cast<int>(a), static_cast<int>(b), wall);
    }
  return out;
}

/// Whether X_P − X_P' ∈ Q_{≥0} β̌ for every adjacent pair with wall β.
inline bool is_positive_orthogonal(const OrthogonalSet& s) {
  for (auto [a, b, wall] : adjacent_pairs(s.chambers)) {
    RatVec diff = s.points[a] - s.points[b];
    const RatVec& cor = s.chambers[a].reduced[wall].coroot;
    auto c = coordinates_in({cor}, diff);
    if (!c || sgn((*c)[0]) < 0) return false;
  }
  return true;
}

namespace detail {

inline void facet_search(const std::vector<RatVec>& pts, std::size_t k, std::size_t start, std::vector<int>& chosen,
                         std::vector<std::vector<int>>& facets, std::vector<RatVec>& normals,
                         std::vector<Rational>& offsets) {
  if (chosen.size() == k) {
    for (const auto& f : facets) {
      bool inside = true;
      for (int c : chosen) inside = inside && std::binary_search(f.begin(), f.end(), c);
      if (inside) return;
    }
    std::vector<RatVec> diffs;
    for (std::size_t i = 1; i < chosen.size(); ++i) diffs.push_back(pts[chosen[i]] - pts[chosen[0]]);
    auto ns = nullspace(diffs, k);
    if (ns.size() != 1) return;
    const RatVec& a = ns[0];
    Rational b = dot(a, pts[chosen[0]]);
    int side = 0;
    std::vector<int> on;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      int s = sgn(dot(a, pts[p]) - b);
      if (s == 0) {
        on.push_back(static_cast<int>(p));
        continue;
      }
      if (side == 0) side = s;
      if (s != side) return;
    }
    facets.push_back(on);
    normals.push_back(a);
    offsets.push_back(b);
    return;
  }
  for (std::size_t i = start; i < pts.size(); ++i) {
    chosen.push_back(static_cast<int>(i));
    facet_search(pts, k, i + 1, chosen, facets, normals, offsets);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Exact Lebesgue volume of the convex hull of points in Q^k: a fan
/// decomposition from one vertex, recursing into facets.
inline Rational polytope_volume(std::vector<RatVec> pts, std::size_t k) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (k == 0) return pts.empty() ? Rational(0) : Rational(1);
  if (pts.size() <= k) return 0;
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  if (rank(diffs) < k) return 0;
  if (k == 1) return pts.back()[0] - pts.front()[0];
  std::vector<std::vector<int>> facets;
  std::vector<RatVec> normals;
  std::vector<Rational> offsets;
  std::vector<int> chosen;
  detail::facet_search(pts, k, 0, chosen, facets, normals, offsets);
  const RatVec& apex = pts[0];
  Rational total = 0;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    if (std::binary_search(facets[f].begin(), facets[f].end(), 0)) continue;
    const RatVec& f0 = pts[facets[f][0]];
    std::vector<RatVec> U;
    for (std::size_t i = 1; i < facets[f].size() && U.size() + 1 < k; ++i) {
      auto trial = U;
      trial.push_back(pts[facets[f][i]] - f0);
      if (rank(trial) == trial.size()) U = trial;
    }
    std::vector<RatVec> local;
    for (int p : facets[f]) local.push_back(*coordinates_in(U, pts[p] - f0));
    std::vector<RatVec> cols = U;
    cols.push_back(apex - f0);
    Rational cone = abs(det(RatMat::from_columns(cols, k)));
    total += cone * polytope_volume(local, k - 1) / Rational(static_cast<long>(k));
  }
  return total;
}

/// Volume of conv{X_P} in a_M^G, measured with the inner product.
inline QuadConst hull_volume(const RootDatum& d, const OrthogonalSet& s) {
  auto basis = relative_basis(d, s.levi, whole_group(d));
  if (basis.empty()) return QuadConst::one();
  std::vector<RatVec> coords;
  for (const auto& p : s.points) {
    auto c = coordinates_in(basis, p);
    if (!c) throw Error(ErrorKind::DimensionError, "point outside a_M^G");
    coords.push_back(*c);
  }
  Rational v = polytope_volume(coords, basis.size());
  Rational g = det(gram_of(basis, d.gram));
  return QuadConst::from_square(v * v * g);
}

/// The family c_P(λ) = e^{λ(X_P)}.
inline ExpPolyFamily exponential_family(const RootDatum& d, const OrthogonalSet& s) {
  ExpPolyFamily f{s.levi, s.chambers, {}};
  for (const auto& X : s.points) f.members.push_back({{Poly::constant(d.rank, 1), X}});
  return f;
}

inline bool off_walls(const ExpPolyFamily& f, const RatVec& lambda) {
  for (const auto& r : f.chambers.front().reduced)
    if (sgn(dot(lambda, r.coroot)) == 0) return false;
  return true;
}

/// Deterministic generic direction: gram dual of the first chamber point,
/// perturbed by small rationals until it avoids every wall.
inline RatVec generic_direction(const RootDatum& d, const ExpPolyFamily& f, int salt = 0) {
  const auto& P = f.chambers.front();
  RatVec base = d.dual_of(P.chamber_point);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RatVec lambda = base;
    if (attempt + salt > 0)
      for (std::size_t j = 0; j < P.basis.size(); ++j)
        lambda += Rational(static_cast<long>(j + 1), 97L + 13L * (attempt + salt) + 7L * static_cast<long>(j)) *
                  d.dual_of(P.basis[j]);
    if (off_walls(f, lambda)) return lambda;
  }
  throw Error(ErrorKind::InternalInconsistency, "no generic direction found");
}

/// Laurent coefficients of Σ_P c_P(tλ0)/θ_P(tλ0), divided by √det Γ, for
/// orders -k..0 (index j holds order j - k).
inline std::vector<Rational> family_laurent(const ExpPolyFamily& f, const RatVec& lambda0) {
  const std::size_t k = f.chambers.front().basis.size();
  std::vector<Rational> total(k + 1, Rational(0));
  for (std::size_t c = 0; c < f.chambers.size(); ++c) {
    const auto& P = f.chambers[c];
    std::vector<Rational> series(k + 1, Rational(0));
    for (const auto& term : f.members[c]) {
      auto graded = term.poly.graded_values(lambda0);
      Rational a = dot(lambda0, term.exponent);
      std::vector<Rational> ex(k + 1);
      Rational pw = 1, fact = 1;
      for (std::size_t j = 0; j <= k; ++j) {
        if (j > 0) {
          pw *= a;
          fact *= static_cast<long>(j);
        }
        ex[j] = pw / fact;
      }
      for (std::size_t i = 0; i < graded.size() && i <= k; ++i)
        for (std::size_t j = 0; i + j <= k; ++j) series[i + j] += graded[i] * ex[j];
    }
    ThetaValue th = theta(P, lambda0);
    if (sgn(th.product) == 0) throw Error(ErrorKind::InvalidArgument, "direction lies on a wall");
    Rational scale = th.lattice_det / th.product;
    for (std::size_t j = 0; j <= k; ++j) total[j] += series[j] * scale;
  }
  return total;
}

/// c_M = lim_{λ→0} Σ_P c_P(λ)/θ_P(λ), exact.
inline SurdValue family_limit(const RootDatum& d, const ExpPolyFamily& f, const std::optional<RatVec>& direction = {}) {
  if (f.chambers.empty() || f.members.size() != f.chambers.size())
    throw Error(ErrorKind::IncompleteInput, "family needs one member per chamber");
  const auto& P0 = f.chambers.front();
  if (!P0.proper()) {
    Rational c0 = 0;
    for (const auto& term : f.members.front()) c0 += term.poly.evaluate(RatVec(d.rank));
    return {c0, 1};
  }
  RatVec lambda0 = direction ? *direction : generic_direction(d, f);
  for (int salt = 1; !off_walls(f, lambda0); ++salt) lambda0 = generic_direction(d, f, salt);
  auto coeffs = family_laurent(f, lambda0);
  const std::size_t k = P0.basis.size();
  for (std::size_t j = 0; j < k; ++j)
    if (sgn(coeffs[j]) != 0)
      throw Error(ErrorKind::FamilyNotSmooth, "Laurent coefficient of order " + std::to_string(static_cast<int>(j) - static_cast<int>(k)) + " does not cancel");
  return {coeffs[k], P0.gram_det};
}

/// Symbolic compatibility: adjacent members agree on their common wall.
inline bool is_compatible(const RootDatum& d, const ExpPolyFamily& f) {
  if (!f.chambers.front().proper()) return true;
  const auto& basis = f.chambers.front().basis;
  for (auto [a, b, wall] : adjacent_pairs(f.chambers)) {
    const RatVec& cor = f.chambers[a].reduced[wall].coroot;
    RatVec row(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) row[j] = dot(d.dual_of(basis[j]), cor);
    auto ns = nullspace({row}, basis.size());
    // Wall parametrisation λ = Σ_j s_j μ_j with μ_j covectors.
    std::vector<RatVec> mus;
    for (const auto& c : ns) {
      RatVec mu(d.rank);
      for (std::size_t j = 0; j < basis.size(); ++j) mu += c[j] * d.dual_of(basis[j]);
      mus.push_back(mu);
    }
    RatMat A = RatMat::from_columns(mus, d.rank);
    if (mus.empty()) A = RatMat(d.rank, 0);
    auto restrict = [&](const std::vector<ExpPolyTerm>& member) {
      std::map<RatVec, Poly> grouped;
      for (const auto& t : member) {
        RatVec e(mus.size());
        for (std::size_t j = 0; j < mus.size(); ++j) e[j] = dot(mus[j], t.exponent);
        auto it = grouped.try_emplace(e, Poly(mus.size())).first;
        it->second += t.poly.substitute(A);
      }
      for (auto it = grouped.begin(); it != grouped.end();)
        it = it->second.is_zero() ? grouped.erase(it) : std::next(it);
      return grouped;
    };
    if (restrict(f.members[a]) != restrict(f.members[b])) return false;
  }
  return true;
}

/// For each L ∈ L(M): Σ_{S ∈ L(M)} d_M^G(L, S) · values[S].
template <typename Value>
std::map<std::string, Value> descent_sum(const RootDatum& d, const std::map<std::string, Value>& values, const Levi& M) {
  auto levis = enumerate_levis(d, M);
  for (const auto& S : levis)
    if (!values.count(S.label)) throw Error(ErrorKind::IncompleteInput, "missing value for " + S.label);
  std::map<std::string, Value> out;
  for (const auto& L : levis) {
    Value acc{};
    for (const auto& S : levis) {
      QuadConst c = d_constant(d, M, L, S);
      if (c.is_zero()) continue;
      acc += c.value() * values.at(S.label);
    }
    out[L.label] = acc;
  }
  return out;
}

}  // namespace woi
