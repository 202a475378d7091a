#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "woi/lp.hpp"
#include "woi/report.hpp"
#include "woi/root_datum.hpp"

namespace woi {

/// A Levi subgroup, identified with its split component a_L and the roots
/// vanishing on it.
struct Levi {
  std::vector<RatVec> basis;     // canonical basis of a_L
  std::vector<int> root_subset;  // sorted
  std::string label;
  RatMat proj;  // orthogonal projection of a0 onto a_L

  int dim() const { return static_cast<int>(basis.size()); }
  bool has_root(int i) const { return std::binary_search(root_subset.begin(), root_subset.end(), i); }
  friend bool operator==(const Levi& a, const Levi& b) { return a.root_subset == b.root_subset; }
  friend bool operator<(const Levi& a, const Levi& b) {
    if (a.root_subset.size() != b.root_subset.size()) return a.root_subset.size() < b.root_subset.size();
    return a.root_subset < b.root_subset;
  }
};

namespace detail {

inline RatMat projection_onto(const RootDatum& d, const std::vector<RatVec>& basis) {
  std::size_t n = d.rank;
  if (basis.empty()) return RatMat(n, n);
  RatMat B = RatMat::from_columns(basis, n);
  RatMat G = inverse(gram_of(basis, d.gram));
  return B * G * B.transpose() * d.gram;
}

inline std::string levi_label(const RootDatum& d, const std::vector<int>& subset) {
  if (subset.empty()) return "M0";
  if (subset.size() == d.roots.size()) return "G";
  std::string s = "L[";
  bool first = true;
  for (int i : subset) {
    if (!d.is_positive(i)) continue;
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "]";
}

}  // namespace detail

/// Levi whose a_L is the common kernel of the given roots.
inline Levi levi_from_roots(const RootDatum& d, const std::vector<int>& gens) {
  std::vector<RatVec> rows;
  for (int i : gens) rows.push_back(d.roots[i]);
  Levi L;
  L.basis = nullspace(rows, d.rank);
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    bool vanish = true;
    for (const auto& b : L.basis)
      if (sgn(dot(d.roots[i], b)) != 0) {
        vanish = false;
        break;
      }
    if (vanish) L.root_subset.push_back(static_cast<int>(i));
  }
  L.label = detail::levi_label(d, L.root_subset);
  L.proj = detail::projection_onto(d, L.basis);
  return L;
}

/// Levi with a_L equal to the span of `vecs`; throws when the span is not
/// cut out by roots.
inline Levi levi_from_subspace(const RootDatum& d, const std::vector<RatVec>& vecs) {
  std::vector<int> gens;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    bool vanish = true;
    for (const auto& v : vecs)
      if (sgn(dot(d.roots[i], v)) != 0) {
        vanish = false;
        break;
      }
    if (vanish) gens.push_back(static_cast<int>(i));
  }
  Levi L = levi_from_roots(d, gens);
  if (static_cast<std::size_t>(L.dim()) != rank(vecs.empty() ? std::vector<RatVec>{RatVec(d.rank)} : vecs))
    throw Error(ErrorKind::InvalidArgument, "subspace is not an intersection of root hyperplanes");
  return L;
}

inline Levi minimal_levi(const RootDatum& d) { return levi_from_roots(d, {}); }

inline Levi whole_group(const RootDatum& d) {
  std::vector<int> all(d.roots.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return levi_from_roots(d, all);
}

/// small ⊆ big as subgroups (equivalently a_big ⊆ a_small).
inline bool contains(const Levi& big, const Levi& small) {
  return std::includes(big.root_subset.begin(), big.root_subset.end(), small.root_subset.begin(),
                       small.root_subset.end());
}

inline Levi conjugate(const RootDatum& d, const WeylElement& w, const Levi& L) {
  std::vector<int> gens;
  for (int i : L.root_subset) gens.push_back(w.root_perm[i]);
  return levi_from_roots(d, gens);
}

/// Every Levi L with lower ⊆ L ⊆ upper, in a deterministic order (by number
/// of roots, then lexicographically).
inline std::vector<Levi> enumerate_levis(const RootDatum& d, const std::optional<Levi>& lower = {},
                                         const std::optional<Levi>& upper = {}) {
  if (lower && upper && !contains(*upper, *lower))
    throw Error(ErrorKind::NotComparable, "lower Levi is not contained in upper Levi");
  std::set<std::vector<int>> seen;
  std::vector<Levi> found;
  std::deque<Levi> queue{minimal_levi(d)};
  seen.insert(queue.front().root_subset);
  while (!queue.empty()) {
    Levi L = queue.front();
    queue.pop_front();
    found.push_back(L);
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      if (L.has_root(static_cast<int>(i))) continue;
      std::vector<int> gens = L.root_subset;
      gens.push_back(static_cast<int>(i));
      Levi next = levi_from_roots(d, gens);
      if (seen.insert(next.root_subset).second) queue.push_back(next);
    }
  }
  std::vector<Levi> out;
  for (auto& L : found)
    if ((!lower || contains(L, *lower)) && (!upper || contains(*upper, L))) out.push_back(L);
  std::sort(out.begin(), out.end());
  return out;
}

/// Canonical basis of a_M^S = a_M ∩ (a_S)^⊥ for M ⊆ S.
inline std::vector<RatVec> relative_basis(const RootDatum& d, const Levi& M, const Levi& S) {
  std::vector<RatVec> rows;
  for (int i : M.root_subset) rows.push_back(d.roots[i]);
  for (const auto& b : S.basis) rows.push_back(d.gram * b);
  return nullspace(rows, d.rank);
}

/// A reduced root of a_M (inside an ambient Levi S), as a covector on a0
/// vanishing on the orthogonal complement of a_M.
struct RestrictedRoot {
  RatVec form;
  RatVec coroot;              // in a_M^S
  std::vector<int> sources;  // ambient roots restricting to positive multiples
};

/// Reduced roots of a_M in S, both signs, ordered by first source root.
inline std::vector<RestrictedRoot> restricted_roots(const RootDatum& d, const Levi& M, const Levi& S) {
  RatMat pt = M.proj.transpose();
  struct Entry {
    RatVec beta;
    Rational scale;
    std::vector<int> sources;
  };
  std::map<RatVec, Entry> by_direction;
  std::vector<RatVec> order;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    int idx = static_cast<int>(i);
    if (!S.has_root(idx) || M.has_root(idx)) continue;
    RatVec beta = pt * d.roots[i];
    Rational lead = 0;
    for (const auto& x : beta.coords())
      if (sgn(x) != 0) {
        lead = abs(x);
        break;
      }
    RatVec key = (1 / lead) * beta;
    auto it = by_direction.find(key);
    if (it == by_direction.end()) {
      by_direction.emplace(key, Entry{beta, lead, {idx}});
      order.push_back(key);
    } else {
      it->second.sources.push_back(idx);
      if (lead < it->second.scale) {
        it->second.scale = lead;
        it->second.beta = beta;
      }
    }
  }
  std::vector<RestrictedRoot> out;
  for (const auto& key : order) {
    const Entry& e = by_direction.at(key);
    RatVec sharp = d.form * e.beta;
    Rational len = dot(sharp, e.beta);
    out.push_back({e.beta, (Rational(2) / len) * sharp, e.sources});
  }
  return out;
}

inline int find_restricted(const std::vector<RestrictedRoot>& rs, const RatVec& beta) {
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i].form == beta) return static_cast<int>(i);
  return -1;
}

/// A parabolic P in P^S(M), i.e. a chamber of the restricted root
/// arrangement in a_M^S.
struct ParabolicChamber {
  Levi levi;
  Levi ambient;
  std::vector<int> positive_roots;  // ambient roots of S outside M, positive on the chamber
  RatVec chamber_point;
  std::vector<RestrictedRoot> reduced;  // reduced roots of a_M in S
  std::vector<int> sign;                // +1/-1 per reduced root
  std::vector<int> simple;              // indices into `reduced`
  std::vector<RatVec> basis;            // basis of a_M^S
  Rational gram_det = 1;                // det of the Gram matrix of `basis`

  bool proper() const { return !basis.empty(); }
  bool positive_on(const RatVec& beta) const { return sgn(dot(beta, chamber_point)) > 0; }
};

namespace detail {

inline std::vector<int> simple_of(const ParabolicChamber& P) {
  std::vector<RatVec> pos;
  std::vector<int> idx;
  for (std::size_t i = 0; i < P.reduced.size(); ++i)
    if (P.sign[i] > 0) {
      RatVec c(P.basis.size());
      for (std::size_t j = 0; j < P.basis.size(); ++j) c[j] = dot(P.reduced[i].form, P.basis[j]);
      pos.push_back(c);
      idx.push_back(static_cast<int>(i));
    }
  std::vector<int> simple;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    std::vector<RatVec> others;
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (j != i) others.push_back(pos[j]);
    if (!lp::in_cone(others, pos[i])) simple.push_back(idx[i]);
  }
  if (simple.size() != P.basis.size())
    throw Error(ErrorKind::InternalInconsistency, "chamber is not simplicial");
  return simple;
}

inline ParabolicChamber make_chamber(const RootDatum& d, const Levi& M, const Levi& S,
                                     const std::vector<RestrictedRoot>& reduced, const std::vector<RatVec>& basis,
                                     const Rational& gram_det, const RatVec& point) {
  ParabolicChamber P;
  P.levi = M;
  P.ambient = S;
  P.chamber_point = point;
  P.reduced = reduced;
  P.basis = basis;
  P.gram_det = gram_det;
  for (const auto& r : reduced) {
    int s = sgn(dot(r.form, point));
    if (s == 0) throw Error(ErrorKind::InternalInconsistency, "chamber point lies on a wall");
    P.sign.push_back(s);
  }
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    int idx = static_cast<int>(i);
    if (S.has_root(idx) && !M.has_root(idx) && sgn(dot(d.roots[i], point)) > 0) P.positive_roots.push_back(idx);
  }
  P.simple = simple_of(P);
  return P;
}

}  // namespace detail

/// All chambers of P^S(M) (S defaults to G). The first chamber is the one
/// on which the restrictions of positive roots are positive, when it exists.
inline std::vector<ParabolicChamber> parabolics(const RootDatum& d, const Levi& M, const std::optional<Levi>& S_opt = {}) {
  Levi S = S_opt ? *S_opt : whole_group(d);
  if (!contains(S, M)) throw Error(ErrorKind::NotComparable, "M is not contained in S");
  auto reduced = restricted_roots(d, M, S);
  auto basis = relative_basis(d, M, S);
  Rational gdet = basis.empty() ? Rational(1) : det(gram_of(basis, d.gram));
  std::vector<ParabolicChamber> out;
  if (basis.empty()) {
    out.push_back(detail::make_chamber(d, M, S, reduced, basis, gdet, RatVec(d.rank)));
    return out;
  }
  // One hyperplane per ± pair; normals in the coordinates of `basis`.
  std::vector<RatVec> normals;
  for (const auto& r : reduced) {
    if (!d.is_positive(r.sources.front())) continue;
    RatVec c(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) c[j] = dot(r.form, basis[j]);
    normals.push_back(c);
  }
  for (const auto& x : lp::arrangement_chambers(normals, basis.size())) {
    RatVec pt(d.rank);
    for (std::size_t j = 0; j < basis.size(); ++j) pt += x[j] * basis[j];
    out.push_back(detail::make_chamber(d, M, S, reduced, basis, gdet, pt));
  }
  return out;
}

/// Q ⊆ P for Q ∈ P(L1), P ∈ P(M), L1 ⊆ M (ambient roots positive on P stay
/// positive on Q).
inline bool contained_in(const ParabolicChamber& Q, const ParabolicChamber& P) {
  if (!contains(P.levi, Q.levi)) return false;
  return std::includes(Q.positive_roots.begin(), Q.positive_roots.end(), P.positive_roots.begin(),
                       P.positive_roots.end());
}

/// The chamber of P^S(M) containing the projection of P's chamber (P ∩ S).
inline ParabolicChamber intersect_with(const RootDatum& d, const ParabolicChamber& P, const Levi& S) {
  for (auto& C : parabolics(d, P.levi, S)) {
    bool ok = true;
    for (int i : C.positive_roots)
      if (!std::binary_search(P.positive_roots.begin(), P.positive_roots.end(), i)) ok = false;
    if (ok) return C;
  }
  throw Error(ErrorKind::InternalInconsistency, "no chamber of P^S(M) under P");
}

/// θ_P(λ) = product / volume, with product = ∏_{β ∈ Δ_P} λ(β̌) and volume
/// = vol(a_M^S / ZΔ̌_P) in the measure induced by the inner product.
struct ThetaValue {
  Rational product = 1;
  Rational lattice_det = 1;  // |det| of Δ̌_P in the chamber's basis coordinates
  Rational gram_det = 1;
  QuadConst volume() const { return QuadConst::from_square(lattice_det * lattice_det * gram_det); }
  double value() const { return product.get_d() / volume().value(); }
};

inline Rational simple_lattice_det(const ParabolicChamber& P) {
  if (!P.proper()) return 1;
  std::vector<RatVec> cols;
  for (int i : P.simple) {
    auto c = coordinates_in(P.basis, P.reduced[i].coroot);
    if (!c) throw Error(ErrorKind::InternalInconsistency, "coroot outside a_M^S");
    cols.push_back(*c);
  }
  return abs(det(RatMat::from_rows(cols, P.basis.size())));
}

inline ThetaValue theta(const ParabolicChamber& P, const RatVec& lambda) {
  ThetaValue t;
  t.gram_det = P.gram_det;
  if (!P.proper()) return t;
  for (int i : P.simple) t.product *= dot(lambda, P.reduced[i].coroot);
  t.lattice_det = simple_lattice_det(P);
  return t;
}

/// d_{L1}^{top}(L, S): the absolute determinant of a_L^top ⊕ a_S^top → a_L1^top.
inline QuadConst d_constant(const RootDatum& d, const Levi& L1, const Levi& L, const Levi& S,
                            const std::optional<Levi>& top_opt = {}) {
  Levi top = top_opt ? *top_opt : whole_group(d);
  if (!contains(L, L1) || !contains(S, L1)) throw Error(ErrorKind::NotComparable, "L1 must lie in both L and S");
  if (!contains(top, L) || !contains(top, S)) throw Error(ErrorKind::NotComparable, "L and S must lie in the top Levi");
  auto bL = relative_basis(d, L, top);
  auto bS = relative_basis(d, S, top);
  auto b1 = relative_basis(d, L1, top);
  if (bL.size() + bS.size() != b1.size()) return QuadConst::zero();
  std::vector<RatVec> both = bL;
  both.insert(both.end(), bS.begin(), bS.end());
  Rational num = det(gram_of(both, d.gram));
  if (sgn(num) == 0) return QuadConst::zero();
  Rational gl = bL.empty() ? Rational(1) : det(gram_of(bL, d.gram));
  Rational gs = bS.empty() ? Rational(1) : det(gram_of(bS, d.gram));
  return QuadConst::from_square(num / (gl * gs));
}

/// Checks the transitivity identity for d-constants over every chain
/// M1 ⊆ M, M1 ⊆ S1 ⊆ G1.
inline VerificationReport trand_check(const RootDatum& d) {
  VerificationReport rep;
  auto levis = enumerate_levis(d);
  const Levi G = whole_group(d);
  const std::size_t n = levis.size();
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, QuadConst> cache;
  auto dc = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t top) {
    auto key = std::make_tuple(a, b, c, top);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    QuadConst v = d_constant(d, levis[a], levis[b], levis[c], levis[top]);
    cache.emplace(key, v);
    return v;
  };
  std::size_t g_idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (levis[i] == G) g_idx = i;
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m = 0; m < n; ++m) {
      if (!contains(levis[m], levis[m1])) continue;
      for (std::size_t s1 = 0; s1 < n; ++s1) {
        if (!contains(levis[s1], levis[m1])) continue;
        for (std::size_t g1 = 0; g1 < n; ++g1) {
          if (!contains(levis[g1], levis[s1])) continue;
          QuadConst lhs = dc(m1, m, g1, g_idx);
          QuadConst rhs = QuadConst::zero();
          int nonzero = 0;
          for (std::size_t s = 0; s < n; ++s) {
            if (!contains(levis[s], levis[m]) || !contains(levis[s], levis[s1])) continue;
            QuadConst term = dc(m1, m, s1, s) * dc(s1, s, g1, g_idx);
            if (!term.is_zero()) {
              ++nonzero;
              rhs = term;
            }
          }
          bool pass = nonzero <= 1 && lhs == rhs;
          std::string inputs = d.label + ":" + levis[m1].label + "," + levis[m].label + "," + levis[s1].label + "," +
                               levis[g1].label;
          nlohmann::json detail{{"M1", levis[m1].label}, {"M", levis[m].label}, {"S1", levis[s1].label},
                                 {"G1", levis[g1].label}, {"lhs_sq", lhs.square.get_str()},
                                 {"rhs_sq", rhs.square.get_str()}, {"nonzero_terms", nonzero}};
          rep.add(make_check("trand/" + d.label + "/" + levis[m1].label + "/" + levis[m].label + "/" +
                                 levis[s1].label + "/" + levis[g1].label,
                             "d-constant transitivity", inputs, pass, std::abs(lhs.value() - rhs.value()), detail));
        }
      }
    }
  return rep;
}

/// Coset representatives of minimal length: W/W_M (side = Left) keyed by
/// w|a_M, or W_L\W (side = Right) keyed by w^{-1}|a_L. Indices into d.weyl.
enum class CosetSide { Left, Right };

inline std::vector<int> weyl_cosets(const RootDatum& d, const Levi& L, CosetSide side = CosetSide::Left) {
  std::set<std::vector<RatVec>> seen;
  std::vector<int> reps;
  for (std::size_t i = 0; i < d.weyl.size(); ++i) {
    const RatMat m = side == CosetSide::Left ? d.weyl[i].matrix : d.weyl[i].dual.transpose();
    std::vector<RatVec> key;
    for (const auto& b : L.basis) key.push_back(m * b);
    if (seen.insert(key).second) reps.push_back(static_cast<int>(i));
  }
  return reps;
}

/// Left coset representatives w ∈ W/W_M with L1 ⊆ wM ⊆ S.
inline std::vector<int> weyl_cosets_between(const RootDatum& d, const Levi& M, const Levi& L1, const Levi& S) {
  std::vector<int> out;
  for (int i : weyl_cosets(d, M, CosetSide::Left)) {
    Levi wM = conjugate(d, d.weyl[i], M);
    if (contains(wM, L1) && contains(S, wM)) out.push_back(i);
  }
  return out;
}

}  // namespace woi
