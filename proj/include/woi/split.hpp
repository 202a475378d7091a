#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "woi/density.hpp"
#include "woi/gm_family.hpp"

namespace woi {

using ComplexVec = std::vector<Complex>;

inline Complex pair(const ComplexVec& lambda, const RatVec& H) {
  Complex s = 0;
  for (std::size_t i = 0; i < H.size(); ++i) s += lambda[i] * H[i].get_d();
  return s;
}

inline ComplexVec to_complex(const RatVec& v) {
  ComplexVec out;
  for (const auto& x : v.coords()) out.emplace_back(x.get_d(), 0.0);
  return out;
}

/// One summand of the splitting formula: a basis F with its volume factor.
struct SplitTerm {
  QuadConst volume;
  std::vector<int> roots;  // indices into SplitExpansion::roots
};

/// The bases F ⊆ Σ^r_{Q̄1} (within S) whose projections to a_M^S form a
/// basis, precomputed so that the formula can be evaluated repeatedly.
struct SplitExpansion {
  Levi levi;     // M
  Levi ambient;  // S
  std::vector<RestrictedRoot> roots;
  std::vector<SplitTerm> terms;
};

/// Enumerate the splitting formula terms for m_M^S(·, P ∩ S) relative to
/// Q1 ∈ P(L1) with Q1 ⊆ P.
inline SplitExpansion split_terms(const RootDatum& d, const Levi& M, const ParabolicChamber& P,
                                  const ParabolicChamber& Q1, const std::optional<Levi>& S_opt = {}) {
  Levi S = S_opt ? *S_opt : whole_group(d);
  if (!(P.levi == M)) throw Error(ErrorKind::InvalidArgument, "P is not a parabolic of M");
  if (!contains(S, M)) throw Error(ErrorKind::NotComparable, "M is not contained in S");
  if (!contained_in(Q1, P)) throw Error(ErrorKind::NotComparable, "Q1 is not contained in P");
  SplitExpansion e{M, S, {}, {}};
  for (std::size_t i = 0; i < Q1.reduced.size(); ++i) {
    const auto& r = Q1.reduced[i];
    if (Q1.sign[i] > 0 || !S.has_root(r.sources.front())) continue;
    e.roots.push_back(r);
  }
  auto basis = relative_basis(d, M, S);
  const std::size_t k = basis.size();
  std::vector<RatVec> proj;
  for (const auto& r : e.roots) proj.push_back(M.proj * r.coroot);
  std::vector<int> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == k) {
      std::vector<RatVec> vecs;
      for (int c : chosen) vecs.push_back(proj[c]);
      Rational g = k == 0 ? Rational(1) : det(gram_of(vecs, d.gram));
      if (sgn(g) != 0) e.terms.push_back({QuadConst::from_square(g), chosen});
      return;
    }
    for (std::size_t i = start; i < e.roots.size(); ++i) {
      chosen.push_back(static_cast<int>(i));
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return e;
}

inline Complex evaluate(const SplitExpansion& e, const ScalarRootFns& fns, const ComplexVec& lambda) {
  std::vector<char> used(e.roots.size(), 0);
  for (const auto& t : e.terms)
    for (int r : t.roots) used[r] = 1;
  std::vector<Complex> vals(e.roots.size());
  for (std::size_t i = 0; i < e.roots.size(); ++i) {
    if (!used[i]) continue;  // roots outside every basis never enter the formula
    const Density& f = fns.at(e.roots[i].form);
    Complex z = pair(lambda, e.roots[i].coroot);
    for (const auto& p : f.all_poles())
      if (std::abs(z - p.at) < 1e-12)
        throw Error(ErrorKind::PoleHit, "argument on a pole of the density for root " + e.roots[i].form.str());
    vals[i] = f(z);
  }
  Complex total = 0;
  for (const auto& t : e.terms) {
    Complex prod = t.volume.value();
    for (int r : t.roots) prod *= vals[r];
    total += prod;
  }
  return total;
}

/// m_M^S(λ, P ∩ S) by the splitting formula.
inline Complex split_formula(const RootDatum& d, const ScalarRootFns& fns, const Levi& M, const ParabolicChamber& P,
                             const ParabolicChamber& Q1, const ComplexVec& lambda,
                             const std::optional<Levi>& S = {}) {
  return evaluate(split_terms(d, M, P, Q1, S), fns, lambda);
}

/// First Q ∈ P(L1) contained in P.
inline ParabolicChamber chamber_below(const RootDatum& d, const Levi& L1, const ParabolicChamber& P) {
  for (auto& Q : parabolics(d, L1))
    if (contained_in(Q, P)) return Q;
  throw Error(ErrorKind::NotComparable, "no parabolic of L1 inside P");
}

/// The (G,M)-family induced by the densities, normalised at Q1:
///   c_{P'}(Λ) = ∏_{β ∈ Σ^r_{Q'} ∩ Σ^r_{Q̄1}} exp ∫_{λ(β̌)}^{(λ+Λ)(β̌)} m'_β,
/// with Q' ⊆ P' any chamber of L1; its limit is computed numerically as the
/// constant Laurent coefficient along t ↦ tΛ0, averaging over a circle of
/// radius `radius` in the complex t-plane.
inline Complex induced_family_limit(const RootDatum& d, const ScalarRootFns& fns, const Levi& M,
                                    const ParabolicChamber& Q1, const ComplexVec& lambda, const RatVec& direction,
                                    double radius, int nodes = 64) {
  auto chambers = parabolics(d, M);
  auto small = parabolics(d, Q1.levi);
  struct Member {
    std::vector<int> roots;  // indices into Q1.reduced
    double inv_theta;        // 1/θ_{P'}(Λ0)
  };
  std::vector<Member> members;
  for (const auto& P : chambers) {
    const ParabolicChamber* Q = nullptr;
    for (const auto& c : small)
      if (contained_in(c, P)) {
        Q = &c;
        break;
      }
    if (!Q) throw Error(ErrorKind::InternalInconsistency, "no chamber of L1 below P'");
    Member m;
    for (std::size_t i = 0; i < Q1.reduced.size(); ++i) {
      int j = find_restricted(Q->reduced, Q1.reduced[i].form);
      if (Q1.sign[i] < 0 && Q->sign[j] > 0) m.roots.push_back(static_cast<int>(i));
    }
    m.inv_theta = P.proper() ? 1.0 / theta(P, direction).value() : 1.0;
    members.push_back(m);
  }
  const std::size_t k = chambers.front().basis.size();
  Complex acc = 0;
  for (int j = 0; j < nodes; ++j) {
    Complex t = std::polar(radius, 2.0 * M_PI * (j + 0.5) / nodes);
    Complex tk = std::pow(t, static_cast<double>(k));
    Complex sum = 0;
    for (const auto& m : members) {
      Complex logc = 0;
      for (int r : m.roots) {
        const auto& beta = Q1.reduced[r];
        Complex z = pair(lambda, beta.coroot);
        Complex u = t * dot(direction, beta.coroot).get_d();
        logc += fns.at(beta.form).integral(z, u);
      }
      sum += std::exp(logc) * m.inv_theta / tk;
    }
    acc += sum;
  }
  return acc / static_cast<double>(nodes);
}

}  // namespace woi
