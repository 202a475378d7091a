#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "woi/rational.hpp"

// Coordinate conventions used throughout:
//   * a root (or any covector on a0) is stored in simple-root coordinates;
//   * a vector H in a0 is stored in fundamental-coweight coordinates, so
//     alpha_i(H) = H[i] and a covector pairs with H by the plain dot product;
//   * `form` is the invariant inner product on a0^* in simple-root
//     coordinates and `gram` = form^{-1} the induced one on a0.

namespace woi {

struct WeylElement {
  RatMat matrix;              // action on a0
  RatMat dual;                // action on covectors, (matrix^{-1})^T
  std::vector<int> word;      // reduced word in simple reflections, applied right to left
  std::vector<int> root_perm;  // root i is sent to root root_perm[i]

  std::size_t length() const { return word.size(); }
  bool is_identity() const { return word.empty(); }
};

struct RootDatum {
  std::string label;
  int rank = 0;
  std::vector<RatVec> roots;    // positives first (by height), then negatives in the same order
  std::vector<RatVec> coroots;  // coweight coordinates
  std::vector<int> simple;      // indices of simple roots (0..rank-1)
  RatMat form;
  RatMat gram;
  std::vector<WeylElement> weyl;  // BFS order: nondecreasing length, identity first
  std::vector<std::vector<int>> mult;  // mult[a][b] = index of weyl[a]·weyl[b]
  std::vector<int> inv;                // inv[a] = index of weyl[a]^{-1}

  int num_positive() const { return static_cast<int>(roots.size() / 2); }
  bool is_positive(int i) const { return i < num_positive(); }
  int negative_of(int i) const { return is_positive(i) ? i + num_positive() : i - num_positive(); }

  int index_of(const RatVec& root) const {
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i] == root) return static_cast<int>(i);
    return -1;
  }

  Rational inner_dual(const RatVec& a, const RatVec& b) const { return dot(form * a, b); }
  Rational inner(const RatVec& x, const RatVec& y) const { return dot(gram * x, y); }

  /// Covector attached to H by the inner product (the "gram dual").
  RatVec dual_of(const RatVec& H) const { return gram * H; }
  /// Vector attached to a covector by the inner product.
  RatVec sharp(const RatVec& lambda) const { return form * lambda; }
};

namespace detail {

inline RatMat factor_form(const std::string& t) {
  auto m = [](std::vector<std::vector<long>> rows) {
    RatMat f(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j) f(i, j) = rows[i][j];
    return f;
  };
  if (t == "A1") return m({{2}});
  if (t == "A2") return m({{2, -1}, {-1, 2}});
  if (t == "A3") return m({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  if (t == "B2") return m({{4, -2}, {-2, 2}});
  if (t == "C2") return m({{2, -2}, {-2, 4}});
  if (t == "G2") return m({{2, -3}, {-3, 6}});
  throw Error(ErrorKind::UnsupportedType, "unknown root system type '" + t + "'");
}

inline std::vector<std::string> split_label(const std::string& label) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else if (label.compare(i, 2, "\xC3\x97") == 0) {  // multiplication sign
      parts.push_back(cur);
      cur.clear();
      ++i;
    } else {
      cur += label[i];
    }
  }
  parts.push_back(cur);
  return parts;
}

inline RatVec coroot_of(const RatMat& form, const RatVec& a) {
  RatVec fa = form * a;
  Rational len = dot(fa, a);
  return (Rational(2) / len) * fa;
}

inline RatMat reflection(const RatVec& root, const RatVec& coroot) {
  std::size_t n = root.size();
  RatMat m = RatMat::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= coroot[i] * root[j];
  return m;
}

inline RatMat dual_reflection(const RatVec& root, const RatVec& coroot) {
  return reflection(root, coroot).transpose();
}

inline bool positive_definite(const RatMat& f) {
  for (std::size_t k = 1; k <= f.rows(); ++k) {
    RatMat sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = f(i, j);
    if (sgn(det(sub)) <= 0) return false;
  }
  return true;
}

inline void enumerate_weyl(RootDatum& d) {
  const std::size_t n = d.rank;
  std::vector<RatMat> gens, dual_gens;
  for (int i : d.simple) {
    gens.push_back(reflection(d.roots[i], d.coroots[i]));
    dual_gens.push_back(dual_reflection(d.roots[i], d.coroots[i]));
  }
  std::map<std::vector<Rational>, bool> seen;
  std::deque<WeylElement> queue;
  WeylElement id{RatMat::identity(n), RatMat::identity(n), {}, {}};
  seen[id.matrix.data()] = true;
  queue.push_back(id);
  while (!queue.empty()) {
    WeylElement g = queue.front();
    queue.pop_front();
    d.weyl.push_back(g);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      WeylElement h;
      h.matrix = gens[s] * g.matrix;
      if (seen.count(h.matrix.data())) continue;
      seen[h.matrix.data()] = true;
      h.dual = dual_gens[s] * g.dual;
      h.word.push_back(static_cast<int>(s));
      h.word.insert(h.word.end(), g.word.begin(), g.word.end());
      queue.push_back(h);
    }
  }
  std::map<std::vector<Rational>, int> index;
  for (std::size_t i = 0; i < d.weyl.size(); ++i) index[d.weyl[i].matrix.data()] = static_cast<int>(i);
  const std::size_t order = d.weyl.size();
  d.mult.assign(order, std::vector<int>(order, -1));
  d.inv.assign(order, -1);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      int c = index.at((d.weyl[a].matrix * d.weyl[b].matrix).data());
      d.mult[a][b] = c;
      if (c == 0) d.inv[a] = static_cast<int>(b);
    }
  for (auto& w : d.weyl) {
    w.root_perm.resize(d.roots.size());
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      int j = d.index_of(w.dual * d.roots[i]);
      if (j < 0) throw Error(ErrorKind::InternalInconsistency, "Weyl element does not permute roots");
      w.root_perm[i] = j;
    }
  }
}

}  // namespace detail

/// Root datum for a label such as "A2", "B2" or "A1xA1". An optional
/// override replaces the default inner product on a0^* (simple-root
/// coordinates); it must be positive definite and Weyl invariant.
inline RootDatum build_root_system(const std::string& label, const std::optional<RatMat>& form_override = {}) {
  auto parts = detail::split_label(label);
  std::vector<RatMat> blocks;
  std::size_t n = 0;
  for (const auto& p : parts) {
    blocks.push_back(detail::factor_form(p));
    n += blocks.back().rows();
  }
  if (n == 0 || n > 4) throw Error(ErrorKind::UnsupportedType, "total rank must be between 1 and 4: " + label);
  RatMat form(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.rows(); ++j) form(off + i, off + j) = b(i, j);
    off += b.rows();
  }

  RootDatum d;
  d.label = label;
  d.rank = static_cast<int>(n);

  // Close the simple roots under simple reflections.
  std::vector<RatVec> simple;
  for (std::size_t i = 0; i < n; ++i) simple.push_back(RatVec::unit(n, i));
  std::vector<RatMat> refl;
  for (const auto& a : simple) refl.push_back(detail::dual_reflection(a, detail::coroot_of(form, a)));
  std::vector<RatVec> all = simple;
  for (std::size_t k = 0; k < all.size(); ++k)
    for (const auto& s : refl) {
      RatVec b = s * all[k];
      if (std::find(all.begin(), all.end(), b) == all.end()) all.push_back(b);
    }
  std::vector<RatVec> pos;
  for (const auto& a : all)
    if (std::all_of(a.coords().begin(), a.coords().end(), [](const Rational& x) { return sgn(x) >= 0; }))
      pos.push_back(a);
  auto height = [](const RatVec& a) {
    Rational h = 0;
    for (const auto& x : a.coords()) h += x;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const RatVec& a, const RatVec& b) {
    Rational ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return b < a;
  });
  if (pos.size() * 2 != all.size()) throw Error(ErrorKind::InternalInconsistency, "root closure is not symmetric");
  d.roots = pos;
  for (const auto& a : pos) d.roots.push_back(-a);
  for (const auto& a : d.roots) d.coroots.push_back(detail::coroot_of(form, a));
  for (std::size_t i = 0; i < n; ++i) d.simple.push_back(static_cast<int>(i));

  if (form_override) {
    const RatMat& f = *form_override;
    if (f.rows() != n || f.cols() != n) throw Error(ErrorKind::DimensionError, "inner product override has wrong size");
    if (!f.is_symmetric() || !detail::positive_definite(f))
      throw Error(ErrorKind::InvalidArgument, "inner product override is not symmetric positive definite");
    for (const auto& s : refl)
      if (!(s.transpose() * f * s == f))
        throw Error(ErrorKind::InvalidArgument, "inner product override is not Weyl invariant");
    form = f;
  }
  d.form = form;
  d.gram = inverse(form);
  detail::enumerate_weyl(d);
  return d;
}

inline const std::vector<WeylElement>& weyl_group(const RootDatum& d) { return d.weyl; }

inline RatVec act(const WeylElement& w, const RatVec& v) {
  if (w.matrix.cols() != v.size()) throw Error(ErrorKind::DimensionError, "act: dimension mismatch");
  return w.matrix * v;
}

inline RatVec act_dual(const WeylElement& w, const RatVec& lambda) {
  if (w.dual.cols() != lambda.size()) throw Error(ErrorKind::DimensionError, "act_dual: dimension mismatch");
  return w.dual * lambda;
}

/// Index of w in d.weyl (by matrix).
inline int weyl_index(const RootDatum& d, const RatMat& m) {
  for (std::size_t i = 0; i < d.weyl.size(); ++i)
    if (d.weyl[i].matrix == m) return static_cast<int>(i);
  return -1;
}


/// Element given by a word in simple reflections (applied right to left).
inline const WeylElement& weyl_from_word(const RootDatum& d, const std::vector<int>& word) {
  RatMat m = RatMat::identity(d.rank);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= d.rank) throw Error(ErrorKind::InvalidArgument, "simple reflection index out of range");
    m = detail::reflection(d.roots[*it], d.coroots[*it]) * m;
  }
  return d.weyl[weyl_index(d, m)];
}

inline int weyl_word_index(const RootDatum& d, const std::vector<int>& word) {
  return weyl_index(d, weyl_from_word(d, word).matrix);
}

/// Reflection in an arbitrary root, as a group element.
inline int reflection_index(const RootDatum& d, int root) {
  return weyl_index(d, detail::reflection(d.roots[root], d.coroots[root]));
}

inline const WeylElement& weyl_reflection(const RootDatum& d, int root) { return d.weyl[reflection_index(d, root)]; }

}  // namespace woi
