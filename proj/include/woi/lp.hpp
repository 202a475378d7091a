#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "woi/rational.hpp"

namespace woi::lp {

/// Phase-one simplex on A x = b, x >= 0 with Bland's rule. Exact, so it
/// always terminates; returns a feasible x or nullopt.
inline std::optional<RatVec> feasible_standard(std::vector<RatVec> A, std::vector<Rational> b, std::size_t n) {
  const std::size_t m = A.size();
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(b[i]) < 0) {
      A[i] = -A[i];
      b[i] = -b[i];
    }
  // Tableau columns: n originals, m artificials, rhs.
  const std::size_t cols = n + m + 1;
  RatMat T(m + 1, cols);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T(i, j) = A[i][j];
    T(i, n + i) = 1;
    T(i, cols - 1) = b[i];
    basis[i] = n + i;
  }
  // Objective row: minimize sum of artificials, expressed in nonbasic terms.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (j < n || j == cols - 1) T(m, j) -= T(i, j);

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (sgn(T(m, j)) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(T(i, enter)) <= 0) continue;
      Rational ratio = T(i, cols - 1) / T(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    Rational piv = T(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) T(leave, j) /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(T(i, enter)) == 0) continue;
      Rational f = T(i, enter);
      for (std::size_t j = 0; j < cols; ++j) T(i, j) -= f * T(leave, j);
    }
    basis[leave] = enter;
  }
  if (sgn(T(m, cols - 1)) != 0) return std::nullopt;
  RatVec x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T(i, cols - 1);
  return x;
}

/// A point x (free variables) with rows[i]·x >= rhs[i] for all i, if any.
inline std::optional<RatVec> feasible_point(const std::vector<RatVec>& rows, const std::vector<Rational>& rhs,
                                            std::size_t dim) {
  if (rows.empty()) return RatVec(dim);
  // x = u - v, rows·(u - v) - s = rhs.
  const std::size_t n = 2 * dim + rows.size();
  std::vector<RatVec> A;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RatVec a(n);
    for (std::size_t j = 0; j < dim; ++j) {
      a[j] = rows[i][j];
      a[dim + j] = -rows[i][j];
    }
    a[2 * dim + i] = -1;
    A.push_back(a);
  }
  auto sol = feasible_standard(A, rhs, n);
  if (!sol) return std::nullopt;
  RatVec x(dim);
  for (std::size_t j = 0; j < dim; ++j) x[j] = (*sol)[j] - (*sol)[dim + j];
  return x;
}

/// Whether v is a nonnegative combination of gens.
inline bool in_cone(const std::vector<RatVec>& gens, const RatVec& v) {
  if (v.is_zero()) return true;
  if (gens.empty()) return false;
  const std::size_t dim = v.size();
  std::vector<RatVec> A(dim, RatVec(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) A[i][j] = gens[j][i];
  return feasible_standard(A, v.coords(), gens.size()).has_value();
}

/// Interior points of the chambers of a central hyperplane arrangement in
/// Q^dim, one per chamber; depth-first over sign choices with '+' first.
inline std::vector<RatVec> arrangement_chambers(const std::vector<RatVec>& normals, std::size_t dim) {
  std::vector<RatVec> out, rows;
  std::vector<Rational> rhs;
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    auto x = feasible_point(rows, rhs, dim);
    if (!x) return;
    if (k == normals.size()) {
      out.push_back(*x);
      return;
    }
    for (int s : {1, -1}) {
      rows.push_back(Rational(s) * normals[k]);
      rhs.push_back(1);
      dfs(k + 1);
      rows.pop_back();
      rhs.pop_back();
    }
  };
  dfs(0);
  return out;
}

}  // namespace woi::lp
