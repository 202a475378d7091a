#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "woi/error.hpp"

namespace woi {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parse "p", "p/q" or a decimal like "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw Error(ErrorKind::InvalidArgument, "not a rational: " + text);
    q.canonicalize();
    if (q.get_den() == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator: " + text);
    return q;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac = text.size() - dot - 1;
  mpz_class num;
  if (num.set_str(digits, 10) != 0) throw Error(ErrorKind::InvalidArgument, "not a decimal: " + text);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Dense vector of exact rationals.
class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t n) : c_(n, Rational(0)) {}
  RatVec(std::initializer_list<Rational> xs) : c_(xs) {}
  explicit RatVec(std::vector<Rational> xs) : c_(std::move(xs)) {}

  static RatVec unit(std::size_t n, std::size_t i) {
    RatVec v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return c_.size(); }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

  RatVec& operator+=(const RatVec& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  RatVec& operator-=(const RatVec& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  RatVec& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
  friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
  friend RatVec operator-(RatVec a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend RatVec operator*(const Rational& s, RatVec a) { return a *= s; }
  friend bool operator==(const RatVec& a, const RatVec& b) { return a.c_ == b.c_; }
  friend bool operator<(const RatVec& a, const RatVec& b) { return a.c_ < b.c_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].get_str();
    }
    return s + ")";
  }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    for (const auto& x : c_) out.push_back(x.get_d());
    return out;
  }

 private:
  void check(const RatVec& o) const {
    if (o.size() != size()) throw Error(ErrorKind::DimensionError, "vector length mismatch");
  }
  std::vector<Rational> c_;
};

inline Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionError, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Dense row-major rational matrix.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RatMat from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
    RatMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::DimensionError, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static RatMat from_columns(const std::vector<RatVec>& cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatVec row(std::size_t i) const {
    RatVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  RatVec col(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  RatMat transpose() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RatMat operator*(const RatMat& a, const RatMat& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionError, "matrix product shape mismatch");
    RatMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(i, k)) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend RatVec operator*(const RatMat& a, const RatVec& v) {
    if (a.cols_ != v.size()) throw Error(ErrorKind::DimensionError, "matrix-vector shape mismatch");
    RatVec out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }
  friend RatMat operator-(const RatMat& a, const RatMat& b) {
    RatMat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator<(const RatMat& a, const RatMat& b) { return a.a_ < b.a_; }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  const std::vector<Rational>& data() const { return a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const std::vector<RatVec>& vs) {
  if (vs.empty()) return 0;
  RatMat m = RatMat::from_rows(vs, vs.front().size());
  return rref(m).size();
}

/// Basis of {x : r·x = 0 for every row r}; canonical (RREF-derived).
inline std::vector<RatVec> nullspace(const std::vector<RatVec>& rows, std::size_t n) {
  std::vector<RatVec> basis;
  if (rows.empty()) {
    for (std::size_t i = 0; i < n; ++i) basis.push_back(RatVec::unit(n, i));
    return basis;
  }
  RatMat m = RatMat::from_rows(rows, n);
  auto piv = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
    basis.push_back(v);
  }
  return basis;
}

inline Rational det(RatMat m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionError, "det of non-square matrix");
  std::size_t n = m.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

inline RatMat inverse(const RatMat& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::DimensionError, "inverse of non-square matrix");
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorKind::InvalidArgument, "singular matrix");
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Coordinates c with Σ c_j basis[j] = v, or nullopt when v is outside the span.
inline std::optional<RatVec> coordinates_in(const std::vector<RatVec>& basis, const RatVec& v) {
  std::size_t k = basis.size(), n = v.size();
  RatMat aug(n, k + 1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
  for (std::size_t i = 0; i < n; ++i) aug(i, k) = v[i];
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  if (piv.size() != k) throw Error(ErrorKind::InvalidArgument, "basis vectors are dependent");
  RatVec c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = aug(i, k);
  return c;
}

/// Gram matrix Bᵀ g B for vectors B and inner product g.
inline RatMat gram_of(const std::vector<RatVec>& vs, const RatMat& g) {
  RatMat out(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    RatVec gi = g * vs[i];
    for (std::size_t j = 0; j < vs.size(); ++j) out(i, j) = dot(gi, vs[j]);
  }
  return out;
}

/// Nonnegative real whose square is rational; sign 0 encodes the value zero.
struct QuadConst {
  Rational square = 0;
  int sign = 0;

  static QuadConst zero() { return {}; }
  static QuadConst one() { return {Rational(1), 1}; }
  static QuadConst from_square(const Rational& sq) {
    if (sgn(sq) < 0) throw Error(ErrorKind::InvalidArgument, "negative square");
    return {sq, sgn(sq) == 0 ? 0 : 1};
  }
  bool is_zero() const { return sign == 0; }
  double value() const { return sign == 0 ? 0.0 : std::sqrt(square.get_d()); }

  /// Exact rational value when the square is a perfect rational square.
  std::optional<Rational> exact() const {
    if (sign == 0) return Rational(0);
    mpz_class n = square.get_num(), d = square.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }

  std::string str() const {
    if (auto e = exact()) return e->get_str();
    return "sqrt(" + square.get_str() + ")";
  }

  friend QuadConst operator*(const QuadConst& a, const QuadConst& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.square * b.square, 1};
  }
  friend bool operator==(const QuadConst& a, const QuadConst& b) {
    return a.sign == b.sign && a.square == b.square;
  }
};

/// Real number coeff·√radicand with radicand > 0; the shape of family limits.
struct SurdValue {
  Rational coeff = 0;
  Rational radicand = 1;

  double value() const { return coeff.get_d() * std::sqrt(radicand.get_d()); }

  /// Comparable with a QuadConst only when nonnegative.
  std::optional<QuadConst> as_quad() const {
    if (sgn(coeff) < 0) return std::nullopt;
    return QuadConst::from_square(coeff * coeff * radicand);
  }

  std::string str() const {
    if (sgn(coeff) == 0) return "0";
    auto q = QuadConst::from_square(radicand);
    if (auto e = q.exact()) return Rational(coeff * *e).get_str();
    return coeff.get_str() + "*sqrt(" + radicand.get_str() + ")";
  }
};

}  // namespace woi
