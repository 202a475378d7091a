#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "woi/error.hpp"
#include "woi/rational.hpp"

namespace woi {

/// φ(z) = p(z)·exp(s·z²) with rational coefficients. For s > 0 it decays
/// like exp(−s·t²) along every vertical line; s = 0 gives a polynomial.
struct TestFunction {
  std::vector<Rational> poly{1};  // ascending
  Rational scale = 1;

  static TestFunction gauss_poly(std::vector<Rational> p, const Rational& s) {
    if (sgn(s) < 0) throw Error(ErrorKind::InvalidArgument, "test function scale must be nonnegative");
    if (p.empty()) p.push_back(0);
    return TestFunction{std::move(p), s};
  }

  std::complex<double> poly_at(std::complex<double> z) const {
    std::complex<double> acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + it->get_d();
    return acc;
  }

  std::complex<double> operator()(std::complex<double> z) const { return poly_at(z) * std::exp(scale.get_d() * z * z); }

  /// Parity of t ↦ φ(it): +1 even, −1 odd, 0 neither.
  int parity_on_axis() const {
    bool even = true, odd = true;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (sgn(poly[k]) == 0) continue;
      if (k % 2) even = false;
      else odd = false;
    }
    return even ? 1 : odd ? -1 : 0;
  }

  /// Half-width of the truncated integration window on a vertical line.
  double truncation() const {
    if (sgn(scale) <= 0) throw Error(ErrorKind::InvalidArgument, "integration needs a positive scale");
    return 8.0 / std::sqrt(scale.get_d());
  }

  std::string describe() const {
    std::string s = "gauss_poly([";
    for (std::size_t k = 0; k < poly.size(); ++k) s += (k ? "," : "") + poly[k].get_str();
    return s + "]," + scale.get_str() + ")";
  }
};

}  // namespace woi
