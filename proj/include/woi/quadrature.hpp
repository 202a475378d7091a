#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "woi/error.hpp"

// Real-line quadrature of complex integrands, including principal values at
// simple poles on the line.

namespace woi::quad {

using Complex = std::complex<double>;
using LineFn = std::function<Complex(double)>;

struct Settings {
  double tolerance = 1e-12;  // relative, per adaptive integration
  unsigned max_depth = 15;
};

inline Complex integrate(const LineFn& f, double a, double b, const Settings& s = {}) {
  if (!(b > a)) return 0.0;
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, s.max_depth, s.tolerance, &err);
}

struct PVResult {
  Complex value = 0;
  double error = 0;                  // |three-point − two-point extrapolation|
  std::vector<Complex> truncated;    // integrals with δ-neighbourhoods removed, per ladder entry
};

struct PVSettings {
  std::vector<double> ladder{1e-1, 1e-2, 1e-3};
  double fail_above = 1e-4;  // NoConvergence when the error estimate exceeds this (relative to 1 + |value|)
  Settings inner;
};

/// Principal value of ∫_{−T}^{T} f(t) dt with simple poles at `poles`. Each
/// pole is excised symmetrically: the folded integrand f(p+u) + f(p−u) is
/// smooth and even in u, so I(δ) = I₀ + c₁δ + c₃δ³ + O(δ⁵), which is solved
/// exactly on the three-point ladder.
inline PVResult principal_value(const LineFn& f, std::vector<double> poles, double T, const PVSettings& s = {}) {
  std::sort(poles.begin(), poles.end());
  for (double p : poles)
    if (std::abs(p) >= T) throw Error(ErrorKind::InvalidArgument, "pole outside the truncation window");
  // Folding radius per pole: half the gap to the neighbours, capped at 1.
  std::vector<double> radius(poles.size());
  for (std::size_t i = 0; i < poles.size(); ++i) {
    double r = std::min(1.0, T - std::abs(poles[i]));
    if (i > 0) r = std::min(r, 0.5 * (poles[i] - poles[i - 1]));
    if (i + 1 < poles.size()) r = std::min(r, 0.5 * (poles[i + 1] - poles[i]));
    if (r <= s.ladder.front()) throw Error(ErrorKind::InvalidArgument, "poles too close for the δ-ladder");
    radius[i] = r;
  }
  Complex regular = 0;
  double left = -T;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    regular += integrate(f, left, poles[i] - radius[i], s.inner);
    left = poles[i] + radius[i];
  }
  regular += integrate(f, left, T, s.inner);

  PVResult out;
  for (double delta : s.ladder) {
    Complex folded = 0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      double p = poles[i];
      folded += integrate([&](double u) { return f(p + u) + f(p - u); }, delta, radius[i], s.inner);
    }
    out.truncated.push_back(regular + folded);
  }
  if (poles.empty()) {
    out.value = regular;
    return out;
  }
  // Solve I(δ) = c0 + c1 δ + c3 δ³ on the ladder (Cramer's rule).
  const auto& d = s.ladder;
  const auto& I = out.truncated;
  auto det3 = [](double a, double b, double c, double e, double f_, double g, double h, double i, double j) {
    return a * (f_ * j - g * i) - b * (e * j - g * h) + c * (e * i - f_ * h);
  };
  double D = det3(1, d[0], d[0] * d[0] * d[0], 1, d[1], d[1] * d[1] * d[1], 1, d[2], d[2] * d[2] * d[2]);
  auto c0 = [&](const std::vector<Complex>& y) {
    auto part = [&](int comp) {
      auto v = [&](int k) { return comp == 0 ? y[k].real() : y[k].imag(); };
      return det3(v(0), d[0], d[0] * d[0] * d[0], v(1), d[1], d[1] * d[1] * d[1], v(2), d[2], d[2] * d[2] * d[2]) / D;
    };
    return Complex(part(0), part(1));
  };
  out.value = c0(I);
  // Two-point linear extrapolation from the finest pair.
  Complex two = I[2] - d[2] * (I[1] - I[2]) / (d[1] - d[2]);
  out.error = std::abs(out.value - two);
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) ||
      out.error > s.fail_above * (1 + std::abs(out.value)))
    throw Error(ErrorKind::NoConvergence, "principal value extrapolation did not settle (estimate " +
                                              std::to_string(out.error) + ")");
  return out;
}

}  // namespace woi::quad
