#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "woi/rational.hpp"

namespace woi {

using Complex = std::complex<double>;

struct DeclaredPole {
  Complex at;
  Complex residue;
};

namespace detail {

inline Complex horner(const std::vector<double>& c, Complex z) {
  Complex s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<double>(i));
  return out;
}

/// Roots of a polynomial (ascending coefficients) by Durand–Kerner.
inline std::vector<Complex> polynomial_roots(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const std::size_t n = c.size() - 1;
  const double lead = c.back();
  for (auto& x : c) x /= lead;
  std::vector<Complex> z(n);
  const Complex seed(0.4, 0.9);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i));
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      Complex step = horner(c, z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Newton polish.
  auto dc = derivative(c);
  for (auto& r : z)
    for (int k = 0; k < 3; ++k) {
      Complex d = horner(dc, r);
      if (std::abs(d) > 0) r -= horner(c, r) / d;
    }
  return z;
}

}  // namespace detail

/// Scalar meromorphic density z ↦ m'(z) attached to one reduced root.
class Density {
 public:
  enum class Kind { Constant, Pole, Rational, ModelPlancherel, ModelNormalizing };

  static Density constant(const Rational& k) {
    Density d(Kind::Constant);
    d.k_ = k;
    return d;
  }
  /// −n/z
  static Density pole(const Rational& n) {
    Density d(Kind::Pole);
    d.n_ = n;
    return d;
  }
  /// −n/z + z/(z² − c): the simple pole at 0 plus a part analytic near iR.
  static Density model_plancherel(const Rational& n, const Rational& c) {
    if (sgn(c) <= 0) throw Error(ErrorKind::InvalidArgument, "model_plancherel needs c > 0");
    Density d(Kind::ModelPlancherel);
    d.n_ = n;
    d.c_ = c;
    return d;
  }
  /// −n/z + 1/(z + a): a normalising-factor style model with an off-axis pole at −a.
  static Density model_normalizing(const Rational& n, const Rational& a) {
    if (sgn(a) <= 0) throw Error(ErrorKind::InvalidArgument, "model_normalizing needs a > 0");
    Density d(Kind::ModelNormalizing);
    d.n_ = n;
    d.c_ = a;
    return d;
  }
  /// p(z)/q(z) with ascending coefficient lists.
  static Density rational(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    Density d(Kind::Rational);
    d.p_ = p;
    d.q_ = q;
    bool nonzero = false;
    for (const auto& x : q) nonzero = nonzero || sgn(x) != 0;
    if (!nonzero) throw Error(ErrorKind::InvalidArgument, "rational density with zero denominator");
    return d;
  }

  Kind kind() const { return kind_; }
  const Rational& n() const { return n_; }
  bool reflected() const { return reflected_; }

  /// The density z ↦ m'(−z), used for contragredient data.
  Density reflect() const {
    Density d = *this;
    d.reflected_ = !reflected_;
    return d;
  }

  Complex operator()(Complex z) const {
    if (reflected_) z = -z;
    // The pole term is dropped for n = 0 so that z = 0 stays a regular point.
    auto pole_part = [&] { return sgn(n_) == 0 ? Complex(0) : -n_.get_d() / z; };
    switch (kind_) {
      case Kind::Constant: return k_.get_d();
      case Kind::Pole: return pole_part();
      case Kind::ModelPlancherel: return pole_part() + z / (z * z - c_.get_d());
      case Kind::ModelNormalizing: return pole_part() + 1.0 / (z + c_.get_d());
      case Kind::Rational: return detail::horner(dbl(p_), z) / detail::horner(dbl(q_), z);
    }
    return 0;
  }

  /// All poles with residues (in the variable z of this density).
  std::vector<DeclaredPole> all_poles() const {
    std::vector<DeclaredPole> out;
    switch (kind_) {
      case Kind::Constant: break;
      case Kind::Pole:
        if (sgn(n_) != 0) out.push_back({0.0, -n_.get_d()});
        break;
      case Kind::ModelPlancherel: {
        if (sgn(n_) != 0) out.push_back({0.0, -n_.get_d()});
        double r = std::sqrt(c_.get_d());
        out.push_back({r, 0.5});
        out.push_back({-r, 0.5});
        break;
      }
      case Kind::ModelNormalizing:
        if (sgn(n_) != 0) out.push_back({0.0, -n_.get_d()});
        out.push_back({-c_.get_d(), 1.0});
        break;
      case Kind::Rational: {
        auto q = dbl(q_);
        auto dq = detail::derivative(q);
        for (const auto& r : detail::polynomial_roots(q)) {
          Complex num = detail::horner(dbl(p_), r);
          if (std::abs(num) < 1e-13) continue;
          out.push_back({r, num / detail::horner(dq, r)});
        }
        break;
      }
    }
    if (reflected_)
      for (auto& p : out) {
        p.at = -p.at;
        p.residue = -p.residue;
      }
    return out;
  }

  /// Poles on the imaginary axis.
  std::vector<DeclaredPole> axis_poles() const {
    std::vector<DeclaredPole> out;
    for (const auto& p : all_poles())
      if (std::abs(p.at.real()) < 1e-9) out.push_back({Complex(0.0, p.at.imag()), p.residue});
    return out;
  }

  /// Smallest |Re| over poles off the imaginary axis (infinity if none).
  double off_axis_distance() const {
    double best = HUGE_VAL;
    for (const auto& p : all_poles())
      if (std::abs(p.at.real()) >= 1e-9) best = std::min(best, std::abs(p.at.real()));
    return best;
  }

  /// Residue at 0 (0 if regular there).
  Complex residue_at_zero() const {
    for (const auto& p : axis_poles())
      if (std::abs(p.at) < 1e-9) return p.residue;
    return 0.0;
  }

  /// ∫_z^{z+u} m'(s) ds along the straight segment (Gauss–Legendre, 20 nodes).
  Complex integral(Complex z, Complex u) const {
    static const std::array<double, 10> x{0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                                          0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                                          0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                                          0.9931285991850949};
    static const std::array<double, 10> w{0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                                          0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                                          0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                                          0.0176140071391521};
    Complex mid = z + 0.5 * u, half = 0.5 * u, s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * ((*this)(mid + x[i] * half) + (*this)(mid - x[i] * half));
    return s * half;
  }

  std::string describe() const {
    std::string s;
    switch (kind_) {
      case Kind::Constant: s = "constant(" + k_.get_str() + ")"; break;
      case Kind::Pole: s = "pole(" + n_.get_str() + ")"; break;
      case Kind::ModelPlancherel: s = "model_plancherel(" + c_.get_str() + ",n=" + n_.get_str() + ")"; break;
      case Kind::ModelNormalizing: s = "model_normalizing(" + c_.get_str() + ",n=" + n_.get_str() + ")"; break;
      case Kind::Rational: {
        s = "rational([";
        for (std::size_t i = 0; i < p_.size(); ++i) s += (i ? "," : "") + p_[i].get_str();
        s += "],[";
        for (std::size_t i = 0; i < q_.size(); ++i) s += (i ? "," : "") + q_[i].get_str();
        s += "])";
        break;
      }
    }
    return reflected_ ? "reflected:" + s : s;
  }

 private:
  explicit Density(Kind k) : kind_(k) {}
  static std::vector<double> dbl(const std::vector<Rational>& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.get_d());
    return out;
  }

  Kind kind_;
  Rational n_ = 0, c_ = 0, k_ = 0;
  std::vector<Rational> p_, q_;
  bool reflected_ = false;
};

/// Densities m'_β keyed by the restricted root β (a covector), with an
/// optional fallback for roots not listed.
class ScalarRootFns {
 public:
  ScalarRootFns() = default;
  explicit ScalarRootFns(Density fallback) : fallback_(std::move(fallback)) {}

  void set(const RatVec& beta, Density f) { fns_.insert_or_assign(beta, std::move(f)); }

  const Density& at(const RatVec& beta) const {
    auto it = fns_.find(beta);
    if (it != fns_.end()) return it->second;
    if (fallback_) return *fallback_;
    throw Error(ErrorKind::IncompleteInput, "no density for root " + beta.str());
  }
  bool has(const RatVec& beta) const { return fns_.count(beta) || fallback_; }
  const std::map<RatVec, Density>& entries() const { return fns_; }

  /// Contragredient data: every density evaluated at −z.
  ScalarRootFns reflect() const {
    ScalarRootFns out;
    if (fallback_) out.fallback_ = fallback_->reflect();
    for (const auto& [k, f] : fns_) out.fns_.insert_or_assign(k, f.reflect());
    return out;
  }

 private:
  std::map<RatVec, Density> fns_;
  std::optional<Density> fallback_;
};

/// Parse a symbolic template such as "pole(1)", "constant(0)",
/// "model_plancherel(1)", "model_normalizing(2)" or
/// "rational([1,0],[0,1])". `n` supplies the pole order for templates that
/// take it implicitly; an explicit second argument overrides it.
inline Density parse_density(const std::string& text, const Rational& n = 1) {
  auto open = text.find('('), close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw Error(ErrorKind::InvalidArgument, "malformed density template: " + text);
  std::string name = text.substr(0, open), body = text.substr(open + 1, close - open - 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if (ch == sep && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else if (ch != ' ') {
        cur += ch;
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
  };
  auto args = split(body, ',');
  auto list = [&](const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw Error(ErrorKind::InvalidArgument, "expected coefficient list: " + s);
    std::vector<Rational> out;
    for (const auto& x : split(s.substr(1, s.size() - 2), ',')) out.push_back(parse_rational(x));
    return out;
  };
  if (name == "pole" && args.size() == 1) return Density::pole(parse_rational(args[0]));
  if (name == "constant" && args.size() == 1) return Density::constant(parse_rational(args[0]));
  if (name == "model_plancherel" && (args.size() == 1 || args.size() == 2))
    return Density::model_plancherel(args.size() == 2 ? parse_rational(args[1]) : n, parse_rational(args[0]));
  if (name == "model_normalizing" && (args.size() == 1 || args.size() == 2))
    return Density::model_normalizing(args.size() == 2 ? parse_rational(args[1]) : n, parse_rational(args[0]));
  if (name == "rational" && args.size() == 2) return Density::rational(list(args[0]), list(args[1]));
  throw Error(ErrorKind::InvalidArgument, "unknown density template: " + text);
}

}  // namespace woi
