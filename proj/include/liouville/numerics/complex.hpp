#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "liouville/numerics/errors.hpp"

namespace liouville {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline Complex require_finite(Complex z, const char* where) {
  if (!is_finite(z)) throw DomainError(std::string(where) + ": non-finite result");
  return z;
}

// Relative distance |a-b| / max(|a|,|b|,floor).
inline double rel_diff(Complex a, Complex b, double floor = 1e-300) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / scale;
}

// A complex number held as its logarithm, with an exact-zero flag. Products
// and quotients of special functions are accumulated in this form and
// exponentiated once.
struct LogValue {
  Complex log{0.0, 0.0};
  bool zero = false;

  static LogValue Zero() { return {Complex{}, true}; }

  Complex value() const { return zero ? Complex{} : std::exp(log); }

  LogValue& operator*=(const LogValue& o) {
    zero = zero || o.zero;
    log += o.log;
    return *this;
  }
  friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
};

}  // namespace liouville
