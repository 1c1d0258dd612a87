#pragma once

#include <array>
#include <cmath>
#include <string>

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"

namespace liouville {

namespace detail {

inline constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi) / 2

// Stirling series for log Gamma(w), |w| >= 15, Re w > 0.
inline Complex stirling_log_gamma(Complex w) {
  // B_{2k} / (2k (2k-1))
  static constexpr std::array<double, 8> c{1.0 / 12.0,         -1.0 / 360.0,     1.0 / 1260.0,
                                           -1.0 / 1680.0,      1.0 / 1188.0,     -691.0 / 360360.0,
                                           1.0 / 156.0,        -3617.0 / 122400.0};
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = c.back();
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) series = c[k] + inv2 * series;
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series * inv;
}

// Distance from z to the nearest non-positive integer (infinity when Re z > 0.5).
inline double distance_to_gamma_pole(Complex z) {
  if (z.real() > 0.5) return INFINITY;
  const double n = std::min(0.0, std::round(z.real()));
  return std::abs(z - n);
}

}  // namespace detail

// sin(pi z) with exact zeros at the integers.
inline Complex sin_pi(Complex z) {
  const double x = z.real(), y = z.imag();
  return {boost::math::sin_pi(x) * std::cosh(kPi * y), boost::math::cos_pi(x) * std::sinh(kPi * y)};
}

// A logarithm of sin(pi z), stable for large |Im z|.
inline Complex log_sin_pi(Complex z) {
  const double y = z.imag();
  if (y > 1.0) {
    const Complex e = std::exp(2.0 * kI * kPi * z);
    return -kI * kPi * z + std::log(Complex(0.0, 0.5)) + std::log(1.0 - e);
  }
  if (y < -1.0) {
    const Complex e = std::exp(-2.0 * kI * kPi * z);
    return kI * kPi * z - std::log(Complex(0.0, 2.0)) + std::log(1.0 - e);
  }
  return std::log(sin_pi(z));
}

// A logarithm of Gamma(z). On Re z >= 1/2 it is the principal (analytic)
// branch; elsewhere it comes from the reflection formula and is only defined
// modulo 2 pi i. Throws PoleError within pole_tol of a non-positive integer.
inline Complex log_gamma(Complex z, double pole_tol = 1e-8) {
  if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
  if (z.real() < 0.5) {
    const double d = detail::distance_to_gamma_pole(z);
    if (d <= pole_tol || z == std::round(z.real()))
      throw PoleError("Gamma", "Gamma(z) pole: z = (" + std::to_string(z.real()) + ", " +
                                   std::to_string(z.imag()) + ") is at a non-positive integer");
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z, 0.0);
  }
  Complex shift{};
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return detail::stirling_log_gamma(z) - shift;
}

// Complex Gamma function.
inline Complex gamma_complex(Complex z) {
  if (z.real() < 0.5 && std::abs(z.imag()) < 30.0) {
    const double d = detail::distance_to_gamma_pole(z);
    if (d <= 1e-8 || z == std::round(z.real()))
      throw PoleError("Gamma", "Gamma(z) pole near z = " + std::to_string(z.real()));
    return kPi / (sin_pi(z) * gamma_complex(1.0 - z));
  }
  if (z.real() >= 0.5 && std::abs(z) < 15.0) {
    // Shift up as a single product to keep the rounding error small.
    Complex prod = 1.0;
    while (std::abs(z) < 15.0) {
      prod *= z;
      z += 1.0;
    }
    return std::exp(detail::stirling_log_gamma(z)) / prod;
  }
  return std::exp(log_gamma(z));
}

// 1/Gamma(z), entire; exactly zero at the non-positive integers.
inline LogValue log_rgamma(Complex z) {
  if (z.real() < 0.5 && z.imag() == 0.0 && z.real() == std::round(z.real())) return LogValue::Zero();
  return {-log_gamma(z, 0.0), false};
}

inline Complex rgamma(Complex z) {
  if (z.real() < 0.5 && std::abs(z.imag()) < 30.0) return sin_pi(z) * gamma_complex(1.0 - z) / kPi;
  return log_rgamma(z).value();
}

// l(z) = Gamma(z) / Gamma(1 - z).
inline LogValue log_l_ratio(Complex z, double pole_tol = 1e-8) {
  LogValue r{log_gamma(z, pole_tol), false};
  r *= log_rgamma(1.0 - z);
  return r;
}

inline Complex l_ratio(Complex z) { return gamma_complex(z) * rgamma(1.0 - z); }

}  // namespace liouville
