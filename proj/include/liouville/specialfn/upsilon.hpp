#pragma once

#include <cmath>
#include <string>

#include "liouville/numerics/complex.hpp"
#include "liouville/specialfn/double_gamma.hpp"
#include "liouville/specialfn/gamma.hpp"
#include "liouville/specialfn/params.hpp"

namespace liouville {

namespace detail {

// 1/Gamma(w), snapping to an exact zero within tol of a non-positive integer.
inline LogValue log_rgamma_snap(Complex w, double tol = 1e-12) {
  const double n = std::round(w.real());
  if (n <= 0.0 && std::abs(w - n) <= tol * std::max(1.0, std::abs(n))) return LogValue::Zero();
  return log_rgamma(w);
}

inline double distance_to_positive_integer(Complex w) {
  const double n = std::max(1.0, std::round(w.real()));
  return std::abs(w - n);
}

}  // namespace detail

// Distance from z to the zero set of Upsilon:
// (-gamma/2 N - 2/gamma N) u (Q + gamma/2 N + 2/gamma N).
inline double upsilon_zero_distance(Complex z, const LiouvilleParams& p) {
  return std::min(lattice_distance(z, p.a(), p.b()), lattice_distance(p.Q() - z, p.a(), p.b()));
}

// log Upsilon_{gamma/2}(z) with an exact-zero flag. On the strip
// Q/4 <= Re z <= 3Q/4 the integral representation is used in the form
// log Upsilon(z) = -log Gamma_2(z) - log Gamma_2(Q - z) (the two t-integrands
// add up to the Upsilon integrand); elsewhere the Upsilon shift relations
//   Upsilon(z + a) = l(a z) a^{1 - 2 a z} Upsilon(z)
//   Upsilon(z + b) = l(b z) a^{2 b z - 1} Upsilon(z)
// with a = gamma/2, b = 2/gamma are applied.
inline LogValue log_upsilon(Complex z, const LiouvilleParams& p) {
  if (!is_finite(z)) throw DomainError("upsilon: non-finite argument");
  const double a = p.a(), b = p.b(), Q = p.Q();
  const double lo = Q / 4.0, hi = 3.0 * Q / 4.0;
  const double log_a = std::log(a);
  LogValue acc;
  Complex y = z;
  // Upsilon(y) = Upsilon(y + s) / [l(s y) a^{e_s(y)}]
  while (y.real() < lo) {
    double s = a;
    if (y.real() + b <= hi && detail::distance_to_positive_integer(b * y) > 0.25) s = b;
    const Complex w = s * y;
    const Complex e = (s == a) ? 1.0 - 2.0 * a * y : 2.0 * b * y - 1.0;
    acc *= detail::log_rgamma_snap(w);
    acc *= LogValue{log_gamma(1.0 - w, 0.0) - e * log_a, false};
    y += s;
  }
  // Upsilon(y + s) = l(s y) a^{e_s(y)} Upsilon(y)
  while (y.real() > hi) {
    const double s = (y.real() - b >= lo) ? b : a;
    y -= s;
    const Complex w = s * y;
    const Complex e = (s == a) ? 1.0 - 2.0 * a * y : 2.0 * b * y - 1.0;
    acc *= LogValue{log_gamma(w, 0.0) + e * log_a, false};
    acc *= detail::log_rgamma_snap(1.0 - w);
  }
  if (acc.zero) return LogValue::Zero();
  acc *= LogValue{-detail::log_double_gamma_strip(y, p.gamma) - detail::log_double_gamma_strip(Q - y, p.gamma),
                  false};
  return acc;
}

inline Complex upsilon(Complex z, const LiouvilleParams& p) { return log_upsilon(z, p).value(); }

// Upsilon'(0) = Upsilon(gamma/2), from the first shift relation at z -> 0.
inline LogValue log_upsilon_prime_zero(const LiouvilleParams& p) { return log_upsilon(p.a(), p); }

}  // namespace liouville
