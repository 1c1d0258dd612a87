#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/specialfn/gamma.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/specialfn/upsilon.hpp"

namespace liouville {

namespace detail {

inline void require_bulk_mu(const LiouvilleParams& p, const char* what) {
  if (!(p.mu > 0.0)) throw DomainError(std::string(what) + " requires mu > 0");
}

// log(pi mu l(gamma^2/4)); the argument is positive for 0 < gamma < 2.
inline double log_pi_mu_l(const LiouvilleParams& p) {
  return std::log(kPi * p.mu) + log_l_ratio(p.gamma * p.gamma / 4.0).log.real();
}

inline std::string charge_string(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace detail

// DOZZ three-point constant in log form. The charges are put in a canonical
// order first, so permutations of the arguments give bit-identical results.
inline LogValue log_dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& p) {
  detail::require_bulk_mu(p, "dozz");
  std::array<Complex, 3> al{a1, a2, a3};
  std::sort(al.begin(), al.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  const double Q = p.Q(), g = p.gamma;
  const Complex abar = al[0] + al[1] + al[2];

  const std::array<std::pair<Complex, const char*>, 4> den{{
      {abar / 2.0 - Q, "Upsilon(alpha_bar/2 - Q)"},
      {abar / 2.0 - al[0], "Upsilon(alpha_bar/2 - alpha_1)"},
      {abar / 2.0 - al[1], "Upsilon(alpha_bar/2 - alpha_2)"},
      {abar / 2.0 - al[2], "Upsilon(alpha_bar/2 - alpha_3)"},
  }};
  for (const auto& [z, name] : den)
    if (upsilon_zero_distance(z, p) < 1e-8)
      throw PoleError(name, std::string("DOZZ pole: ") + name + " vanishes at charges " +
                                detail::charge_string(al[0]) + ", " + detail::charge_string(al[1]) + ", " +
                                detail::charge_string(al[2]));

  const double log_base = detail::log_pi_mu_l(p) + (2.0 - g * g / 2.0) * std::log(p.a());
  LogValue r{(2.0 * Q - abar) / g * log_base, false};
  r *= log_upsilon_prime_zero(p);
  for (const Complex& a : al) r *= log_upsilon(a, p);
  for (const auto& [z, name] : den) {
    const LogValue u = log_upsilon(z, p);
    r.log -= u.log;
  }
  return r;
}

inline Complex dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& p) {
  return log_dozz(a1, a2, a3, p).value();
}

// Reflection coefficient
//   R(alpha) = -(pi mu l(gamma^2/4))^{2(Q - alpha)/gamma}
//              Gamma(-a v) Gamma(-b v) / (Gamma(a v) Gamma(b v)),  v = Q - alpha,
// evaluated through Gamma(-u)/Gamma(u) = -Gamma(1-u)/Gamma(1+u), which is
// regular at v = 0.
inline LogValue log_reflection(Complex alpha, const LiouvilleParams& p) {
  detail::require_bulk_mu(p, "reflection");
  const double a = p.a(), b = p.b();
  const Complex v = p.Q() - alpha;
  for (const auto& [u, name] : {std::pair{a * v, "Gamma(-gamma(Q-alpha)/2)"}, std::pair{b * v, "Gamma(-2(Q-alpha)/gamma)"}})
    if (detail::distance_to_gamma_pole(1.0 - u) <= 1e-8)
      throw PoleError(name, std::string("reflection coefficient pole from ") + name + " at alpha = " +
                                detail::charge_string(alpha));
  LogValue r{2.0 * v / p.gamma * detail::log_pi_mu_l(p) + kI * kPi, false};  // leading minus sign
  r.log += log_gamma(1.0 - a * v, 0.0) + log_gamma(1.0 - b * v, 0.0);
  r *= detail::log_rgamma_snap(1.0 + a * v);
  r *= detail::log_rgamma_snap(1.0 + b * v);
  return r;
}

inline Complex reflection(Complex alpha, const LiouvilleParams& p) { return log_reflection(alpha, p).value(); }

}  // namespace liouville
