#pragma once

#include <cmath>
#include <string>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/specialfn/gamma.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/structure/dozz.hpp"

namespace liouville {

namespace detail {

// Everything in U_FZZ(alpha) except cos((alpha - Q) pi theta):
//   (4/gamma) 2^{-alpha^2/2} (pi mu 2^{-gamma alpha} l(gamma^2/4))^{(Q-alpha)/gamma}
//   Gamma(gamma alpha/2 - gamma^2/4) Gamma(2 alpha/gamma - 4/gamma^2 - 1)
// The power is taken as exp of (Q-alpha)/gamma times the real log of the
// positive base plus -gamma alpha log 2, so there is no branch cut.
// The Gamma arguments are a(alpha - a) and b(alpha - Q).
inline Complex log_fzz_core(Complex alpha, const LiouvilleParams& p, bool include_pole_gamma = true) {
  const double a = p.a(), b = p.b(), Q = p.Q(), g = p.gamma;
  const Complex g1 = a * (alpha - a), g2 = b * (alpha - Q);
  if (distance_to_gamma_pole(g1) <= 1e-8)
    throw PoleError("Gamma(gamma alpha/2 - gamma^2/4)", "FZZ pole at alpha = " + charge_string(alpha));
  Complex r = std::log(4.0 / g) - alpha * alpha / 2.0 * kLn2 +
              (Q - alpha) / g * (log_pi_mu_l(p) - g * alpha * kLn2) + log_gamma(g1, 0.0);
  if (include_pole_gamma) {
    if (distance_to_gamma_pole(g2) <= 1e-8)
      throw PoleError("Gamma(2 alpha/gamma - 4/gamma^2 - 1)", "FZZ pole at alpha = " + charge_string(alpha));
    r += log_gamma(g2, 0.0);
  }
  return r;
}

}  // namespace detail

// Bulk one-point function U_{FZZ,theta}(alpha).
inline Complex fzz_one_point(Complex alpha, const LiouvilleParams& p) {
  detail::require_bulk_mu(p, "fzz_one_point");
  const Complex theta = p.theta();
  return std::exp(detail::log_fzz_core(alpha, p)) * std::cos((alpha - p.Q()) * kPi * theta);
}

// d U_FZZ(alpha) / d mu_B through theta(mu_B).
inline Complex fzz_mu_b_derivative(Complex alpha, const LiouvilleParams& p) {
  detail::require_bulk_mu(p, "fzz_mu_b_derivative");
  const Complex theta = p.theta();
  const Complex x = alpha - p.Q();
  return std::exp(detail::log_fzz_core(alpha, p)) * (-std::sin(x * kPi * theta)) * x * kPi * p.dtheta_dmu_b();
}

// G_theta(Q + iP, gamma) = (1/2pi) d U_FZZ(Q + iP) / d mu_B.
inline Complex g_gamma_derivative(double P, const LiouvilleParams& p) {
  if (!(P > 0.0)) throw DomainError("g_gamma_derivative: requires P > 0");
  return fzz_mu_b_derivative(Complex(p.Q(), P), p) / (2.0 * kPi);
}

// G_theta(Q+iP, gamma) U_FZZ(Q-iP) as one expression. The pole of
// Gamma(-2iP/gamma) in U and the zero of G cancel through
// Gamma(iy) Gamma(-iy) = pi / (y sinh(pi y)), so this is finite down to P = 0:
//   (pi/4) sinh(2 pi P theta) / (b sinh(pi b P)) * E * dtheta/dmu_B
// with E the remaining factors of both constants.
inline Complex gamma_fzz_product(double P, const LiouvilleParams& p) {
  detail::require_bulk_mu(p, "gamma_fzz_product");
  if (!(P >= 0.0)) throw DomainError("gamma_fzz_product: requires P >= 0");
  const double Q = p.Q(), b = p.b();
  const Complex e = std::exp(detail::log_fzz_core(Complex(Q, P), p, false) +
                             detail::log_fzz_core(Complex(Q, -P), p, false));
  // At the branch junction theta -> 0 while dtheta/dmu_B diverges; their
  // product has the finite limit sinh(2 pi P theta) dtheta/dmu_B -> -8 kappa P / (pi gamma^2).
  if (p.mu_boundary && std::abs(p.kappa() * *p.mu_boundary - 1.0) < 1e-12) {
    const double lim = -8.0 * p.kappa() / (kPi * p.gamma * p.gamma);
    const double ratio = P * b < 1e-8 ? lim / (kPi * b) : lim * P / std::sinh(kPi * b * P);
    return kPi / 4.0 * ratio / b * e;
  }
  const Complex theta = p.theta();
  // sinh(2 pi P theta) / sinh(pi b P), with its P -> 0 limit 2 theta / b.
  Complex ratio;
  if (P * (std::abs(theta) + b) < 1e-8)
    ratio = 2.0 * theta / b;
  else
    ratio = std::sinh(2.0 * kPi * P * theta) / std::sinh(kPi * b * P);
  return kPi / 4.0 * ratio / b * e * p.dtheta_dmu_b();
}

}  // namespace liouville
