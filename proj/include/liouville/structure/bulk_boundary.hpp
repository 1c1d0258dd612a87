#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/quadrature.hpp"
#include "liouville/specialfn/double_gamma.hpp"
#include "liouville/specialfn/gamma.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/structure/dozz.hpp"

namespace liouville {

struct BulkBoundaryResult {
  Complex value{};
  double error = 0.0;      // quadrature error estimate (0 for closed forms)
  double t_max = 0.0;      // truncation point of the t-integral
  double decay_rate = 0.0;  // certified exponential decay rate of the t-integrand
  bool conjectural = false;
};

// Kernel of the t-integral. AsPrinted is e^{4 pi i t theta} exactly as the
// formula is usually quoted. FzzMatched uses e^{2 pi t theta}; with it the
// beta -> 0 limit reproduces the theta dependence cosh(pi P theta) of U_FZZ
// (the printed kernel gives cos(2 pi P theta) instead).
enum class HosomichiKernel { AsPrinted, FzzMatched };

namespace detail {

inline Complex hosomichi_kernel(double t, Complex theta, HosomichiKernel k) {
  // Folded onto t >= 0: K(t) + K(-t).
  if (k == HosomichiKernel::AsPrinted) return 2.0 * std::cos(4.0 * kPi * t * theta);
  return 2.0 * std::cosh(2.0 * kPi * t * theta);
}

// Charges entering the four double sine factors of the t-integrand.
struct HosomichiArgs {
  Complex A, B;
};

inline HosomichiArgs hosomichi_args(Complex alpha, Complex beta, double Q) {
  return {(alpha + beta / 2.0 - Q) / 2.0, (-alpha + beta / 2.0 + Q) / 2.0};
}

// S(A+it) S(A-it) S(B+it) S(B-it); even in t.
inline Complex hosomichi_sine_product(const HosomichiArgs& h, double t, const LiouvilleParams& p) {
  const Complex it{0.0, t};
  LogValue r = log_double_sine(h.A + it, p);
  r *= log_double_sine(h.A - it, p);
  r *= log_double_sine(h.B + it, p);
  r *= log_double_sine(h.B - it, p);
  return r.value();
}

}  // namespace detail

// Exponential decay rate of the t-integrand e^{4 pi i t theta} prod S(...):
// with |S(u + iv)| ~ exp((pi/2)|v|(2u - Q)) for |v| -> inf, the four factors
// combine to exp(-pi (2Q - Re beta)|t|), and the kernel contributes
// exp(4 pi |Im theta| |t|).
inline double hosomichi_decay_rate(Complex beta, Complex theta, const LiouvilleParams& p,
                                  HosomichiKernel kernel = HosomichiKernel::AsPrinted) {
  const double growth = kernel == HosomichiKernel::AsPrinted ? 4.0 * kPi * std::abs(theta.imag())
                                                             : 2.0 * kPi * std::abs(theta.real());
  return kPi * (2.0 * p.Q() - beta.real()) - growth;
}

// Modulus of the t-integrand (including the kernel), for diagnostics.
inline double hosomichi_integrand_modulus(Complex alpha, Complex beta, double t, const LiouvilleParams& p,
                                         HosomichiKernel kernel = HosomichiKernel::AsPrinted) {
  const auto h = detail::hosomichi_args(alpha, beta, p.Q());
  return std::abs(detail::hosomichi_kernel(t, p.theta(), kernel) * detail::hosomichi_sine_product(h, t, p));
}

// Bulk-boundary constant G_theta(alpha, beta) from the conjectured formula for
// mu > 0 (Hosomichi's expression). The t-integral is folded onto [0, inf)
// using its evenness and cut where the certified exponential envelope falls
// below the requested tolerance; interior breakpoints sit where the double
// sine arguments come closest to their poles and zeros.
inline BulkBoundaryResult bulk_boundary_hosomichi(Complex alpha, Complex beta, const LiouvilleParams& p,
                                                  const QuadratureSpec& spec = {},
                                                  HosomichiKernel kernel = HosomichiKernel::AsPrinted) {
  detail::require_bulk_mu(p, "bulk_boundary (mu > 0)");
  spec.validate();
  const double Q = p.Q(), g = p.gamma;
  const Complex theta = p.theta();
  const double kappa = hosomichi_decay_rate(beta, theta, p, kernel);
  if (!(kappa > 0.0)) throw DomainError("bulk_boundary: t-integral diverges for this beta and theta");

  // Prefactor in log form.
  const double log_base = detail::log_pi_mu_l(p) + (2.0 - g * g / 2.0) * std::log(p.a());
  Complex lp = std::log(2.0 * kPi) + (Q - alpha - beta / 2.0) / g * log_base;
  lp += 3.0 * log_double_gamma(Q - beta / 2.0, p) - log_double_gamma(Q, p) - log_double_gamma(Q - beta, p) -
        log_double_gamma(beta / 2.0, p);
  lp += log_double_gamma(alpha - beta / 2.0, p) + log_double_gamma(2.0 * Q - alpha - beta / 2.0, p) -
        log_double_gamma(alpha, p) - log_double_gamma(Q - alpha, p);

  const auto h = detail::hosomichi_args(alpha, beta, Q);
  auto integrand = [&](double t) {
    return detail::hosomichi_kernel(t, theta, kernel) * detail::hosomichi_sine_product(h, t, p);
  };

  // Envelope C e^{-kappa t}: C is the largest |f(t)| e^{kappa t} sampled on
  // [t1, t1 + 2] past the last breakpoint (the kernel may oscillate, so a
  // single sample can sit on a node), with a safety factor.
  const double t_peak = std::max(std::abs(h.A.imag()), std::abs(h.B.imag()));
  const double t1 = t_peak + 2.0;
  double scale = 0.0;
  for (int k = 0; k <= 16; ++k) scale = std::max(scale, std::abs(integrand(t1 * k / 16.0)));
  double c_env = 0.0;
  for (int k = 0; k <= 32; ++k) {
    const double t = t1 + 2.0 * k / 32.0;
    c_env = std::max(c_env, std::abs(integrand(t)) * std::exp(kappa * t));
  }
  c_env *= 4.0;
  const double target = std::max(spec.abs_tol, 1e-3 * spec.rel_tol * scale) * kappa;
  double t_max = t1;
  if (c_env * std::exp(-kappa * t1) > target) t_max = std::log(c_env / target) / kappa;
  if (t_max > spec.truncation_bound)
    throw NonConvergence("bulk_boundary: t-integral cut " + std::to_string(t_max) + " exceeds truncation_bound",
                         c_env * std::exp(-kappa * spec.truncation_bound) / kappa, 0);

  std::vector<double> br{std::abs(h.A.imag()), std::abs(h.B.imag()), t1};
  QuadratureSpec inner = spec;
  QuadratureResult q = integrate_adaptive(integrand, 0.0, t_max, inner, br);

  BulkBoundaryResult out;
  const Complex pref = std::exp(lp);
  out.value = require_finite(pref * q.value, "bulk_boundary");
  out.error = std::abs(pref) * (q.error + c_env * std::exp(-kappa * t_max) / kappa);
  out.t_max = t_max;
  out.decay_rate = kappa;
  out.conjectural = true;
  return out;
}

// G in the normalization the bootstrap integrals need: FzzMatched kernel and
// an overall 2^{-2 Delta_alpha} (bulk insertion weighted by |Im z| instead of
// |z - zbar|). With both, G(alpha, beta -> 0) -> U_FZZ(alpha), and
// G(Q + iP, gamma) = -(1/2pi) dU_FZZ(Q + iP)/dmu_B.
inline BulkBoundaryResult bulk_boundary_bootstrap(Complex alpha, Complex beta, const LiouvilleParams& p,
                                                  const QuadratureSpec& spec = {}) {
  BulkBoundaryResult r = bulk_boundary_hosomichi(alpha, beta, p, spec, HosomichiKernel::FzzMatched);
  const Complex f = std::exp(-2.0 * conformal_weight(alpha, p.Q()) * kLn2);
  r.value *= f;
  r.error *= std::abs(f);
  return r;
}

// mu = 0 closed form of the bulk-boundary constant:
//   (2/gamma) Gamma((2 alpha + beta - 2Q)/gamma) mu_B^{(2Q - 2 alpha - beta)/gamma}
//   (2^{(gamma/2)(beta/2 - alpha)} 2 pi / Gamma(1 - gamma^2/4))^{(2/gamma)(Q - alpha - beta/2)}
//   Gamma(gamma alpha/2 + gamma beta/4 - gamma^2/4)
//   Gamma_2(alpha - beta/2) Gamma_2(alpha + beta/2) Gamma_2(Q - beta/2)^2
//   / (Gamma_2(Q - beta) Gamma_2(alpha)^2 Gamma_2(Q))
inline Complex bulk_boundary_mu0(Complex alpha, Complex beta, const LiouvilleParams& p) {
  const double mu_b = p.boundary_cosmological_constant();
  const double Q = p.Q(), g = p.gamma;
  const Complex g1 = (2.0 * alpha + beta - 2.0 * Q) / g;
  const Complex g2 = g * alpha / 2.0 + g * beta / 4.0 - g * g / 4.0;
  if (detail::distance_to_gamma_pole(g1) <= 1e-8)
    throw PoleError("Gamma((2 alpha + beta - 2Q)/gamma)", "mu = 0 bulk-boundary pole");
  if (detail::distance_to_gamma_pole(g2) <= 1e-8)
    throw PoleError("Gamma(gamma alpha/2 + gamma beta/4 - gamma^2/4)", "mu = 0 bulk-boundary pole");
  const double log_c = std::log(2.0 * kPi) - log_gamma(1.0 - g * g / 4.0).real();
  Complex r = std::log(2.0 / g) + log_gamma(g1, 0.0) + (2.0 * Q - 2.0 * alpha - beta) / g * std::log(mu_b) +
              2.0 / g * (Q - alpha - beta / 2.0) * (g / 2.0 * (beta / 2.0 - alpha) * kLn2 + log_c) +
              log_gamma(g2, 0.0);
  r += log_double_gamma(alpha - beta / 2.0, p) + log_double_gamma(alpha + beta / 2.0, p) +
       2.0 * log_double_gamma(Q - beta / 2.0, p) - log_double_gamma(Q - beta, p) -
       2.0 * log_double_gamma(alpha, p) - log_double_gamma(Q, p);
  return require_finite(std::exp(r), "bulk_boundary_mu0");
}

// mu = 0 bulk one-point function; this is the beta = 0 value of the
// bulk-boundary closed form:
//   (2/gamma) Gamma((2 alpha - 2Q)/gamma) mu_B^{(2Q - 2 alpha)/gamma}
//   (2^{-gamma alpha/2} 2 pi / Gamma(1 - gamma^2/4))^{(2/gamma)(Q - alpha)}
//   Gamma(gamma alpha/2 - gamma^2/4)
inline Complex one_point_mu0(Complex alpha, const LiouvilleParams& p) {
  const double mu_b = p.boundary_cosmological_constant();
  const double Q = p.Q(), g = p.gamma;
  const Complex g1 = (2.0 * alpha - 2.0 * Q) / g;
  const Complex g2 = g * alpha / 2.0 - g * g / 4.0;
  if (detail::distance_to_gamma_pole(g1) <= 1e-8)
    throw PoleError("Gamma((2 alpha - 2Q)/gamma)", "mu = 0 one-point pole");
  if (detail::distance_to_gamma_pole(g2) <= 1e-8)
    throw PoleError("Gamma(gamma alpha/2 - gamma^2/4)", "mu = 0 one-point pole");
  const double log_c = std::log(2.0 * kPi) - log_gamma(1.0 - g * g / 4.0).real();
  const Complex r = std::log(2.0 / g) + log_gamma(g1, 0.0) + (2.0 * Q - 2.0 * alpha) / g * std::log(mu_b) +
                    2.0 / g * (Q - alpha) * (-g * alpha / 2.0 * kLn2 + log_c) + log_gamma(g2, 0.0);
  return require_finite(std::exp(r), "one_point_mu0");
}

// Dispatch: closed form when mu = 0, conjectured integral formula when mu > 0.
inline BulkBoundaryResult bulk_boundary_detailed(Complex alpha, Complex beta, const LiouvilleParams& p,
                                                 const QuadratureSpec& spec = {},
                                                 HosomichiKernel kernel = HosomichiKernel::AsPrinted) {
  if (p.mu == 0.0) {
    BulkBoundaryResult r;
    r.value = bulk_boundary_mu0(alpha, beta, p);
    return r;
  }
  return bulk_boundary_hosomichi(alpha, beta, p, spec, kernel);
}

inline Complex bulk_boundary(Complex alpha, Complex beta, const LiouvilleParams& p, const QuadratureSpec& spec = {}) {
  return bulk_boundary_detailed(alpha, beta, p, spec).value;
}

}  // namespace liouville
