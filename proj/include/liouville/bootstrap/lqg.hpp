#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "liouville/bootstrap/bootstrap.hpp"
#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/quadrature.hpp"
#include "liouville/specialfn/eta.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/structure/fzz.hpp"

namespace liouville {

struct LqgOptions {
  // Inner P-integral, once per q node.
  QuadratureSpec inner{1e-10, 1e-16, 2000, 200.0, false};
  // Outer q-integral over (q_min, q_max).
  QuadratureSpec outer{1e-7, 1e-14, 2000, 1.0, false};
  double q_min = 1e-12;
  double q_max = 1.0 - 1e-6;
  // q values at which the inner integral is reported.
  std::vector<double> report_grid{0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
};

struct PartitionFunctionResult {
  double value = 0.0;
  // Imaginary part left over from rounding; the integrand is real.
  double imag_residual = 0.0;
  double inner_P_tolerance = 0.0;
  double outer_q_tolerance = 0.0;
  double quadrature_error = 0.0;
  // Bounds on the dropped pieces (0, q_min) and (q_max, 1).
  double low_tail_bound = 0.0;
  double high_tail_bound = 0.0;
  double eta_exponent = 0.0;
  double c_m = 0.0;
  double prefactor = 0.0;
  int outer_evaluations = 0;
  std::vector<std::pair<double, double>> q_grid_report;
};

namespace detail {

// c_m from Q, and from gamma directly: 25 - 6Q^2 = 13 - 3 gamma^2/2 - 24/gamma^2.
inline double c_m_from_gamma(double gamma) { return 13.0 - 1.5 * gamma * gamma - 24.0 / (gamma * gamma); }

// -pi^{1/2} / 2^{(c_m+5)/2} / e
inline double lqg_prefactor(double c_m) { return -std::sqrt(kPi) / std::pow(2.0, (c_m + 5.0) / 2.0) / std::numbers::e; }

// int_0^inf dU(Q+iP)/dmu_B U(Q-iP) q^{P^2/2} dP. The product decays like
// 2^{-P^2} on its own, so the rate is ln 2 plus the q contribution.
inline double lqg_inner(double q, const LiouvilleParams& p, const QuadratureSpec& spec) {
  auto f = [&](double P) { return 2.0 * kPi * gamma_fzz_product(P, p) * std::exp(P * P / 2.0 * std::log(q)); };
  return gaussian_spectral_integral(f, kLn2 - std::log(q) / 2.0, spec, {}).value.real();
}

}  // namespace detail

// Annulus partition function of bosonic Liouville quantum gravity:
//   -pi^{1/2} / 2^{(c_m+5)/2} / e  int_0^1 dq int_0^inf dP
//       dU(Q+iP)/dmu_B U(Q-iP) q^{P^2/2} eta(q^2)^{6Q^2-24}
// The q-integral runs over (q_min, q_max). Since q^{P^2/2} <= 1 the inner
// integral is bounded by M = int |dU U| dP, and eta(x)^k <= x^{k/24} with
// k = 6Q^2 - 24 > 0, which bounds the piece below q_min. Above q_max eta(q^2)
// vanishes faster than any power of 1 - q; the bound uses its value at q_max.
inline PartitionFunctionResult lqg_partition(const LiouvilleParams& p, const LqgOptions& opt = {}) {
  p.validate();
  if (!(p.mu > 0.0)) throw DomainError("lqg_partition needs mu > 0");
  if (!p.has_boundary()) throw DomainError("lqg_partition needs mu_boundary or theta");
  if (!(opt.q_min > 0.0 && opt.q_min < opt.q_max && opt.q_max < 1.0))
    throw DomainError("lqg_partition: need 0 < q_min < q_max < 1");
  const double Q = p.Q();
  const double k = 6.0 * Q * Q - 24.0;
  const double c_m = p.c_m();

  PartitionFunctionResult out;
  out.c_m = c_m;
  out.eta_exponent = k;
  out.prefactor = detail::lqg_prefactor(c_m);
  out.inner_P_tolerance = opt.inner.rel_tol;
  out.outer_q_tolerance = opt.outer.rel_tol;

  auto integrand = [&](double q) {
    const double inner = detail::lqg_inner(q, p, opt.inner);
    return inner * std::exp(k * log_dedekind_eta(q * q));
  };

  // Geometric breakpoints resolve the q^{k/12} behaviour at small q.
  std::vector<double> breaks;
  for (double b = 0.1; b > opt.q_min; b /= 10.0) breaks.push_back(b);
  breaks.push_back(0.5);
  breaks.push_back(0.9);
  breaks.push_back(0.99);
  const QuadratureResult r = integrate_adaptive(integrand, opt.q_min, opt.q_max, opt.outer, breaks);
  out.outer_evaluations = r.evaluations;

  const double M = std::abs(detail::gaussian_spectral_integral(
                                [&](double P) { return std::abs(2.0 * kPi * gamma_fzz_product(P, p)); }, kLn2,
                                opt.inner, {})
                                .value);
  out.low_tail_bound = M * std::pow(opt.q_min, 1.0 + k / 12.0) / (1.0 + k / 12.0);
  out.high_tail_bound = M * (1.0 - opt.q_max) * std::exp(k * log_dedekind_eta(opt.q_max * opt.q_max));

  const double scale = std::abs(out.prefactor);
  out.value = out.prefactor * r.value.real();
  out.imag_residual = out.prefactor * r.value.imag();
  out.quadrature_error = scale * (r.error + out.low_tail_bound + out.high_tail_bound);

  for (double q : opt.report_grid)
    if (q > 0.0 && q < 1.0) out.q_grid_report.emplace_back(q, detail::lqg_inner(q, p, opt.inner));
  return out;
}

}  // namespace liouville
