#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/quadrature.hpp"
#include "liouville/specialfn/gamma.hpp"
#include "liouville/specialfn/params.hpp"

namespace liouville {

// Which period the lattice walk uses first when moving an argument into the
// strip where the integral representation is evaluated. Both give the same
// function; the choice only changes rounding.
enum class ShiftOrder { PreferB, PreferA };

// Distance from x to the lattice {-n a - m b : n, m >= 0}. The lattice lies on
// the non-positive real axis.
inline double lattice_distance(Complex x, double a, double b) {
  const double im = std::abs(x.imag());
  const double r = -x.real();
  if (r <= 0.0) return std::abs(x);
  double best = r;  // distance to the point 0 along the real axis
  const int nmax = static_cast<int>(std::floor(r / a)) + 1;
  for (int n = 0; n <= nmax; ++n) {
    const double rest = r - n * a;
    const double m = std::max(0.0, std::round(rest / b));
    best = std::min(best, std::abs(rest - m * b));
  }
  return std::hypot(best, im);
}

namespace detail {

inline constexpr int kSeriesTerms = 48;

// Per-gamma data for the strip integral, cached per thread.
struct DoubleGammaTables {
  double a, b, Q;
  // Taylor coefficients of 1 / (A(t) B(t)), A(t) = (1 - e^{-a t}) / t.
  std::array<double, kSeriesTerms + 2> inv_ab{};
  // Constant pieces at cut t0: J(Q/2) and E1(t0), keyed by t0.
  std::map<double, std::pair<double, double>> tail_constants;
};

// Integral over [t0, inf) of e^{-y t} / (t (1 - e^{-a t})(1 - e^{-b t})) for Re y > 0.
// The contour is turned onto the ray t0 + s e^{-i arg y}, along which the
// exponential decays without oscillating.
inline Complex double_gamma_tail(Complex y, double t0, double a, double b) {
  const double r = std::abs(y);
  const Complex dir = std::polar(1.0, -std::arg(y));
  auto g = [&](Complex t) { return 1.0 / (t * (1.0 - std::exp(-a * t)) * (1.0 - std::exp(-b * t))); };
  const double g0 = std::abs(g(Complex(t0)));
  const double cut = (40.0 + std::max(0.0, std::log(g0))) / r;
  QuadratureSpec spec;
  spec.rel_tol = 5e-14;
  spec.abs_tol = 0.0;
  spec.max_subdivisions = 400;
  const std::array<double, 4> br{0.5 / r, 2.0 / r, 6.0 / r, 15.0 / r};
  auto f = [&](double s) { return std::exp(-r * s) * g(t0 + s * dir); };
  const Complex integral = integrate_adaptive(f, 0.0, cut, spec, br).value;
  return std::exp(-y * t0) * dir * integral;
}

inline DoubleGammaTables& double_gamma_tables(double gamma) {
  thread_local std::map<double, DoubleGammaTables> cache;
  auto it = cache.find(gamma);
  if (it != cache.end()) return it->second;
  DoubleGammaTables t;
  t.a = 0.5 * gamma;
  t.b = 2.0 / gamma;
  t.Q = t.a + t.b;
  // A(t) B(t) as a power series, then its reciprocal.
  constexpr int K = kSeriesTerms + 2;
  std::array<double, K> A{}, B{}, AB{};
  double fa = t.a, fb = t.b;
  for (int k = 0; k < K; ++k) {
    A[k] = fa;
    B[k] = fb;
    fa *= -t.a / (k + 2);
    fb *= -t.b / (k + 2);
  }
  for (int i = 0; i < K; ++i)
    for (int j = 0; i + j < K; ++j) AB[i + j] += A[i] * B[j];
  t.inv_ab[0] = 1.0 / AB[0];
  for (int k = 1; k < K; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += AB[j] * t.inv_ab[k - j];
    t.inv_ab[k] = -s / AB[0];
  }
  return cache.emplace(gamma, t).first->second;
}

// log Gamma_{gamma/2}(x) from the integral representation; Re x must be
// comfortably positive (callers stay in [Q/4, 3Q/4]).
inline Complex log_double_gamma_strip(Complex x, double gamma) {
  DoubleGammaTables& tab = double_gamma_tables(gamma);
  const double a = tab.a, b = tab.b, Q = tab.Q;

  // Split point: inside the disc of convergence of the t-series (radius
  // 2 pi / b) and small enough that e^{-x t} is resolved by the series.
  double t0 = std::min(kPi * gamma / 3.0, 1.0);
  while (t0 * std::abs(x) > 4.0) t0 *= 0.5;

  auto [jq, e1] = [&] {
    auto it = tab.tail_constants.find(t0);
    if (it != tab.tail_constants.end()) return it->second;
    const double j = double_gamma_tail(Complex(Q / 2.0), t0, a, b).real();
    const double e = boost::math::expint(1, t0);
    tab.tail_constants.emplace(t0, std::pair{j, e});
    return std::pair{j, e};
  }();

  const Complex w = Q / 2.0 - x;
  const Complex w2 = 0.5 * w * w;

  // Series on [0, t0] in the scaled variable u = t / t0.
  constexpr int K = kSeriesTerms;
  std::array<Complex, K + 2> n{};  // (e^{-x t} - e^{-Q t / 2}) / t, coefficient of u^k
  Complex px = -x * t0, pq = -Q / 2.0 * t0;
  Complex fx = px, fq = pq;
  double fact = 1.0;
  for (int k = 0; k < K + 2; ++k) {
    n[k] = (fx - fq) / fact / t0;  // divided by t, so one power of t0 is removed
    fact *= (k + 2);
    fx *= px;
    fq *= pq;
  }
  // m = n * inv_ab (scaled), coefficient of u^k in (N/t) / (A B).
  std::array<Complex, K + 2> m{};
  double tp = 1.0;
  std::array<double, K + 2> inv_scaled{};
  for (int k = 0; k < K + 2; ++k) {
    inv_scaled[k] = tab.inv_ab[k] * tp;
    tp *= t0;
  }
  for (int i = 0; i < K + 2; ++i)
    for (int j = 0; i + j < K + 2; ++j) m[i + j] += n[i] * inv_scaled[j];
  // Integrand is sum_k h_k t^{k-1}; h_0 cancels identically.
  Complex series{};
  double ek = -t0;  // (-t0)^k / k!
  for (int k = 1; k <= K; ++k) {
    const Complex hk = m[k + 1] / t0 - w2 * ek;  // coefficient of u^k times t0^k
    series += hk / static_cast<double>(k);
    ek *= -t0 / (k + 1);
  }

  const Complex tail = double_gamma_tail(x, t0, a, b) - jq - w2 * e1 - w / t0;
  return series + tail;
}

inline Complex double_gamma_shift_log(Complex y, double step, double a) {
  // log of Gamma_2(y) / Gamma_2(y + step)
  if (step == a) return -kHalfLog2Pi + log_gamma(a * y, 0.0) + (-a * y + 0.5) * std::log(a);
  const double b = step;
  return -kHalfLog2Pi + log_gamma(b * y, 0.0) + (b * y - 0.5) * std::log(a);
}

}  // namespace detail

// log Gamma_{gamma/2}(x), normalised by Gamma_{gamma/2}(Q/2) = 1. The result is
// the sum of the strip integral and the logarithms of the shift factors met on
// the way, so it is continuous along the walk; only exp() of it is canonical.
inline Complex log_double_gamma(Complex x, const LiouvilleParams& p,
                                ShiftOrder order = ShiftOrder::PreferB) {
  if (!is_finite(x)) throw DomainError("log_double_gamma: non-finite argument");
  const double a = p.a(), b = p.b(), Q = p.Q();
  if (lattice_distance(x, a, b) < 1e-8)
    throw PoleError("Gamma_{gamma/2}", "double Gamma pole: x = (" + std::to_string(x.real()) + ", " +
                                           std::to_string(x.imag()) + ") is on the lattice -n gamma/2 - m 2/gamma");
  const double lo = Q / 4.0, hi = 3.0 * Q / 4.0;
  Complex acc{};
  Complex y = x;
  while (y.real() < lo) {
    const double s = (order == ShiftOrder::PreferB && y.real() + b <= hi) ? b : a;
    acc += detail::double_gamma_shift_log(y, s, a);
    y += s;
  }
  while (y.real() > hi) {
    const double s = (order == ShiftOrder::PreferB && y.real() - b >= lo) ? b : a;
    y -= s;
    acc -= detail::double_gamma_shift_log(y, s, a);
  }
  return acc + detail::log_double_gamma_strip(y, p.gamma);
}

inline Complex double_gamma(Complex x, const LiouvilleParams& p) {
  return std::exp(log_double_gamma(x, p));
}

// S_{gamma/2}(x) = Gamma_{gamma/2}(x) / Gamma_{gamma/2}(Q - x) in log form. A
// zero of S (Q - x within 1e-8 of the pole lattice) is returned as an exact
// zero; a pole throws.
inline LogValue log_double_sine(Complex x, const LiouvilleParams& p) {
  const double a = p.a(), b = p.b(), Q = p.Q();
  if (lattice_distance(x, a, b) < 1e-8)
    throw PoleError("S_{gamma/2}", "double sine pole at x = (" + std::to_string(x.real()) + ", " +
                                       std::to_string(x.imag()) + ")");
  if (lattice_distance(Q - x, a, b) < 1e-8) return LogValue::Zero();
  return {log_double_gamma(x, p) - log_double_gamma(Q - x, p), false};
}

inline Complex double_sine(Complex x, const LiouvilleParams& p) { return log_double_sine(x, p).value(); }

}  // namespace liouville
