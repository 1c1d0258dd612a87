#pragma once

// 50-digit quadrature of the defining t-integrals of log Gamma_{gamma/2} and
// log Upsilon, valid for 0 < Re x and 0 < Re z < Q respectively. Fixed
// 30-point Gauss rules on unit panels; in 50 digits the 1/t^2 cancellation
// near t = 0 is harmless at the Gauss nodes.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using Cplx = boost::multiprecision::cpp_complex_50;

template <class F>
Cplx integrate_half_line(F f, double upper) {
  using Rule = boost::math::quadrature::gauss<Real, 30>;
  Cplx sum(0);
  for (int k = 0; k < upper; ++k) {
    const Real lo = k;
    Cplx panel(0);
    // nodes are listed for the positive half of [-1, 1]; the midpoint node is at index 0 only for odd orders
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Real h = Real(0.5);
      panel += w[i] * (f(lo + h + h * x[i]) + f(lo + h - h * x[i]));
    }
    sum += panel * Real(0.5);
  }
  return sum;
}

// int_0^inf dt/t [ (e^{-x t} - e^{-Q t/2}) / ((1 - e^{-a t})(1 - e^{-b t})) - w^2/2 e^{-t} - w/t ],
// w = Q/2 - x.
inline std::complex<double> log_double_gamma(std::complex<double> x_d, double gamma_d) {
  const Real gamma = gamma_d;
  const Real a = gamma / 2, b = 2 / gamma, Q = a + b;
  const Cplx x(Real(x_d.real()), Real(x_d.imag()));
  const Cplx w = Cplx(Q / 2) - x;
  auto f = [&](const Real& t) {
    const Cplx num = exp(-x * t) - Cplx(exp(-Q * t / 2));
    const Real den = (1 - exp(-a * t)) * (1 - exp(-b * t));
    return (num / den - w * w / 2 * exp(-t) - w / t) / t;
  };
  const double decay = std::min({x_d.real(), Q.convert_to<double>() / 2, 1.0});
  const double upper = std::ceil(130.0 / decay);
  // beyond the cut only the -w/t^2 term survives; its tail is -w/T
  const Cplx r = integrate_half_line(f, upper) - w / Real(upper);
  return {r.real().convert_to<double>(), r.imag().convert_to<double>()};
}

// int_0^inf dt/t [ w^2 e^{-t} - sinh^2(w t/2) / (sinh(gamma t/4) sinh(t/gamma)) ], w = Q/2 - z.
inline std::complex<double> log_upsilon(std::complex<double> z_d, double gamma_d) {
  const Real gamma = gamma_d;
  const Real Q = gamma / 2 + 2 / gamma;
  const Cplx z(Real(z_d.real()), Real(z_d.imag()));
  const Cplx w = Cplx(Q / 2) - z;
  auto f = [&](const Real& t) {
    const Cplx s = sinh(w * t / 2);
    return (w * w * exp(-t) - s * s / (sinh(gamma * t / 4) * sinh(t / gamma))) / t;
  };
  const double margin = std::min(z_d.real(), (Q.convert_to<double>() - z_d.real()));
  const Cplx r = integrate_half_line(f, std::ceil(130.0 / std::min(margin, 1.0)));
  return {r.real().convert_to<double>(), r.imag().convert_to<double>()};
}

}  // namespace oracle
