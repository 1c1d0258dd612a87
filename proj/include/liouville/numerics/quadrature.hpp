#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/parallel.hpp"

namespace liouville {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  // Hard upper limit for any nominally infinite range.
  double truncation_bound = 1e3;
  // Dispatch integrand evaluations of one refinement step to worker threads.
  // Only worth it for expensive integrands; results do not depend on it.
  bool parallel = false;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(truncation_bound > 0.0)) throw DomainError("QuadratureSpec: truncation_bound must be > 0");
  }
};

struct QuadratureResult {
  Complex value{};
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
  // Upper end of the integrated range (relevant for half-line integrals).
  double upper = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

// 21-point Kronrod rule with its embedded 10-point Gauss rule. Node i of the
// panel is kNodes[i] in [-1, 1]; Gauss nodes are the odd Kronrod indices.
struct GaussKronrod21 {
  static constexpr int kPoints = 21;
  std::array<double, kPoints> node{};
  std::array<double, kPoints> kronrod_weight{};
  std::array<double, kPoints> gauss_weight{};

  GaussKronrod21() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& x = gauss_kronrod<double, 21>::abscissa();  // x[0] = 0, ascending
    const auto& wk = gauss_kronrod<double, 21>::weights();
    const auto& wg = gauss<double, 10>::weights();
    // Layout: index 10 is the centre, 10 -/+ j are the symmetric pair for x[j].
    for (int j = 0; j <= 10; ++j) {
      node[10 - j] = -x[j];
      node[10 + j] = x[j];
      kronrod_weight[10 - j] = kronrod_weight[10 + j] = wk[j];
      const double g = (j % 2 == 1) ? wg[(j - 1) / 2] : 0.0;
      gauss_weight[10 - j] = gauss_weight[10 + j] = g;
    }
  }

  static const GaussKronrod21& get() {
    static const GaussKronrod21 rule;
    return rule;
  }
};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  Complex value{};
  double error = 0.0;
};

// QUADPACK-style error estimate from the Kronrod/Gauss difference.
inline Panel finish_panel(double a, double b, std::span<const Complex> f) {
  const auto& rule = GaussKronrod21::get();
  const double half = 0.5 * (b - a);
  Complex kronrod{}, gauss{};
  double abs_sum = 0.0;
  for (int i = 0; i < GaussKronrod21::kPoints; ++i) {
    kronrod += rule.kronrod_weight[i] * f[i];
    gauss += rule.gauss_weight[i] * f[i];
    abs_sum += rule.kronrod_weight[i] * std::abs(f[i]);
  }
  const Complex mean = 0.5 * kronrod;
  double asc = 0.0;
  for (int i = 0; i < GaussKronrod21::kPoints; ++i)
    asc += rule.kronrod_weight[i] * std::abs(f[i] - mean);

  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);

  double err = std::abs(kronrod - gauss);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * abs_sum);
  return {a, b, kronrod, err};
}

// Evaluates the 21 nodes of every panel in `spans`; node evaluations may run
// in parallel, each writes its own slot.
template <class F>
std::vector<Panel> evaluate_panels(F& f, const std::vector<std::pair<double, double>>& spans,
                                   bool parallel) {
  const auto& rule = GaussKronrod21::get();
  constexpr int np = GaussKronrod21::kPoints;
  std::vector<Complex> values(spans.size() * np);
  auto eval = [&](std::size_t k) {
    const auto& [a, b] = spans[k / np];
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.node[k % np];
    values[k] = Complex(f(x));
  };
  if (parallel)
    parallel::parallel_for(values.size(), eval);
  else
    for (std::size_t k = 0; k < values.size(); ++k) eval(k);
  std::vector<Panel> out;
  out.reserve(spans.size());
  for (std::size_t p = 0; p < spans.size(); ++p)
    out.push_back(finish_panel(spans[p].first, spans[p].second,
                               std::span<const Complex>(values.data() + p * np, np)));
  return out;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (21-point) integration of a complex-valued
// function on [a, b]. Interior breakpoints, if given, seed the initial panels.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec,
                                    std::span<const double> breakpoints = {}) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate_adaptive: requires a < b");

  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) spans.emplace_back(cuts[i], cuts[i + 1]);
  std::vector<detail::Panel> panels = detail::evaluate_panels(f, spans, spec.parallel);
  int evaluations = static_cast<int>(spans.size()) * detail::GaussKronrod21::kPoints;

  auto totals = [&panels] {
    Complex v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (static_cast<int>(panels.size()) >= spec.max_subdivisions) {
      throw NonConvergence("integrate_adaptive: tolerance not met on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "] after " + std::to_string(panels.size()) +
                               " subdivisions (error estimate " + std::to_string(error) + ")",
                           error, static_cast<int>(panels.size()));
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      throw NonConvergence("integrate_adaptive: panel at " + std::to_string(lo) +
                               " cannot be bisected further (integrand pathology)",
                           error, static_cast<int>(panels.size()));
    }
    auto children = detail::evaluate_panels(f, {{lo, mid}, {mid, hi}}, spec.parallel);
    evaluations += 2 * detail::GaussKronrod21::kPoints;
    *worst = children[0];
    panels.push_back(children[1]);
    std::tie(value, error) = totals();
  }

  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  std::tie(value, error) = totals();
  QuadratureResult result;
  result.value = require_finite(value, "integrate_adaptive");
  result.error = error;
  result.evaluations = evaluations;
  result.subdivisions = static_cast<int>(panels.size());
  result.upper = b;
  return result;
}

// Envelope certified by the caller for a half-line integrand:
// |f(P)| <= scale * (1 + P)^degree * exp(-decay_rate * P^2).
struct GaussianTail {
  double scale = 1.0;
  int degree = 0;
};

// Upper bound on the integral of the envelope over [x, inf).
inline double gaussian_tail_bound(double x, double decay_rate, const GaussianTail& tail) {
  const double slope = 2.0 * decay_rate * x - tail.degree / (1.0 + x);
  if (slope <= 0.0) return std::numeric_limits<double>::infinity();
  return tail.scale * std::pow(1.0 + x, tail.degree) * std::exp(-decay_rate * x * x) / slope;
}

// Smallest cut (to ~1e-3 relative) at which the tail bound drops below target.
inline double gaussian_cut(double decay_rate, const GaussianTail& tail, double target) {
  double hi = std::sqrt(1.0 / decay_rate);
  while (gaussian_tail_bound(hi, decay_rate, tail) > target) {
    hi *= 1.5;
    if (hi > 1e8) return hi;
  }
  double lo = 0.0;
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (gaussian_tail_bound(mid, decay_rate, tail) > target ? lo : hi) = mid;
  }
  return hi;
}

// Integral over [0, inf) of an integrand with certified Gaussian decay. The
// range is cut where the envelope's tail drops below abs_tol (or rel_tol times
// the envelope scale when abs_tol is smaller); the remainder is adaptive.
template <class F>
QuadratureResult integrate_halfline_gaussian(F&& f, double decay_rate, const QuadratureSpec& spec,
                                             const GaussianTail& tail = {}) {
  spec.validate();
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate))
    throw InvalidDecay("integrate_halfline_gaussian: decay_rate must be positive and finite, got " +
                       std::to_string(decay_rate));
  const double target = std::max(spec.abs_tol, 1e-3 * spec.rel_tol * tail.scale);
  const double cut = gaussian_cut(decay_rate, tail, target);
  if (cut > spec.truncation_bound) {
    throw NonConvergence("integrate_halfline_gaussian: Gaussian tail needs P_max = " +
                             std::to_string(cut) + " beyond truncation_bound " +
                             std::to_string(spec.truncation_bound),
                         gaussian_tail_bound(spec.truncation_bound, decay_rate, tail), 0);
  }
  QuadratureResult r = integrate_adaptive(f, 0.0, cut, spec);
  r.error += gaussian_tail_bound(cut, decay_rate, tail);
  r.upper = cut;
  return r;
}

}  // namespace liouville
