#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/parallel.hpp"
#include "liouville/numerics/quadrature.hpp"

using namespace liouville;

namespace {

// Composite Simpson on [a, b] with n panels (n even).
template <class F>
Complex simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  Complex s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

template <class F>
Complex trapezoid(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  Complex s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

}  // namespace

TEST(Adaptive, Constant) {
  const auto r = integrate_adaptive([](double) { return Complex(1.0); }, 0.0, 1.0, {});
  EXPECT_NEAR(r.value.real(), 1.0, 1e-15);
  EXPECT_EQ(r.value.imag(), 0.0);
}

TEST(Adaptive, TruncatedExponential) {
  QuadratureSpec spec;
  spec.truncation_bound = 50.0;
  const auto r = integrate_adaptive([](double t) { return Complex(std::exp(-t)); }, 0.0, spec.truncation_bound, spec);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-12);
}

TEST(Adaptive, OscillatoryAgainstSimpson) {
  auto f = [](double t) { return t * std::exp(Complex(0.0, t)); };
  const Complex oracle = simpson(f, 0.0, 1.0, 1000000);
  const auto r = integrate_adaptive(f, 0.0, 1.0, {});
  EXPECT_LT(std::abs(r.value - oracle), 1e-12);
  // the oracle itself against the closed form (1 - i) e^i - 1
  const Complex exact = Complex(1.0, -1.0) * std::exp(Complex(0.0, 1.0)) - 1.0;
  EXPECT_LT(std::abs(oracle - exact), 1e-12);
}

TEST(Adaptive, ErrorEstimateMeetsTolerance) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  const auto r = integrate_adaptive([](double t) { return Complex(std::sqrt(t)); }, 0.0, 1.0, spec);
  EXPECT_LE(r.error, std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)));
  EXPECT_NEAR(r.value.real(), 2.0 / 3.0, 1e-9);
}

TEST(Adaptive, BreakpointsHelpKinks) {
  const std::array<double, 1> br{0.3};
  const auto r = integrate_adaptive([](double t) { return Complex(std::abs(t - 0.3)); }, 0.0, 1.0, {}, br);
  EXPECT_NEAR(r.value.real(), (0.09 + 0.49) / 2.0, 1e-14);
}

TEST(Adaptive, NonConvergence) {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  spec.rel_tol = 1e-14;
  EXPECT_THROW(integrate_adaptive([](double t) { return Complex(std::sin(200.0 * t) / (t + 1e-3)); }, 0.0, 1.0, spec),
               NonConvergence);
}

TEST(Adaptive, InvalidSpec) {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  EXPECT_THROW(integrate_adaptive([](double) { return Complex(1.0); }, 0.0, 1.0, spec), DomainError);
  EXPECT_THROW(integrate_adaptive([](double) { return Complex(1.0); }, 1.0, 0.0, {}), DomainError);
}

TEST(HalfLine, Gaussian) {
  const auto r = integrate_halfline_gaussian([](double P) { return Complex(std::exp(-P * P / 2.0)); }, 0.5, {});
  EXPECT_NEAR(r.value.real(), std::sqrt(kPi / 2.0), 1e-10);
}

TEST(HalfLine, LinearTimesGaussian) {
  const auto r = integrate_halfline_gaussian([](double P) { return Complex(P * std::exp(-P * P)); }, 1.0, {},
                                             GaussianTail{1.0, 1});
  EXPECT_NEAR(r.value.real(), 0.5, 1e-10);
}

TEST(HalfLine, CosineAgainstTrapezoid) {
  auto f = [](double P) { return Complex(std::cos(P) * std::exp(-P * P)); };
  const Complex oracle = trapezoid(f, 0.0, 20.0, 10000000);
  const auto r = integrate_halfline_gaussian(f, 1.0, {});
  EXPECT_LT(std::abs(r.value - oracle), 1e-10);
  EXPECT_NEAR(oracle.real(), std::sqrt(kPi) / 2.0 * std::exp(-0.25), 1e-11);  // summation rounding of 1e7 terms
}

TEST(HalfLine, InvalidDecay) {
  EXPECT_THROW(integrate_halfline_gaussian([](double) { return Complex(1.0); }, 0.0, {}), InvalidDecay);
  EXPECT_THROW(integrate_halfline_gaussian([](double) { return Complex(1.0); }, -1.0, {}), InvalidDecay);
}

TEST(HalfLine, CutRespectsTailBound) {
  const GaussianTail tail{3.0, 2};
  const double cut = gaussian_cut(0.7, tail, 1e-14);
  EXPECT_LE(gaussian_tail_bound(cut, 0.7, tail), 1e-14);
  EXPECT_GT(gaussian_tail_bound(0.99 * cut, 0.7, tail), 1e-14);
}

TEST(Properties, Linearity) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  QuadratureSpec spec;
  for (int k = 0; k < 10; ++k) {
    const double w1 = u(rng), w2 = u(rng), c1 = u(rng), c2 = u(rng);
    auto f = [&](double t) { return Complex(std::sin(w1 * t) + t * t, std::cos(w2 * t)); };
    auto g = [&](double t) { return Complex(std::exp(c1 * t), std::atan(c2 * t)); };
    const Complex a = Complex(u(rng), u(rng)), b = Complex(u(rng), u(rng));
    const Complex lhs = integrate_adaptive([&](double t) { return a * f(t) + b * g(t); }, 0.0, 2.0, spec).value;
    const Complex rhs = a * integrate_adaptive(f, 0.0, 2.0, spec).value + b * integrate_adaptive(g, 0.0, 2.0, spec).value;
    EXPECT_LT(std::abs(lhs - rhs), 10.0 * spec.rel_tol * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Properties, RefinementMonotone) {
  auto f = [](double t) { return t * std::exp(Complex(0.0, 5.0 * t)) / (1.0 + t * t); };
  const Complex oracle = simpson(f, 0.0, 3.0, 2000000);
  double last = 1.0;
  for (double tol : {1e-4, 5e-5, 2.5e-5, 1.25e-5, 6.25e-6}) {
    QuadratureSpec spec;
    spec.rel_tol = tol;
    const double err = std::abs(integrate_adaptive(f, 0.0, 3.0, spec).value - oracle);
    EXPECT_LE(err, last * (1.0 + 1e-9));
    last = err;
  }
}

TEST(Parallel, SameResultAnyThreadCount) {
  auto f = [](double t) { return std::exp(Complex(-t, 3.0 * t)) / (1.0 + t); };
  QuadratureSpec serial, par;
  par.parallel = true;
  setenv("LIOUVILLE_THREADS", "1", 1);
  const auto a = integrate_adaptive(f, 0.0, 10.0, serial);
  setenv("LIOUVILLE_THREADS", "4", 1);
  const auto b = integrate_adaptive(f, 0.0, 10.0, par);
  unsetenv("LIOUVILLE_THREADS");
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error, b.error);
}

TEST(Parallel, LowestIndexFailureWins) {
  setenv("LIOUVILLE_THREADS", "4", 1);
  try {
    parallel::parallel_for(64, [](std::size_t i) {
      if (i == 5 || i == 40) throw DomainError("fail " + std::to_string(i));
    });
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "fail 5");
  }
  unsetenv("LIOUVILLE_THREADS");
}

TEST(Complex, LogValueZeroFlag) {
  LogValue z = LogValue::Zero();
  z *= LogValue{Complex(3.0, 1.0), false};
  EXPECT_EQ(z.value(), Complex(0.0));
  EXPECT_LT(rel_diff(LogValue{Complex(std::log(2.0), 0.0), false}.value(), 2.0), 1e-15);
}
