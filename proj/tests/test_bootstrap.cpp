#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "liouville/bootstrap/bootstrap.hpp"
#include "liouville/bootstrap/lqg.hpp"

using namespace liouville;

namespace {

BootstrapOptions fast_options() {
  BootstrapOptions o;
  o.spec.rel_tol = 1e-7;
  return o;
}

}  // namespace

TEST(GammaInsertion, RealAndFinite) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 1.0);
  const auto r = gamma_insertion_bootstrap(0.3, p);
  EXPECT_TRUE(is_finite(r.value));
  EXPECT_LT(std::abs(r.value.imag()), 1e-8 * std::abs(r.value));
  EXPECT_LE(r.quadrature_error, 1e-9 * std::abs(r.value));
  EXPECT_FALSE(r.conjectural);
}

TEST(GammaInsertion, EtaFactorRefactoring) {
  // result * eta(q^2) / prefactor is the bare Gaussian-weighted integral
  const auto p = LiouvilleParams::with_mu_boundary(1.3, 0.8, 0.7);
  const double q = 0.4;
  const BootstrapOptions opt;
  const auto r = gamma_insertion_bootstrap(q, p, opt);
  const auto bare = detail::spectral_integral(
      [&](double P) { return gamma_fzz_product(P, p) * std::pow(q, P * P / 2.0); }, q, opt, {});
  EXPECT_LT(rel_diff(r.value * dedekind_eta(q * q) / bootstrap_prefactor(), bare.value), 1e-12);
}

TEST(GammaInsertion, TruncationShrinksWithSmallerQ) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  const auto r_half = gamma_insertion_bootstrap(0.5, p), r_quarter = gamma_insertion_bootstrap(0.25, p);
  EXPECT_LT(r_quarter.P_max, r_half.P_max);
  // the cut is where the Gaussian envelope drops below tolerance
  EXPECT_LT(r_half.cut_value, 1e-6 * std::abs(gamma_fzz_product(0.0, p)));
}

TEST(OnePoint, GammaCaseMatchesGammaInsertion) {
  const auto p = LiouvilleParams::with_mu_boundary(1.3, 1.0, 0.5);
  for (double q : {0.2, 0.4}) {
    const auto a = one_point_bootstrap(p.gamma, 1.0, q, p);
    const auto b = gamma_insertion_bootstrap(q, p);
    EXPECT_LT(rel_diff(a.value, b.value), 1e-7) << q;
    EXPECT_FALSE(a.conjectural);
  }
}

TEST(OnePoint, IntegrandBoundedNearZero) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  const BootstrapOptions opt;
  auto integrand = [&](double P) {
    return bootstrap_bulk_boundary(P, 0.8, p, opt.bulk_boundary_spec) * fzz_one_point(Complex(p.Q(), -P), p);
  };
  EXPECT_LT(std::abs(integrand(1e-6)), 10.0 * std::abs(integrand(1e-3)));
  EXPECT_LT(std::abs(gamma_fzz_product(1e-6, p)), 10.0 * std::abs(gamma_fzz_product(1e-3, p)));
}

TEST(OnePoint, RealForRealParameters) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  const auto r = one_point_bootstrap(0.8, 1.0, 0.4, p, fast_options());
  EXPECT_LT(std::abs(r.value.imag()), 1e-8 * std::abs(r.value));
  EXPECT_TRUE(r.conjectural);
  EXPECT_GT(r.block_truncation, 0);
}

TEST(TwoPoint, RealForRealParameters) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  const auto r = two_point_bootstrap(1.0, 1.0, 1.0, 1.0, 0.4, p, fast_options());  // beta = gamma on both sides
  EXPECT_TRUE(is_finite(r.value));
  EXPECT_FALSE(r.conjectural);
  EXPECT_LT(std::abs(r.value.imag()), 1e-8 * std::abs(r.value));
}

TEST(Bootstrap, DomainChecks) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  EXPECT_THROW(gamma_insertion_bootstrap(1.0, p), DomainError);
  EXPECT_THROW(gamma_insertion_bootstrap(0.0, p), DomainError);
  EXPECT_THROW(gamma_insertion_bootstrap(0.3, LiouvilleParams::bulk_only(1.0)), DomainError);
  EXPECT_THROW(gamma_insertion_bootstrap(0.3, LiouvilleParams::with_mu_boundary(1.0, 0.0, 0.6)), DomainError);
  EXPECT_THROW(one_point_bootstrap(p.Q(), 1.0, 0.3, p), DomainError);
  EXPECT_THROW(one_point_bootstrap(1.0, Complex(0.5, 0.0), 0.3, p), DomainError);
  EXPECT_THROW(two_point_bootstrap(1.0, -0.1, 1.0, 1.0, 0.3, p), DomainError);
}

TEST(Bootstrap, SecondBoundary) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  BootstrapOptions same;
  same.second_boundary = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.6);
  EXPECT_LT(rel_diff(gamma_insertion_bootstrap(0.3, p, same).value, gamma_insertion_bootstrap(0.3, p).value), 1e-9);

  BootstrapOptions other;
  other.second_boundary = LiouvilleParams::with_mu_boundary(1.0, 1.0, 1.5);
  const auto r = gamma_insertion_bootstrap(0.3, p, other);
  EXPECT_TRUE(is_finite(r.value));
  EXPECT_GT(rel_diff(r.value, gamma_insertion_bootstrap(0.3, p).value), 1e-3);

  BootstrapOptions bad;
  bad.second_boundary = LiouvilleParams::with_mu_boundary(1.1, 1.0, 0.6);
  EXPECT_THROW(gamma_insertion_bootstrap(0.3, p, bad), DomainError);
}

TEST(Bootstrap, SamplesSortedAndThreadIndependent) {
  const auto p = LiouvilleParams::with_mu_boundary(1.2, 1.0, 0.8);
  BootstrapOptions opt;
  opt.record_samples = true;
  setenv("LIOUVILLE_THREADS", "1", 1);
  const auto a = gamma_insertion_bootstrap(0.35, p, opt);
  opt.spec.parallel = true;
  setenv("LIOUVILLE_THREADS", "3", 1);
  const auto b = gamma_insertion_bootstrap(0.35, p, opt);
  unsetenv("LIOUVILLE_THREADS");
  EXPECT_EQ(a.value, b.value);
  ASSERT_FALSE(a.integrand_samples.empty());
  EXPECT_TRUE(std::is_sorted(a.integrand_samples.begin(), a.integrand_samples.end(),
                             [](const auto& x, const auto& y) { return x.first < y.first; }));
  EXPECT_EQ(a.integrand_samples, b.integrand_samples);
}

TEST(Lqg, PrefactorTwoWays) {
  for (double g : {0.7, 1.0, std::sqrt(2.0), 1.8}) {
    const auto p = LiouvilleParams::bulk_only(g);
    const double from_q = 25.0 - 6.0 * p.Q() * p.Q();
    EXPECT_NEAR(detail::c_m_from_gamma(g), from_q, 1e-12);
    EXPECT_LT(std::abs(detail::lqg_prefactor(from_q) / detail::lqg_prefactor(detail::c_m_from_gamma(g)) - 1.0), 1e-13);
    EXPECT_NEAR(p.c_m() + p.c_L(), 26.0, 1e-12);
  }
}

TEST(Lqg, EtaExponentPositiveAndEndpointsVanish) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.5);
  const double k = 6.0 * p.Q() * p.Q() - 24.0;
  EXPECT_GT(k, 0.0);
  // q -> 1: eta(q^2)^k -> 0 faster than any power of 1 - q
  for (double q : {0.99, 0.999}) EXPECT_LT(std::exp(k * log_dedekind_eta(q * q)), std::pow(1.0 - q, 4));
  // q -> 0: eta(q^2)^k <= q^{k/12}
  for (double q : {1e-3, 1e-6}) EXPECT_LE(std::exp(k * log_dedekind_eta(q * q)), std::pow(q, k / 12.0) * (1 + 1e-12));
  // the inner integral is bounded by its q-free majorant
  const QuadratureSpec inner{1e-10, 1e-16, 2000, 200.0, false};
  const double M = std::abs(detail::gaussian_spectral_integral(
                                [&](double P) { return std::abs(2.0 * kPi * gamma_fzz_product(P, p)); }, kLn2, inner, {})
                                .value);
  for (double q : {1e-6, 0.3, 0.9}) EXPECT_LE(std::abs(detail::lqg_inner(q, p, inner)), M * (1 + 1e-9));
}

TEST(Lqg, ConvergesUnderRefinement) {
  const auto p = LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.5);
  LqgOptions coarse;
  coarse.inner.rel_tol = 4e-8;
  coarse.outer.rel_tol = 4e-6;
  coarse.report_grid = {};
  LqgOptions fine = coarse;
  fine.inner.rel_tol /= 4;
  fine.outer.rel_tol /= 4;
  fine.report_grid = {0.1, 0.5};
  const auto a = lqg_partition(p, coarse), b = lqg_partition(p, fine);
  EXPECT_TRUE(std::isfinite(b.value));
  EXPECT_NE(b.value, 0.0);
  EXPECT_LT(std::abs(a.value / b.value - 1.0), 0.01);
  EXPECT_LT(std::abs(b.imag_residual), 1e-8 * std::abs(b.value));
  EXPECT_EQ(b.q_grid_report.size(), 2u);
  EXPECT_NEAR(b.eta_exponent, 6.0 * p.Q() * p.Q() - 24.0, 1e-12);
}

TEST(Lqg, DomainChecks) {
  EXPECT_THROW(lqg_partition(LiouvilleParams::bulk_only(1.0)), DomainError);
  LqgOptions o;
  o.q_max = 1.0;
  EXPECT_THROW(lqg_partition(LiouvilleParams::with_mu_boundary(1.0, 1.0, 0.5), o), DomainError);
}
