#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/quadrature.hpp"
#include "liouville/specialfn/eta.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/structure/bulk_boundary.hpp"
#include "liouville/structure/fzz.hpp"
#include "liouville/virasoro/block.hpp"

namespace liouville {

struct BootstrapOptions {
  // Outer P-integral.
  QuadratureSpec spec{1e-9, 1e-15, 2000, 200.0, false};
  // t-integrals inside G for beta != gamma.
  QuadratureSpec bulk_boundary_spec{1e-10, 1e-16, 4000, 1e3, false};
  int block_truncation = 12;
  bool record_samples = false;
  // Boundary constant of the second annulus boundary (the U_FZZ factor, or
  // the beta2 insertion) when it differs from the first. gamma and mu must
  // match the main parameters.
  std::optional<LiouvilleParams> second_boundary;
};

struct BootstrapResult {
  Complex value{};
  double P_max = 0.0;
  double quadrature_error = 0.0;
  // |integrand(P_max)|, evaluated directly at the cut.
  double cut_value = 0.0;
  int evaluations = 0;
  // Smallest block truncation actually used (levels with a numerically
  // singular Gram matrix are dropped) and the largest block tail estimate.
  int block_truncation = 0;
  double block_tail = 0.0;
  bool conjectural = false;
  // Integrand without the constant prefactors, sorted by P.
  std::vector<std::pair<double, Complex>> integrand_samples;
};

// pi^{1/2} / (2^{5/2} e)
inline double bootstrap_prefactor() { return std::sqrt(kPi) / (std::pow(2.0, 2.5) * std::numbers::e); }

namespace detail {

inline void require_bootstrap_params(const LiouvilleParams& p, double q) {
  p.validate();
  if (!(p.mu > 0.0)) throw DomainError("bootstrap formulas need mu > 0 (U_FZZ is defined for mu > 0)");
  if (!p.has_boundary()) throw DomainError("bootstrap formulas need mu_boundary or theta");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0, 1), got " + std::to_string(q));
}

inline void require_beta(double beta, const LiouvilleParams& p, const char* name) {
  if (!(beta > 0.0 && beta < p.Q()))
    throw DomainError(std::string(name) + " must lie in (0, Q) = (0, " + std::to_string(p.Q()) + "), got " +
                      std::to_string(beta));
}

inline void require_unit(Complex b, const char* name) {
  if (std::abs(std::abs(b) - 1.0) > 1e-12) throw DomainError(std::string(name) + " must have modulus 1");
}

inline bool is_gamma_insertion(double beta, const LiouvilleParams& p) { return beta == p.gamma; }

// Below this P the integrand is replaced by its value here; every integrand
// is continuous at P = 0 while the individual factors have a pole/zero pair.
inline constexpr double kSmallP = 1e-7;

// Records integrand samples when asked; the final list is sorted by P so the
// output does not depend on evaluation order.
class SampleLog {
 public:
  explicit SampleLog(bool on) : on_(on) {}
  void add(double P, Complex v) {
    if (!on_) return;
    std::lock_guard lock(m_);
    s_.emplace_back(P, v);
  }
  std::vector<std::pair<double, Complex>> take() {
    std::sort(s_.begin(), s_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return std::move(s_);
  }

 private:
  bool on_;
  std::mutex m_;
  std::vector<std::pair<double, Complex>> s_;
};

class BlockStats {
 public:
  explicit BlockStats(int n) : truncation_(n) {}
  void add(int truncation, double tail) {
    std::lock_guard lock(m_);
    truncation_ = std::min(truncation_, truncation);
    tail_ = std::max(tail_, tail);
  }
  int truncation() const { return truncation_; }
  double tail() const { return tail_; }

 private:
  std::mutex m_;
  int truncation_;
  double tail_ = 0.0;
};

// Half-line P-integral of an integrand with Gaussian decay at the given rate.
// The envelope keeps half of the rate in reserve against the at most
// exponential growth of the structure constants and is calibrated on a grid:
//   |f(P)| <= scale exp(-(rate/2) P^2).
template <class F>
BootstrapResult gaussian_spectral_integral(F&& f, double decay, const QuadratureSpec& spec,
                                           std::vector<double> breakpoints) {
  const double rate = decay / 2.0;
  double scale = 0.0;
  for (double P : {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0}) {
    if (rate * P * P > 80.0) break;
    scale = std::max(scale, std::abs(f(P)) * std::exp(rate * P * P));
  }
  scale *= 4.0;
  const GaussianTail tail{scale, 0};
  const double target = std::max(spec.abs_tol, 1e-3 * spec.rel_tol * scale);
  const double cut = gaussian_cut(rate, tail, target);
  if (cut > spec.truncation_bound)
    throw NonConvergence("spectral integral: Gaussian tail needs P_max = " + std::to_string(cut) +
                             " beyond truncation_bound " + std::to_string(spec.truncation_bound),
                         gaussian_tail_bound(spec.truncation_bound, rate, tail), 0);
  std::erase_if(breakpoints, [cut](double b) { return !(b > 0.0 && b < cut); });
  const QuadratureResult r = integrate_adaptive(f, 0.0, cut, spec, breakpoints);
  BootstrapResult out;
  out.value = r.value;
  out.P_max = cut;
  out.quadrature_error = r.error + gaussian_tail_bound(cut, rate, tail);
  out.cut_value = std::abs(f(cut));
  out.evaluations = r.evaluations;
  return out;
}

// Integrand carrying q^{P^2/2}.
template <class F>
BootstrapResult spectral_integral(F&& f, double q, const BootstrapOptions& opt, std::vector<double> breakpoints) {
  return gaussian_spectral_integral(f, -std::log(q) / 2.0, opt.spec, std::move(breakpoints));
}

inline double clamp_small_p(double P) { return std::max(P, kSmallP); }

inline const LiouvilleParams& second_boundary(const LiouvilleParams& p, const BootstrapOptions& opt) {
  if (!opt.second_boundary) return p;
  const LiouvilleParams& s = *opt.second_boundary;
  if (s.gamma != p.gamma || s.mu != p.mu) throw DomainError("second boundary must share gamma and mu");
  if (!s.has_boundary()) throw DomainError("second boundary needs mu_boundary or theta");
  return s;
}

// G(Q+iP, gamma) U_FZZ(Q-iP) with possibly different boundary constants.
inline Complex gamma_product(double P, const LiouvilleParams& p, const LiouvilleParams& p2) {
  if (&p == &p2) return gamma_fzz_product(P, p);
  return g_gamma_derivative(clamp_small_p(P), p) * fzz_one_point(Complex(p.Q(), -clamp_small_p(P)), p2);
}

}  // namespace detail

// G_theta(Q + iP, beta) as used by the bootstrap integrands.
inline Complex bootstrap_bulk_boundary(double P, double beta, const LiouvilleParams& p, const QuadratureSpec& spec) {
  if (detail::is_gamma_insertion(beta, p)) return g_gamma_derivative(P, p);
  return bulk_boundary_bootstrap(Complex(p.Q(), P), beta, p, spec).value;
}

// Theorem-1.3 side: prefactor * int G(Q+iP, gamma) U_FZZ(Q-iP) q^{P^2/2} dP / eta(q^2).
inline BootstrapResult gamma_insertion_bootstrap(double q, const LiouvilleParams& p, const BootstrapOptions& opt = {}) {
  detail::require_bootstrap_params(p, q);
  const LiouvilleParams& p2 = detail::second_boundary(p, opt);
  detail::SampleLog log(opt.record_samples);
  auto f = [&](double P) {
    const Complex v = detail::gamma_product(P, p, p2) * std::pow(q, P * P / 2.0);
    log.add(P, v);
    return v;
  };
  BootstrapResult r = detail::spectral_integral(f, q, opt, {});
  const double c = bootstrap_prefactor() / dedekind_eta(q * q);
  r.value *= c;
  r.quadrature_error *= c;
  r.integrand_samples = log.take();
  return r;
}

// Annulus with one boundary insertion of weight beta1:
//   prefactor q^{-1/12} int G(Q+iP, beta1) U_FZZ(Q-iP) q^{P^2/2} F^A(Delta_beta1, Delta_{Q+iP}, q) dP
// F^A is the torus 1-point block in q^2. For beta1 = gamma the product G U
// is taken from the combined closed form, which is finite at P = 0.
inline BootstrapResult one_point_bootstrap(double beta1, Complex b, double q, const LiouvilleParams& p,
                                           const BootstrapOptions& opt = {}) {
  detail::require_bootstrap_params(p, q);
  detail::require_beta(beta1, p, "beta1");
  detail::require_unit(b, "b");
  const double Q = p.Q();
  const bool gamma_case = detail::is_gamma_insertion(beta1, p);
  const Complex h = conformal_weight(beta1, Q);
  const LiouvilleParams& p2 = detail::second_boundary(p, opt);
  detail::SampleLog log(opt.record_samples);
  detail::BlockStats stats(opt.block_truncation);
  auto f = [&](double P) {
    P = detail::clamp_small_p(P);
    const Complex gu = gamma_case ? detail::gamma_product(P, p, p2)
                                  : bootstrap_bulk_boundary(P, beta1, p, opt.bulk_boundary_spec) *
                                        fzz_one_point(Complex(Q, -P), p2);
    const BlockSeries s = block_series_from_weights(BlockKind::Annulus1pt, {h}, {conformal_weight(Complex(Q, P), Q)},
                                                    p.c_L(), opt.block_truncation, BlockRoute::GramInverse,
                                                    SingularPolicy::Truncate);
    const BlockValue blk = evaluate_block(s, q);
    stats.add(s.truncation, blk.tail_bound / std::max(std::abs(blk.value), 1e-300));
    const Complex v = gu * std::pow(q, P * P / 2.0) * blk.value;
    log.add(P, v);
    return v;
  };
  BootstrapResult r = detail::spectral_integral(f, q, opt, {});
  const double c = bootstrap_prefactor() * std::pow(q, -1.0 / 12.0);
  r.value *= c;
  r.quadrature_error *= c;
  r.block_truncation = stats.truncation();
  r.block_tail = stats.tail();
  r.conjectural = !gamma_case;
  r.integrand_samples = log.take();
  return r;
}

// Annulus with one insertion on each boundary:
//   prefactor q^{-1/12} int G(Q+iP, beta1) G(Q-iP, beta2) q^{P^2/2} F^A(Delta_b1, Delta_b2, Delta_{Q+iP}, q, b1, b2) dP
inline BootstrapResult two_point_bootstrap(double beta1, double beta2, Complex b1, Complex b2, double q,
                                           const LiouvilleParams& p, const BootstrapOptions& opt = {}) {
  detail::require_bootstrap_params(p, q);
  detail::require_beta(beta1, p, "beta1");
  detail::require_beta(beta2, p, "beta2");
  detail::require_unit(b1, "b1");
  detail::require_unit(b2, "b2");
  const double Q = p.Q();
  const Complex h1 = conformal_weight(beta1, Q), h2 = conformal_weight(beta2, Q);
  const Complex b1b2 = b1 * b2;
  const LiouvilleParams& p2 = detail::second_boundary(p, opt);
  detail::SampleLog log(opt.record_samples);
  detail::BlockStats stats(opt.block_truncation);
  auto g_minus = [&](double P) {
    // G(Q - iP, beta)
    if (detail::is_gamma_insertion(beta2, p)) return fzz_mu_b_derivative(Complex(Q, -P), p2) / (2.0 * kPi);
    return bulk_boundary_bootstrap(Complex(Q, -P), beta2, p2, opt.bulk_boundary_spec).value;
  };
  auto f = [&](double P) {
    P = detail::clamp_small_p(P);
    const Complex gg = bootstrap_bulk_boundary(P, beta1, p, opt.bulk_boundary_spec) * g_minus(P);
    const BlockSeries s = block_series_from_weights(BlockKind::Annulus2pt, {h1, h2},
                                                    {conformal_weight(Complex(Q, P), Q)}, p.c_L(),
                                                    opt.block_truncation, BlockRoute::GramInverse,
                                                    SingularPolicy::Truncate);
    const BlockValue blk = evaluate_block(s, q, b1b2);
    stats.add(s.truncation, blk.tail_bound / std::max(std::abs(blk.value), 1e-300));
    const Complex v = gg * std::pow(q, P * P / 2.0) * blk.value;
    log.add(P, v);
    return v;
  };
  // A small beta makes G(Q - iP, beta) approach the pole of U_FZZ at P = 0
  // over a P-range of order beta.
  const double bmin = std::min(beta1, beta2);
  BootstrapResult r = detail::spectral_integral(f, q, opt, {bmin, 10.0 * bmin, 100.0 * bmin});
  const double c = bootstrap_prefactor() * std::pow(q, -1.0 / 12.0);
  r.value *= c;
  r.quadrature_error *= c;
  r.block_truncation = stats.truncation();
  r.block_tail = stats.tail();
  r.conjectural = !(detail::is_gamma_insertion(beta1, p) && detail::is_gamma_insertion(beta2, p));
  r.integrand_samples = log.take();
  return r;
}

}  // namespace liouville
