#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"

namespace liouville {

// Coupling constants of the theory. The boundary cosmological constant is
// stored either as mu_boundary or as the FZZ parameter theta; the other one is
// derived from cos(pi gamma theta / 2) = (mu_B / sqrt(mu)) sqrt(sin(pi gamma^2 / 4)).
struct LiouvilleParams {
  double gamma = 1.0;
  double mu = 1.0;
  std::optional<double> mu_boundary;
  std::optional<Complex> theta_value;

  static LiouvilleParams bulk_only(double gamma, double mu = 1.0) {
    LiouvilleParams p;
    p.gamma = gamma;
    p.mu = mu;
    p.validate();
    return p;
  }
  static LiouvilleParams with_mu_boundary(double gamma, double mu, double mu_b) {
    LiouvilleParams p;
    p.gamma = gamma;
    p.mu = mu;
    p.mu_boundary = mu_b;
    p.validate();
    return p;
  }
  static LiouvilleParams with_theta(double gamma, double mu, Complex theta) {
    LiouvilleParams p;
    p.gamma = gamma;
    p.mu = mu;
    p.theta_value = theta;
    p.validate();
    return p;
  }

  // a = gamma/2 and b = 2/gamma are the two periods of the double Gamma lattice.
  double a() const { return 0.5 * gamma; }
  double b() const { return 2.0 / gamma; }
  double Q() const { return a() + b(); }
  double c_L() const { return 1.0 + 6.0 * Q() * Q(); }
  double c_m() const { return 25.0 - 6.0 * Q() * Q(); }

  void validate() const {
    if (!(gamma > 0.0 && gamma < 2.0))
      throw DomainError("gamma must lie in (0, 2), got " + std::to_string(gamma));
    if (!(mu >= 0.0) || !std::isfinite(mu))
      throw DomainError("mu must be finite and >= 0, got " + std::to_string(mu));
    if (mu_boundary && theta_value)
      throw DomainError("give either mu_boundary or theta, not both");
    if (mu_boundary && !(*mu_boundary > 0.0 && std::isfinite(*mu_boundary)))
      throw DomainError("mu_boundary must be finite and > 0");
    if (theta_value && !is_finite(*theta_value)) throw DomainError("theta must be finite");
  }

  bool has_boundary() const { return mu_boundary.has_value() || theta_value.has_value(); }

  // kappa * mu_B = cos(pi gamma theta / 2).
  double kappa() const {
    if (!(mu > 0.0)) throw DomainError("theta <-> mu_boundary relation requires mu > 0");
    return std::sqrt(std::sin(kPi * gamma * gamma / 4.0) / mu);
  }

  // Real theta in [0, 1/gamma) when kappa mu_B <= 1, otherwise theta in i[0, inf).
  Complex theta() const {
    if (theta_value) return *theta_value;
    if (!mu_boundary) throw DomainError("no boundary cosmological constant given");
    const double x = kappa() * *mu_boundary;
    if (std::abs(x - 1.0) < 1e-12)
      throw BranchError("mu_B^2 sin(pi gamma^2/4) / mu = 1 to within 1e-12: theta branch junction");
    const double s = 2.0 / (kPi * gamma);
    if (x < 1.0) return {s * std::acos(x), 0.0};
    return {0.0, s * std::acosh(x)};
  }

  // mu_B from theta (inverse of the cosine relation).
  double boundary_cosmological_constant() const {
    if (mu_boundary) return *mu_boundary;
    const Complex c = std::cos(kPi * gamma * *theta_value / 2.0) / kappa();
    if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c)))
      throw DomainError("theta does not correspond to a real mu_boundary");
    return c.real();
  }

  // d theta / d mu_B from differentiating the cosine relation.
  Complex dtheta_dmu_b() const {
    const Complex th = theta();
    const Complex s = std::sin(kPi * gamma * th / 2.0);
    if (std::abs(s) < 1e-12)
      throw BranchError("d theta / d mu_B diverges at the branch junction (theta = 0)");
    return -2.0 * kappa() / (kPi * gamma * s);
  }
};

// Delta_alpha = (alpha/2)(Q - alpha/2).
inline Complex conformal_weight(Complex alpha, double Q) { return 0.5 * alpha * (Q - 0.5 * alpha); }

struct ConformalWeight {
  Complex value;
  Complex source_charge;

  static ConformalWeight of(Complex charge, const LiouvilleParams& p) {
    return {conformal_weight(charge, p.Q()), charge};
  }
};

}  // namespace liouville
