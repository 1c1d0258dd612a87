#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"

namespace liouville {

// Number of the factors of prod (1 - q^n) actually used: at least n_terms and
// enough that the dropped tail changes the product by less than 1e-16.
inline int eta_product_length(double q, int n_terms) {
  int n = std::max(1, n_terms);
  // log prod_{k > n} (1 - q^k) ~ -q^{n+1} / (1 - q)
  while (std::pow(q, n + 1) / (1.0 - q) >= 1e-16) ++n;
  return n;
}

// Dedekind eta: q^{1/24} prod_{n >= 1} (1 - q^n), 0 < q < 1.
inline double dedekind_eta(double q, int n_terms = 1) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("dedekind_eta: q must lie in (0, 1), got " + std::to_string(q));
  if (n_terms < 1) throw DomainError("dedekind_eta: n_terms must be >= 1");
  const int n = eta_product_length(q, n_terms);
  // Summing log1p keeps full relative accuracy when q is close to 1.
  double log_prod = 0.0;
  double qn = 1.0;
  for (int k = 1; k <= n; ++k) {
    qn *= q;
    log_prod += std::log1p(-qn);
  }
  return std::exp(std::log(q) / 24.0 + log_prod);
}

namespace detail {
// log q is passed separately so that q itself may underflow.
inline double log_eta_product(double q, double log_q) {
  const int n = q > 0.0 ? eta_product_length(q, 1) : 0;
  double s = log_q / 24.0;
  double qn = 1.0;
  for (int k = 1; k <= n; ++k) {
    qn *= q;
    s += std::log1p(-qn);
  }
  return s;
}
}  // namespace detail

// log eta(q); avoids underflow of eta itself for q close to 1. With
// q = exp(-2 pi t), t < 1 is mapped by eta(e^{-2 pi t}) = t^{-1/2} eta(e^{-2 pi / t}),
// since the product would otherwise need ~ 40 / (1 - q) factors.
inline double log_dedekind_eta(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("log_dedekind_eta: q must lie in (0, 1)");
  const double t = -std::log(q) / (2.0 * kPi);
  if (t >= 1.0) return detail::log_eta_product(q, std::log(q));
  const double log_dual = -2.0 * kPi / t;
  return -0.5 * std::log(t) + detail::log_eta_product(std::exp(log_dual), log_dual);
}

// Partition numbers P(0..n) from Euler's pentagonal recurrence. Exact in
// 64-bit arithmetic up to n = 400.
inline std::vector<std::uint64_t> partition_counts(int n) {
  if (n < 0) throw DomainError("partition_counts: n must be >= 0");
  if (n > 400) throw DomainError("partition_counts: n > 400 overflows 64-bit integers");
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::int64_t s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      s += sign * p[m - g1];
      const int g2 = k * (3 * k + 1) / 2;
      if (g2 <= m) s += sign * p[m - g2];
    }
    p[m] = s;
  }
  return {p.begin(), p.end()};
}

inline std::uint64_t partition_count(int n) { return partition_counts(n).back(); }

}  // namespace liouville
