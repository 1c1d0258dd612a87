#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/parallel.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/virasoro/partition.hpp"
#include "liouville/virasoro/verma.hpp"

namespace liouville {

struct GramMatrix {
  int level = 0;
  std::vector<Partition> basis;
  Eigen::MatrixXcd entries;
};

namespace detail {

template <class T>
Eigen::MatrixXcd to_eigen(const DenseMatrix<T>& m) {
  Eigen::MatrixXcd out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = Complex(m(i, j));
  return out;
}

inline bool is_real(const Eigen::MatrixXcd& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace detail

// Gram matrices of levels 0..max_level from one module, so the rewriting
// memo is shared.
inline std::vector<GramMatrix> gram_matrices(int max_level, Complex delta, Complex c) {
  VermaModule<Complex> module(delta, c, max_level);
  std::vector<GramMatrix> out;
  for (int n = 0; n <= max_level; ++n)
    out.push_back({n, module.basis().level(n), detail::to_eigen(module.gram(n))});
  return out;
}

inline GramMatrix gram_matrix(int n, Complex delta, Complex c) {
  if (n < 0) throw DomainError("gram_matrix: level must be >= 0");
  return gram_matrices(n, delta, c).back();
}

// Condition number of D^{-1} F D^{-1}, D = diag(sqrt|F_ii|). Scaling removes
// the trivial spread of the diagonal between L_{-1}^n and L_{-n} states.
inline double jacobi_scaled_condition(const Eigen::MatrixXcd& f) {
  const Eigen::Index d = f.rows();
  if (d == 0) return 1.0;
  Eigen::VectorXd s(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double a = std::abs(f(i, i));
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    s(i) = 1.0 / std::sqrt(a);
  }
  const Eigen::MatrixXcd scaled = s.asDiagonal() * f * s.asDiagonal();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(scaled).singularValues();
  if (sv(d - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(d - 1);
}

// F^{-1/2}, the symmetric inverse square root.
//
// Real positive-definite F (the spectrum line): with the scaled Cholesky
// factor F = L L^T and the polar decomposition L^T = U H, H = F^{1/2}, so
// F^{-1/2} = L^{-T} U. Everything is triangular solves and an SVD of a
// column-graded matrix, which keeps the accuracy at the level of the scaled
// condition number; a plain eigendecomposition of F loses it to the spread of
// the diagonal (about 1e-2 relative at level 12).
// Otherwise: F = V diag(lambda) V^{-1} with principal square roots.
inline Eigen::MatrixXcd gram_inverse_sqrt(const Eigen::MatrixXcd& f, double max_condition = 1e12) {
  const double cond = jacobi_scaled_condition(f);
  if (!(cond <= max_condition))
    throw SingularGram("Gram matrix is numerically singular (scaled condition " + std::to_string(cond) + ")", cond);
  if (detail::is_real(f)) {
    const Eigen::MatrixXd fr = f.real();
    const Eigen::VectorXd d = fr.diagonal().cwiseAbs().cwiseSqrt();
    const Eigen::MatrixXd scaled = d.cwiseInverse().asDiagonal() * fr * d.cwiseInverse().asDiagonal();
    Eigen::LLT<Eigen::MatrixXd> llt(scaled);
    if (llt.info() == Eigen::Success && (fr.diagonal().array() > 0.0).all()) {
      const Eigen::MatrixXd l = d.asDiagonal() * Eigen::MatrixXd(llt.matrixL());
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(l.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::MatrixXd u = svd.matrixU() * svd.matrixV().transpose();
      return l.transpose().triangularView<Eigen::Upper>().solve(u).cast<Complex>();
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(f);
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd root = es.eigenvalues().unaryExpr([](Complex l) { return 1.0 / std::sqrt(l); });
  return v * root.asDiagonal() * v.inverse();
}

enum class Normalization { RawW, OrthonormalizedW };

// Matrix elements between descendants of levels n, m <= max_level.
// blocks[n][m] has rows indexed by partitions of n and columns by partitions
// of m. In diagonal_only mode only the n == m blocks are kept.
struct BlockCoefficients {
  int max_level = 0;
  Normalization normalization = Normalization::RawW;
  Complex delta_insert{}, delta_spec{}, central_charge{};
  bool diagonal_only = false;
  std::vector<std::vector<Eigen::MatrixXcd>> blocks;

  bool has_block(int n, int m) const {
    return n >= 0 && m >= 0 && n <= max_level && m <= max_level && (!diagonal_only || n == m);
  }
  const Eigen::MatrixXcd& block(int n, int m) const {
    if (!has_block(n, m)) throw DomainError("BlockCoefficients: level pair not stored");
    return blocks[n][m];
  }
  Complex at(const Partition& nu, const Partition& nu_tilde) const {
    const int n = nu.size(), m = nu_tilde.size();
    const auto& b = block(n, m);
    const PartitionTable tab(std::max(n, m));
    return b(tab.index_of(nu), tab.index_of(nu_tilde));
  }
};

// Raw w(nu, nu~) for a primary of weight delta_insert between descendants of
// delta_spec at central charge c.
inline BlockCoefficients raw_matrix_elements(Complex delta_insert, Complex delta_spec, Complex c, int max_level,
                                             bool diagonal_only = false) {
  if (max_level < 0) throw DomainError("raw_matrix_elements: max_level must be >= 0");
  VermaModule<Complex> module(delta_spec, c, max_level);
  MatrixElements<Complex> w(module, delta_insert);
  BlockCoefficients out{max_level, Normalization::RawW, delta_insert, delta_spec, c, diagonal_only, {}};
  out.blocks.assign(max_level + 1, std::vector<Eigen::MatrixXcd>(max_level + 1));
  for (int n = 0; n <= max_level; ++n)
    for (int m = 0; m <= max_level; ++m)
      if (out.has_block(n, m)) out.blocks[n][m] = detail::to_eigen(w.block(n, m));
  return out;
}

inline Complex one_point_matrix_element(const Partition& nu, const Partition& nu_tilde, Complex delta_insert,
                                        Complex delta_spec, Complex c) {
  const int n = nu.size(), m = nu_tilde.size();
  VermaModule<Complex> module(delta_spec, c, std::max(n, m));
  MatrixElements<Complex> w(module, delta_insert);
  const auto& tab = module.basis();
  return w.block(n, m)(tab.index_of(nu), tab.index_of(nu_tilde));
}

// W(nu, nu~) = sum F^{-1/2}(nu, nu') w(nu', nu~') F^{-1/2}(nu~', nu~).
inline BlockCoefficients orthonormalize(const BlockCoefficients& raw, const std::vector<GramMatrix>& grams) {
  if (raw.normalization != Normalization::RawW) throw DomainError("orthonormalize: input is already orthonormalized");
  if (static_cast<int>(grams.size()) <= raw.max_level) throw DomainError("orthonormalize: missing Gram matrices");
  std::vector<Eigen::MatrixXcd> isq(raw.max_level + 1);
  parallel::parallel_for(isq.size(), [&](std::size_t n) { isq[n] = gram_inverse_sqrt(grams[n].entries); });
  BlockCoefficients out = raw;
  out.normalization = Normalization::OrthonormalizedW;
  for (int n = 0; n <= raw.max_level; ++n)
    for (int m = 0; m <= raw.max_level; ++m)
      if (raw.has_block(n, m)) out.blocks[n][m] = isq[n].transpose() * raw.blocks[n][m] * isq[m];
  return out;
}

inline BlockCoefficients orthonormal_matrix_elements(Complex delta_insert, Complex delta_spec, Complex c,
                                                     int max_level, bool diagonal_only = false) {
  return orthonormalize(raw_matrix_elements(delta_insert, delta_spec, c, max_level, diagonal_only),
                        gram_matrices(max_level, delta_spec, c));
}

enum class BlockKind { Torus1pt, Torus2pt, Annulus1pt, Annulus2pt };

inline const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::Torus1pt: return "torus-1pt";
    case BlockKind::Torus2pt: return "torus-2pt";
    case BlockKind::Annulus1pt: return "annulus-1pt";
    case BlockKind::Annulus2pt: return "annulus-2pt";
  }
  return "?";
}

inline bool is_two_point(BlockKind k) { return k == BlockKind::Torus2pt || k == BlockKind::Annulus2pt; }

// How the level sums are assembled. Orthonormalized sums products of W
// entries; GramInverse uses the equivalent traces
//   sum_nu W(nu, nu) = Tr(F_n^{-1} w_nn),
//   sum W1 W2 = Tr(F_n^{-1} w1 F_m^{-1} w2^T)
// with no square root (only valid for a common spectrum weight).
enum class BlockRoute { Orthonormalized, GramInverse };

struct BlockSeries {
  BlockKind kind = BlockKind::Torus1pt;
  std::vector<Complex> weights;   // inserted conformal weights
  std::vector<Complex> spectrum;  // spectrum weights (one, or two for torus-2pt)
  Complex central_charge{};
  int truncation = 0;            // levels actually summed
  int requested_truncation = 0;  // differs from truncation only under SingularPolicy::Truncate
  // coeffs(n, m): level-pair sums. One-point kinds only fill the diagonal.
  Eigen::MatrixXcd coeffs;

  std::vector<Complex> one_point_coefficients() const {
    std::vector<Complex> out(truncation + 1);
    for (int n = 0; n <= truncation; ++n) out[n] = coeffs(n, n);
    return out;
  }
};

// What to do when the Gram matrix of some level is numerically singular in
// double precision: throw SingularGram, or stop the series at the last
// well-conditioned level (the dropped levels then show up in the tail bound).
enum class SingularPolicy { Throw, Truncate };

// Highest level <= n_max up to which every Gram matrix has scaled condition
// number <= max_condition.
inline int well_conditioned_truncation(Complex delta, Complex c, int n_max, SingularPolicy policy,
                                       double max_condition = 1e12) {
  VermaModule<Complex> module(delta, c, n_max);
  for (int n = 0; n <= n_max; ++n) {
    const double cond = jacobi_scaled_condition(detail::to_eigen(module.gram(n)));
    if (cond <= max_condition) continue;
    if (policy == SingularPolicy::Truncate) return n - 1;
    throw SingularGram("Gram matrix at level " + std::to_string(n) + " is numerically singular (scaled condition " +
                           std::to_string(cond) + ")",
                       cond);
  }
  return n_max;
}

inline BlockSeries block_series_from_weights(BlockKind kind, const std::vector<Complex>& weights,
                                             const std::vector<Complex>& spectrum, Complex c, int requested,
                                             BlockRoute route = BlockRoute::Orthonormalized,
                                             SingularPolicy policy = SingularPolicy::Throw) {
  if (requested < 0) throw DomainError("block_series: truncation N must be >= 0");
  const bool two = is_two_point(kind);
  if (weights.size() != (two ? 2u : 1u)) throw DomainError("block_series: wrong number of inserted weights");
  const std::size_t n_spec = kind == BlockKind::Torus2pt ? 2u : 1u;
  if (spectrum.size() != n_spec && !(kind == BlockKind::Torus2pt && spectrum.size() == 1))
    throw DomainError("block_series: wrong number of spectrum weights");
  const Complex d1 = spectrum[0], d2 = spectrum.size() > 1 ? spectrum[1] : spectrum[0];
  int n_max = well_conditioned_truncation(d1, c, requested, policy);
  if (d2 != d1) n_max = std::min(n_max, well_conditioned_truncation(d2, c, requested, policy));

  BlockSeries s{kind, weights, spectrum, c, n_max, requested, Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1)};
  if (!two) {
    if (route == BlockRoute::Orthonormalized) {
      const auto w = orthonormal_matrix_elements(weights[0], d1, c, n_max, true);
      for (int n = 0; n <= n_max; ++n) s.coeffs(n, n) = w.block(n, n).trace();
    } else {
      const auto w = raw_matrix_elements(weights[0], d1, c, n_max, true);
      const auto g = gram_matrices(n_max, d1, c);
      for (int n = 0; n <= n_max; ++n) s.coeffs(n, n) = g[n].entries.partialPivLu().solve(w.block(n, n)).trace();
    }
    return s;
  }

  if (route == BlockRoute::Orthonormalized) {
    const auto w1 = orthonormal_matrix_elements(weights[0], d1, c, n_max);
    const auto w2 = orthonormal_matrix_elements(weights[1], d2, c, n_max);
    for (int n = 0; n <= n_max; ++n)
      for (int m = 0; m <= n_max; ++m) s.coeffs(n, m) = w1.block(n, m).cwiseProduct(w2.block(n, m)).sum();
    return s;
  }
  if (d1 != d2) throw DomainError("block_series: GramInverse route needs equal spectrum weights");
  const auto w1 = raw_matrix_elements(weights[0], d1, c, n_max);
  const auto w2 = raw_matrix_elements(weights[1], d1, c, n_max);
  const auto g = gram_matrices(n_max, d1, c);
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu;
  for (int n = 0; n <= n_max; ++n) lu.emplace_back(g[n].entries);
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) {
      const Eigen::MatrixXcd a = lu[n].solve(w1.block(n, m));
      const Eigen::MatrixXcd b = lu[m].solve(w2.block(n, m).transpose());
      s.coeffs(n, m) = (a * b).trace();
    }
  return s;
}

// Spectrum weights Delta_{Q+iP} from P; inserted weights given directly.
inline BlockSeries block_series(BlockKind kind, const std::vector<Complex>& weights, const std::vector<double>& P,
                                const LiouvilleParams& p, int n_max = 12,
                                BlockRoute route = BlockRoute::Orthonormalized,
                                SingularPolicy policy = SingularPolicy::Throw) {
  p.validate();
  std::vector<Complex> spec;
  for (double x : P) spec.push_back(conformal_weight(Complex(p.Q(), x), p.Q()));
  return block_series_from_weights(kind, weights, spec, p.c_L(), n_max, route, policy);
}

struct BlockValue {
  Complex value{};
  double tail_bound = 0.0;   // geometric estimate of the dropped terms
  double growth_ratio = 0.0;  // empirical ratio of the last grouped terms
  bool tail_warning = false;
};

namespace detail {

// Partial sum over total degree k = n + m <= N of c(n,m) x1^n x2^m, with the
// tail estimated from the last three grouped term moduli.
inline BlockValue sum_graded(const BlockSeries& s, Complex x1, Complex x2, bool diagonal, bool throw_on_tail) {
  const int n_max = s.truncation;
  std::vector<Complex> group(n_max + 1, 0.0);
  std::vector<double> mod(n_max + 1, 0.0);
  if (diagonal) {
    Complex x = 1.0;
    for (int n = 0; n <= n_max; ++n, x *= x1) {
      group[n] = s.coeffs(n, n) * x;
      mod[n] = std::abs(group[n]);
    }
  } else {
    for (int n = 0; n <= n_max; ++n)
      for (int m = 0; n + m <= n_max; ++m) {
        const Complex t = s.coeffs(n, m) * std::pow(x1, n) * std::pow(x2, m);
        group[n + m] += t;
        mod[n + m] += std::abs(t);
      }
  }
  BlockValue v;
  for (int k = 0; k <= n_max; ++k) v.value += group[k];
  double r = 0.0;
  for (int k = std::max(1, n_max - 1); k <= n_max; ++k) {
    if (mod[k] == 0.0) continue;
    r = mod[k - 1] == 0.0 ? std::numeric_limits<double>::infinity() : std::max(r, mod[k] / mod[k - 1]);
  }
  v.growth_ratio = r;
  if (r >= 1.0) {
    v.tail_warning = true;
    v.tail_bound = std::numeric_limits<double>::infinity();
    if (throw_on_tail)
      throw TailWarning("block series: coefficient growth ratio " + std::to_string(r) +
                            " defeats the geometric tail bound",
                        r);
  } else {
    v.tail_bound = mod[n_max] * r / (1.0 - r);
  }
  return v;
}

}  // namespace detail

// Torus 1-pt: sum c_n q^n. Annulus 1-pt: the same series in q^2.
// Two-point kinds: sum c(n,m) (q/(b1 b2))^n (q b1 b2)^m.
inline BlockValue evaluate_block(const BlockSeries& s, double q, Complex b1b2 = 1.0, bool throw_on_tail = false) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("evaluate_block: q must lie in (0, 1)");
  switch (s.kind) {
    case BlockKind::Torus1pt: return detail::sum_graded(s, q, 0.0, true, throw_on_tail);
    case BlockKind::Annulus1pt: return detail::sum_graded(s, q * q, 0.0, true, throw_on_tail);
    default:
      if (b1b2 == 0.0) throw DomainError("evaluate_block: b1 b2 must be nonzero");
      return detail::sum_graded(s, q / b1b2, q * b1b2, false, throw_on_tail);
  }
}

// Torus 2-pt block at independent moduli q1, q2.
inline BlockValue evaluate_torus_2pt(const BlockSeries& s, Complex q1, Complex q2, bool throw_on_tail = false) {
  if (!is_two_point(s.kind)) throw DomainError("evaluate_torus_2pt: series is not a two-point block");
  return detail::sum_graded(s, q1, q2, false, throw_on_tail);
}

// Thread-safe memo of one-point coefficient lists keyed by
// (Delta_insert, Delta_spec, c, N). Reads take a shared lock.
class OnePointCoefficientCache {
 public:
  std::vector<Complex> get(Complex h, Complex delta, Complex c, int n_max) {
    const Key key{h.real(), h.imag(), delta.real(), delta.imag(), c.real(), c.imag(), n_max};
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    auto s = block_series_from_weights(BlockKind::Torus1pt, {h}, {delta}, c, n_max);
    auto coeffs = s.one_point_coefficients();
    std::unique_lock lock(mutex_);
    if (map_.size() >= kCapacity) map_.clear();
    map_.emplace(key, coeffs);
    return coeffs;
  }

 private:
  using Key = std::tuple<double, double, double, double, double, double, int>;
  static constexpr std::size_t kCapacity = 1 << 14;
  std::shared_mutex mutex_;
  std::map<Key, std::vector<Complex>> map_;
};

}  // namespace liouville
