// At the degenerate weight Delta_gamma the orthonormalized matrix elements are
// the identity within each level, so the annulus one-point block becomes the
// partition generating function sum P(n) q^{2n}.
#include <cstdio>

#include "liouville/liouville.hpp"

using namespace liouville;

int main() {
  const auto p = LiouvilleParams::bulk_only(1.0);
  const double P = 0.7;
  const Complex h = conformal_weight(p.gamma, p.Q());
  const Complex delta = conformal_weight(Complex(p.Q(), P), p.Q());

  const BlockCoefficients w = orthonormal_matrix_elements(h, delta, p.c_L(), 4, true);
  for (int n = 1; n <= 4; ++n) {
    const auto& b = w.block(n, n);
    const double off = (b - Eigen::MatrixXcd::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff();
    std::printf("level %d: dim %2d  max |W - 1| = %.2e\n", n, static_cast<int>(b.rows()), off);
  }

  const BlockSeries s = block_series(BlockKind::Annulus1pt, {h}, {P}, p, 10);
  const auto counts = partition_counts(10);
  std::printf("\n n  coefficient          P(n)\n");
  for (int n = 0; n <= 10; ++n)
    std::printf("%2d  %.12f  %4llu\n", n, s.coeffs(n, n).real(), static_cast<unsigned long long>(counts[n]));

  const double q = 0.3;
  const BlockValue v = evaluate_block(s, q);
  std::printf("\nq = %.1f: block %.14f, q^{1/12}/eta(q^2) %.14f\n", q, v.value.real(),
              std::pow(q, 1.0 / 12.0) / dedekind_eta(q * q));
}
