#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "liouville/numerics/errors.hpp"
#include "liouville/virasoro/partition.hpp"

namespace liouville {

// Row-major dense matrix over an arbitrary scalar (double, complex, exact
// rationals). Kept minimal so the algebra below is scalar-agnostic.
template <class T>
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T(0)) {}
  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

// Verma module of highest weight delta at central charge c, truncated at
// max_level, in the basis L_{-nu_s} ... L_{-nu_1}|delta> (partitions nu).
//
// The action of any mode L_m on a basis vector is obtained by a rewriting
// system: commute L_m past the leftmost creation operator with
//   [L_m, L_n] = (m - n) L_{m+n} + (c/12) m (m^2 - 1) delta_{m+n,0}
// until it either annihilates |delta>, acts diagonally (L_0), or lands in
// PBW order. Results are memoized per (m, level, index).
template <class T>
class VermaModule {
 public:
  using Vec = std::vector<std::pair<int, T>>;  // sparse combination in one level's basis

  VermaModule(T delta, T c, int max_level) : table_(max_level), delta_(delta), c_(c) {}

  const PartitionTable& basis() const { return table_; }
  int max_level() const { return table_.max_level(); }
  const T& delta() const { return delta_; }
  const T& central_charge() const { return c_; }

  // L_m applied to basis vector idx of level n; coordinates in level n - m.
  const Vec& apply(int m, int n, int idx) {
    const auto key = std::make_tuple(m, n, idx);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Vec v = compute(m, n, idx);
    return memo_.emplace(key, std::move(v)).first->second;
  }

  // Shapovalov form at level n: G(i, j) = <nu_i | nu_j>, bilinear (no
  // conjugation), with L_m^dagger = L_{-m}.
  const DenseMatrix<T>& gram(int n) {
    if (n < 0 || n > max_level()) throw DomainError("gram: level out of range");
    if (auto it = gram_.find(n); it != gram_.end()) return it->second;
    const int d = table_.dimension(n);
    DenseMatrix<T> g(d, d);
    if (n == 0) {
      g(0, 0) = T(1);
    } else {
      for (int i = 0; i < d; ++i) {
        const Partition& nu = table_.level(n)[i];
        const int s = nu.smallest();
        const int r = table_.index_of(nu.without_smallest().parts, n - s);
        const DenseMatrix<T>& lower = gram(n - s);
        for (int j = 0; j < d; ++j) {
          T acc(0);
          for (const auto& [k, ck] : apply(s, n, j)) acc += ck * lower(r, k);
          g(i, j) = acc;
        }
      }
    }
    return gram_.emplace(n, std::move(g)).first->second;
  }

 private:
  Vec compute(int m, int n, int idx) {
    const int target = n - m;
    if (target < 0) return {};
    if (target > max_level()) throw DomainError("VermaModule: action leaves the truncated module");
    const Partition& nu = table_.level(n)[idx];
    if (nu.empty()) {
      if (m > 0) return {};
      if (m == 0) return {{0, delta_}};
      return {{table_.index_of(std::vector<int>{-m}, -m), T(1)}};
    }
    const int s = nu.smallest();
    if (m < 0 && -m <= s) {
      std::vector<int> parts = nu.parts;
      parts.push_back(-m);
      return {{table_.index_of(parts, target), T(1)}};
    }
    // L_m L_{-s} R = L_{-s} (L_m R) + (m + s) L_{m-s} R + (c/12) m (m^2-1) delta_{m,s} R
    const int rn = n - s;
    const int r = table_.index_of(nu.without_smallest().parts, rn);
    std::map<int, T> acc;
    const Vec inner = apply(m, rn, r);
    for (const auto& [j, cj] : inner) {
      const Vec outer = apply(-s, rn - m, j);
      for (const auto& [k, ck] : outer) acc[k] += cj * ck;
    }
    if (m + s != 0) {
      const Vec shifted = apply(m - s, rn, r);
      for (const auto& [k, ck] : shifted) acc[k] += T(m + s) * ck;
    }
    if (m == s) acc[r] += c_ * T(m * (m * m - 1)) / T(12);
    Vec out;
    out.reserve(acc.size());
    for (const auto& [k, v] : acc)
      if (v != T(0)) out.emplace_back(k, v);
    return out;
  }

  PartitionTable table_;
  T delta_, c_;
  std::map<std::tuple<int, int, int>, Vec> memo_;
  std::map<int, DenseMatrix<T>> gram_;
};

// Matrix elements w(nu, nu~) = <delta, nu | V_h(1) | delta, nu~> / <delta|V_h(1)|delta>
// of a primary of weight h between descendants of the same highest weight.
// Creation operators are moved off the ket with
//   <xi'| [L_n, V_h(1)] |xi> = (Delta_xi' - Delta_xi + n h) <xi'| V_h(1) |xi>,
// and <xi'| L_{-s} = (L_s |xi'>)^T.
template <class T>
class MatrixElements {
 public:
  MatrixElements(VermaModule<T>& module, T h) : m_(module), h_(h) {}

  const T& weight() const { return h_; }

  // Block of w over levels (n, m): rows |nu| = n, columns |nu~| = m.
  const DenseMatrix<T>& block(int n, int m) {
    if (n < 0 || m < 0 || n > m_.max_level() || m > m_.max_level())
      throw DomainError("matrix elements: level out of range");
    const auto key = std::make_pair(n, m);
    if (auto it = blocks_.find(key); it != blocks_.end()) return it->second;
    const PartitionTable& tab = m_.basis();
    DenseMatrix<T> w(tab.dimension(n), tab.dimension(m));
    if (n == 0 && m == 0) {
      w(0, 0) = T(1);
    } else if (m == 0) {
      // <nu| V |delta> = (n - s + s h) <nu minus s| V |delta>
      for (int i = 0; i < tab.dimension(n); ++i) {
        const Partition& nu = tab.level(n)[i];
        const int s = nu.smallest();
        const int r = tab.index_of(nu.without_smallest().parts, n - s);
        w(i, 0) = (T(n - s) + T(s) * h_) * block(n - s, 0)(r, 0);
      }
    } else if (m > 0) {
      for (int j = 0; j < tab.dimension(m); ++j) {
        const Partition& nt = tab.level(m)[j];
        const int s = nt.smallest();
        const int r = tab.index_of(nt.without_smallest().parts, m - s);
        const T shift = T(n - m + s) - T(s) * h_;
        const DenseMatrix<T>& same = block(n, m - s);
        const DenseMatrix<T>* lowered = n - s >= 0 ? &block(n - s, m - s) : nullptr;
        for (int i = 0; i < tab.dimension(n); ++i) {
          T acc = -shift * same(i, r);
          if (lowered)
            for (const auto& [k, ck] : m_.apply(s, n, i)) acc += ck * (*lowered)(k, r);
          w(i, j) = acc;
        }
      }
    }
    return blocks_.emplace(key, std::move(w)).first->second;
  }

 private:
  VermaModule<T>& m_;
  T h_;
  std::map<std::pair<int, int>, DenseMatrix<T>> blocks_;
};

}  // namespace liouville
