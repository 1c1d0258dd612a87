#pragma once

// Brute-force Virasoro algebra on words of modes, over exact rationals.
// States are arbitrary words L_{k_1} ... L_{k_r} |Delta> (no PBW ordering);
// expectation values are found by pushing positive modes right until they hit
// |Delta>. Matrix elements of a primary move bra modes across V(z) from the
// right, the mirror image of what the library does.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Word = std::vector<int>;  // leftmost operator first
using Combination = std::map<Word, Rational>;

class Virasoro {
 public:
  Virasoro(Rational delta, Rational c) : delta_(delta), c_(c) {}

  // <Delta| word |Delta>
  Rational expectation(const Word& w) {
    if (w.empty()) return 1;
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    Rational r = 0;
    if (w.back() > 0 || w.front() < 0) {
      r = 0;
    } else if (w.back() == 0) {
      r = delta_ * expectation(Word(w.begin(), w.end() - 1));
    } else if (w.front() == 0) {
      r = delta_ * expectation(Word(w.begin() + 1, w.end()));
    } else {
      // rightmost positive mode; the one after it is <= 0
      std::size_t i = w.size() - 1;
      while (w[i] <= 0) --i;
      const int m = w[i], n = w[i + 1];
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      r = expectation(swapped);
      Word merged(w.begin(), w.begin() + i);
      merged.push_back(m + n);
      merged.insert(merged.end(), w.begin() + i + 2, w.end());
      r += Rational(m - n) * expectation(merged);
      if (m + n == 0) {
        Word dropped(w.begin(), w.begin() + i);
        dropped.insert(dropped.end(), w.begin() + i + 2, w.end());
        r += c_ * Rational(m * (m * m - 1)) / 12 * expectation(dropped);
      }
    }
    memo_.emplace(w, r);
    return r;
  }

  // L_n applied to a ket word of negative modes, rewritten as a combination
  // of words of negative modes (n > 0).
  Combination lower(int n, const Word& ket) {
    Combination out;
    push(out, n, ket, 1);
    return out;
  }

 private:
  // adds coef * L_m ket, where ket has only negative modes
  void push(Combination& out, int m, const Word& ket, const Rational& coef) {
    if (coef == 0) return;
    if (m < 0) {
      Word w{m};
      w.insert(w.end(), ket.begin(), ket.end());
      out[w] += coef;
      return;
    }
    if (ket.empty()) {
      if (m == 0) out[Word{}] += coef * delta_;
      return;
    }
    const int k = ket.front();
    const Word rest(ket.begin() + 1, ket.end());
    if (m == 0) {
      int level = 0;
      for (int x : ket) level -= x;
      out[ket] += coef * (delta_ + level);
      return;
    }
    // L_m L_k rest = L_k L_m rest + (m - k) L_{m+k} rest + central
    Combination inner;
    push(inner, m, rest, 1);
    for (const auto& [w, v] : inner) {
      Word x{k};
      x.insert(x.end(), w.begin(), w.end());
      out[x] += coef * v;
    }
    push(out, m + k, rest, coef * Rational(m - k));
    if (m + k == 0) out[rest] += coef * c_ * Rational(m * (m * m - 1)) / 12;
  }

  Rational delta_, c_;
  std::map<Word, Rational> memo_;
};

// Bra word of the partition state: the adjoint of L_{-nu_s} ... L_{-nu_1} is
// L_{nu_1} ... L_{nu_s}.
inline Word bra_word(const std::vector<int>& parts) { return Word(parts.begin(), parts.end()); }

inline Word ket_word(const std::vector<int>& parts) {
  Word w;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) w.push_back(-*it);
  return w;
}

inline Rational gram_entry(Virasoro& v, const std::vector<int>& bra, const std::vector<int>& ket) {
  Word w = bra_word(bra);
  const Word k = ket_word(ket);
  w.insert(w.end(), k.begin(), k.end());
  return v.expectation(w);
}

// <Delta, bra| V_h(1) |Delta, ket> / <Delta| V_h(1) |Delta>, bra given as a
// list of positive modes (leftmost first), ket as negative modes.
class PrimaryElements {
 public:
  PrimaryElements(Virasoro& v, Rational h) : v_(v), h_(h) {}

  Rational operator()(const Word& bra, const Word& ket) {
    const auto key = std::make_pair(bra, ket);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int ket_level = 0;
    for (int x : ket) ket_level -= x;
    Rational r;
    if (bra.empty()) {
      if (ket.empty()) {
        r = 1;
      } else {
        // <Delta| V L_{-k} K'> = -<Delta| [L_{-k}, V] K'>, with
        // [L_n, V(z)] = z^n (z d/dz + (n+1) h) V(z) and <xi'|V(z)|xi> ~ z^{level' - level - h}
        const int k = -ket.front();
        const Word rest(ket.begin() + 1, ket.end());
        r = (Rational(ket_level - k) + Rational(k) * h_) * (*this)(bra, rest);
      }
    } else {
      const int n = bra.back();
      const Word rest(bra.begin(), bra.end() - 1);
      int bra_level = 0;
      for (int x : rest) bra_level += x;
      // <B'| L_n V |K> = <B'| V L_n |K> + (level(B') - level(K) - h + (n+1) h) <B'| V |K>
      r = (Rational(bra_level - ket_level) + Rational(n) * h_) * (*this)(rest, ket);
      for (const auto& [w, coef] : v_.lower(n, ket)) r += coef * (*this)(rest, w);
    }
    memo_.emplace(key, r);
    return r;
  }

 private:
  Virasoro& v_;
  Rational h_;
  std::map<std::pair<Word, Word>, Rational> memo_;
};

}  // namespace oracle
