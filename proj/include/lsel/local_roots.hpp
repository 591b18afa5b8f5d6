#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "lsel/errors.hpp"

namespace lsel {

/// Root search for polynomials over a complete discrete valuation ring known
/// modulo a power of its uniformizer pi. `Ring` provides
///   Elem zero(), one(), from_int(mpz_class), add, sub, mul, inverse (units),
///   int valuation(Elem) (capacity() for zero), int capacity(),
///   Elem div_pi_pow(Elem, int), Elem pi_pow(int), std::vector<Elem> residue_lifts().
template <class Ring>
class LocalRootSearch {
 public:
  using Elem = typename Ring::Elem;
  using Poly = std::vector<Elem>;  // low to high

  explicit LocalRootSearch(const Ring& R) : R_(R) {}

  /// Number of distinct roots of a squarefree integral polynomial.
  int count(const Poly& f) const {
    int n = 0;
    recurse(f, R_.zero(), 0, R_.capacity() - 2, nullptr, n, 0);
    return n;
  }

  std::vector<Elem> roots(const Poly& f) const {
    std::vector<Elem> out;
    int n = 0;
    recurse(f, R_.zero(), 0, R_.capacity() - 2, &out, n, 0);
    return out;
  }

  Elem eval(const Poly& g, const Elem& x) const {
    Elem acc = R_.zero();
    for (auto it = g.rbegin(); it != g.rend(); ++it) acc = R_.add(R_.mul(acc, x), *it);
    return acc;
  }

  Poly derivative(const Poly& g) const {
    Poly d;
    for (size_t i = 1; i < g.size(); ++i) d.push_back(R_.mul(R_.from_int(static_cast<long>(i)), g[i]));
    if (d.empty()) d.push_back(R_.zero());
    return d;
  }

 private:
  // g(a + pi*y) as a polynomial in y.
  Poly shift(const Poly& g, const Elem& a) const {
    Poly c = g;
    const size_t n = c.size();
    for (size_t i = 0; i + 1 < n; ++i)
      for (size_t j = n - 1; j > i; --j) c[j - 1] = R_.add(c[j - 1], R_.mul(a, c[j]));
    for (size_t i = 1; i < n; ++i) c[i] = R_.mul(c[i], R_.pi_pow(static_cast<int>(i)));
    return c;
  }

  void recurse(Poly g, const Elem& base, int depth, int budget, std::vector<Elem>* out, int& cnt,
               int level) const {
    if (level > 4 * R_.capacity()) throw PrecisionExhausted("local root search: depth limit");
    int v = R_.capacity();
    for (const auto& c : g) v = std::min(v, R_.valuation(c));
    if (v >= budget) throw PrecisionExhausted("local root search: polynomial vanishes at working precision");
    if (v > 0)
      for (auto& c : g) c = R_.div_pi_pow(c, v);
    budget -= v;
    const Poly dg = derivative(g);
    for (const Elem& a : R_.residue_lifts()) {
      if (R_.valuation(eval(g, a)) < 1) continue;
      if (R_.valuation(eval(dg, a)) == 0) {
        ++cnt;
        if (out) out->push_back(R_.add(base, R_.mul(R_.pi_pow(depth), newton(g, dg, a, budget))));
        continue;
      }
      recurse(shift(g, a), R_.add(base, R_.mul(R_.pi_pow(depth), a)), depth + 1, budget, out, cnt,
              level + 1);
    }
  }

  Elem newton(const Poly& g, const Poly& dg, Elem y, int budget) const {
    for (int it = 0; it < 64; ++it) {
      Elem gy = eval(g, y);
      if (R_.valuation(gy) >= budget) return y;
      y = R_.sub(y, R_.mul(gy, R_.inverse(eval(dg, y))));
    }
    return y;
  }

  const Ring& R_;
};

}  // namespace lsel
