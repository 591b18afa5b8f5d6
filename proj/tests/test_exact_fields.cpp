#include <random>

#include "doctest.h"
#include "lsel/errors.hpp"
#include "lsel/finite_field.hpp"
#include "lsel/unram.hpp"

using namespace lsel;

namespace {

mpq_class mpq(long n) { return mpq_class(n); }

// Independent root check: evaluate the polynomial at r with plain ring ops.
int residual_valuation(const UnramExt& E, const std::vector<mpq_class>& f, const UnramExt::Elem& r) {
  UnramExt::Elem acc = E.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    acc = E.add(E.mul(acc, r), E.from_int(it->get_num()));
  return E.valuation(acc);
}

}  // namespace

TEST_CASE("finite field: lexicographically smallest defining polynomials") {
  // F_9: x^2 + 1 is the first monic irreducible quadratic over F_3 in (b1, b0) order.
  CHECK(FiniteField::get(3, 2)->modulus() == std::vector<int>{1, 0});
  // F_4: x^2 + x + 1.
  CHECK(FiniteField::get(2, 2)->modulus() == std::vector<int>{1, 1});
  // F_8: x^3 + x + 1 (b2=0, b1=1, b0=1 precedes x^3 + x^2 + 1).
  CHECK(FiniteField::get(2, 3)->modulus() == std::vector<int>{1, 1, 0});
}

TEST_CASE("finite field axioms and discrete logs") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {7, 1}, {2, 3}, {3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
    auto F = FiniteField::get(p, f);
    const int q = F->q();
    std::mt19937 rng(p * 100 + f);
    std::uniform_int_distribution<int> d(0, q - 1);
    for (int t = 0; t < 200; ++t) {
      int a = d(rng), b = d(rng), c = d(rng);
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->mul(a, F->mul(b, c)) == F->mul(F->mul(a, b), c));
      CHECK(F->add(a, F->neg(a)) == 0);
      if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
    }
    for (int a = 1; a < q; ++a) CHECK(F->exp(F->log(a)) == a);
    // generator has full order
    int x = F->generator(), order = 1;
    while (x != 1) {
      x = F->mul(x, F->generator());
      ++order;
    }
    CHECK(order == q - 1);
    // trace is F_p-valued and additive
    for (int a = 0; a < q; ++a) CHECK(F->trace(a) < p);
    CHECK(F->trace(F->add(3 % q, 5 % q)) == (F->trace(3 % q) + F->trace(5 % q)) % p);
  }
}

TEST_CASE("unram_root_search examples") {
  UnramExt Q9(3, 2), Q3(3, 1);
  const std::vector<mpq_class> x2p1{mpq(1), mpq(0), mpq(1)}, x2m1{mpq(-1), mpq(0), mpq(1)};
  auto r = unram_root_search(Q9, x2p1);
  CHECK(r.size() == 2);
  for (auto& x : r) CHECK(residual_valuation(Q9, x2p1, x) >= 20);
  CHECK(unram_root_search(Q3, x2p1).empty());
  auto r1 = unram_root_search(Q3, x2m1);
  REQUIRE(r1.size() == 2);
  std::vector<mpz_class> vals{r1[0][0], r1[1][0]};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == 1);
  CHECK(vals[1] == Q3.modulus() - 1);
}

TEST_CASE("unram_root_search lifts through a multiple residue") {
  // (x - 1)(x - 1 - 9) = x^2 - 11x + 10: both roots reduce to 1 mod 3.
  UnramExt Q3(3, 1);
  auto r = unram_root_search(Q3, {mpq(10), mpq(-11), mpq(1)});
  CHECK(r.size() == 2);
  // x^2 - 3 has no roots in Q_9 (ramified), detected without exhausting precision.
  UnramExt Q9(3, 2);
  CHECK(unram_root_search(Q9, {mpq(-3), mpq(0), mpq(1)}).empty());
}

TEST_CASE("unram_root_search reports exhausted precision") {
  UnramExt Q5(5, 1, 6);
  // roots 1 and 1 + 5^6 collide at precision 6
  mpz_class e = 1 + ppow(5, 6);
  std::vector<mpq_class> f{mpq_class(e), mpq_class(-(e + 1)), mpq(1)};
  CHECK_THROWS_AS(unram_root_search(Q5, f), PrecisionExhausted);
}

TEST_CASE("Tr and N agree with multiplication-matrix trace and determinant") {
  std::mt19937 rng(99);
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 4}}) {
    UnramExt E(p, m, 12);
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    for (int t = 0; t < 20; ++t) {
      UnramExt::Elem a(m);
      for (auto& c : a) c = mpz_class(d(rng)) % E.modulus();
      for (auto& c : a)
        if (c < 0) c += E.modulus();
      CHECK(E.trace(a) == E.matrix_trace(a));
      CHECK(E.norm(a) == E.matrix_norm(a));
    }
    // conjugates of the generator are roots of the defining polynomial
    std::vector<mpq_class> g;
    for (const auto& c : E.defining_poly()) g.emplace_back(c);
    g.emplace_back(1);
    for (const auto& c : E.conjugates(E.generator())) CHECK(residual_valuation(E, g, c) >= 12);
  }
}

TEST_CASE("complex_norm") {
  CHECK(complex_norm({1, 0}) == 1.0);
  CHECK(complex_norm({0, 1}) == 1.0);
  CHECK(complex_norm({3, 4}) == 25.0);
}
