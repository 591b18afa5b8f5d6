#include <random>

#include "doctest.h"
#include "lsel/errors.hpp"
#include "lsel/padic.hpp"

using namespace lsel;

TEST_CASE("padic_abs examples") {
  CHECK(padic_abs(PAdicNum(3, 3, 5)).exact() == mpq_class(1, 3));
  CHECK(padic_abs(PAdicNum(3, 1)).exact() == 1);
  CHECK(padic_abs(PAdicNum(2, 12)).exact() == mpq_class(1, 4));
  CHECK(padic_abs(PAdicNum::exact_zero(5)).exact() == 0);
  CHECK(padic_abs(PAdicNum::from_rational(5, mpq_class(3, 50))).exact() == 25);
}

TEST_CASE("inexact zero raises precision-exhausted") {
  PAdicNum a(3, 1, 4);
  PAdicNum b = PAdicNum::from_rational(3, mpq_class(1), 4);
  PAdicNum d = a - b;
  CHECK(d.is_inexact_zero());
  CHECK(d.valuation_lower_bound() == 4);
  CHECK_THROWS_AS(padic_abs(d), PrecisionExhausted);
  CHECK_THROWS_AS((void)(a / d), PrecisionExhausted);
}

TEST_CASE("digits and rational round trip") {
  PAdicNum x = PAdicNum::from_rational(5, mpq_class(-1), 6);
  auto d = x.unit_digits();
  REQUIRE(d.size() == 6);
  for (int v : d) CHECK(v == 4);
  PAdicNum y = PAdicNum::from_rational(7, mpq_class(2, 3), 10);
  CHECK((y * PAdicNum(7, 3)).agrees_with(PAdicNum(7, 2)));
}

TEST_CASE("precision tracking follows the minimum rule") {
  PAdicNum a = PAdicNum::from_rational(3, mpq_class(1), 10);
  PAdicNum b = PAdicNum::from_rational(3, mpq_class(9), 4);  // 3^2 * 1, abs 6
  CHECK((a + b).absolute_precision() == 6);
  CHECK((a * b).precision() == 4);
  PAdicNum c = PAdicNum::from_rational(3, mpq_class(1, 27), 5);  // abs 2
  CHECK((a + c).absolute_precision() == 2);
  CHECK((a + c).valuation() == -3);
}

TEST_CASE("multiplicativity and ultrametric inequality on random rationals") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (int p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 300; ++trial) {
      mpq_class qx(num(rng), den(rng)), qy(num(rng), den(rng));
      qx.canonicalize();
      qy.canonicalize();
      if (qx == 0 || qy == 0) continue;
      PAdicNum x = PAdicNum::from_rational(p, qx), y = PAdicNum::from_rational(p, qy);
      CHECK(padic_abs(x * y).exact() == padic_abs(x).exact() * padic_abs(y).exact());
      if (qx + qy == 0) continue;
      PAdicNum s = PAdicNum::from_rational(p, qx + qy);
      mpq_class ax = padic_abs(x).exact(), ay = padic_abs(y).exact();
      mpq_class as = padic_abs(s).exact();
      CHECK(as <= std::max(ax, ay));
      if (ax != ay) CHECK(as == std::max(ax, ay));
      CHECK((x + y).agrees_with(s));
    }
  }
}

TEST_CASE("precision soundness: k and k+5 agree on the reported digits") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 400);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 200; ++trial) {
      mpq_class q[4];
      bool ok = true;
      for (auto& v : q) {
        v = mpq_class(num(rng), den(rng));
        v.canonicalize();
        ok = ok && v != 0;
      }
      if (!ok) continue;
      auto eval = [&](int k) {
        PAdicNum a = PAdicNum::from_rational(p, q[0], k), b = PAdicNum::from_rational(p, q[1], k);
        PAdicNum c = PAdicNum::from_rational(p, q[2], k), d = PAdicNum::from_rational(p, q[3], k);
        return (a * b + c) / d - a;
      };
      const int k = 8;
      PAdicNum lo = eval(k), hi = eval(k + 5);
      CHECK(hi.agrees_with(lo));
      if (lo.is_value()) CHECK(lo.valuation() == hi.valuation());
    }
  }
}
