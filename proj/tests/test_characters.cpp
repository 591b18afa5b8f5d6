#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lsel/characters.hpp"
#include "lsel/errors.hpp"

using namespace lsel;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force oracle for int psi(x)|x|^{s-1} dx over an unramified field with
// residue field F (d = 0): on the shell val x = v the integrand is constant
// q^{-v(s-1)}, and psi(x) depends on x mod O only. Sum psi over the residue
// digits of x = p^v u by enumerating representatives of p^v O^* / O.
cplx brute_gamma_unramified(const FiniteField& F, double s) {
  const double q = F.q();
  cplx total = 0.0;
  // v >= 0: psi = 1, shell volume q^{-v}(1 - 1/q).
  for (int v = 0; v < 400; ++v) total += (1 - 1 / q) * std::pow(q, -v * s);
  // v = -1: x = u / p with u a unit; psi(x) = exp(2 pi i Tr(u mod p) / p).
  cplx avg = 0.0;
  for (int u = 1; u < F.q(); ++u) avg += std::polar(1.0, 2 * kPi * F.trace(u) / F.p());
  total += avg * std::pow(q, s - 1);  // each class of p^{-1}O^*/O has mass 1
  // v <= -2: the average of psi over any coset of p^{-1}O in p^v O^* is 0.
  return total;
}

}  // namespace

TEST_CASE("gamma_padic examples") {
  for (long q : {2L, 3L, 5L, 9L}) CHECK(std::abs(gamma_padic(q, 0, 0.5) - 1.0) < 1e-14);
  const cplx want = (1 - std::pow(2.0, -0.7)) / (1 - std::pow(2.0, -0.3));
  CHECK(std::abs(gamma_padic(2, 0, 0.3) - want) < 1e-14);
  CHECK(std::abs(gamma_via_integral(2, 0, 0.3) - want) < 1e-12);
  CHECK(std::abs(gamma_via_integral(3, 0, 0.5) - 1.0) < 1e-12);
  CHECK_THROWS_AS(gamma_padic(3, 0, 0.0), PoleError);
  CHECK_THROWS_AS(gamma_padic(3, 0, cplx(0, 2 * kPi / std::log(3.0))), PoleError);
}

TEST_CASE("functional equation Gamma(s)Gamma(1-s) = 1") {
  for (long q : {2L, 3L, 4L, 5L, 9L, 25L, 27L})
    for (double s = 0.05; s < 1; s += 0.05)
      CHECK(std::abs(gamma_padic(q, 0, s) * gamma_padic(q, 0, 1 - s) - 1.0) < 1e-10);
  for (double s = 0.05; s < 1; s += 0.05) {
    CHECK(std::abs(gamma_complex(s) * gamma_complex(1 - s) - 1.0) < 1e-10);
    cplx z(s, 0.3);
    CHECK(std::abs(gamma_complex(z) * gamma_complex(1.0 - z) - 1.0) < 1e-10);
  }
}

TEST_CASE("oracle equivalence on the (q, d) grid") {
  for (long q : {2L, 3L, 4L, 5L, 9L, 25L, 27L})
    for (int d : {0, 1, 2})
      for (int i = 1; i <= 9; ++i) {
        const double s = 0.1 * i;
        CHECK(std::abs(gamma_padic(q, d, s) - gamma_via_integral(q, d, s)) < 1e-12);
        cplx z(s, 0.7);
        CHECK(std::abs(gamma_padic(q, d, z) - gamma_via_integral(q, d, z)) < 1e-12);
      }
}

TEST_CASE("shell-sum oracle agrees with brute-force residue enumeration") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {2, 2}, {5, 2}, {3, 3}}) {
    auto F = FiniteField::get(p, f);
    for (double s : {0.2, 0.4, 0.5, 0.8}) {
      CHECK(std::abs(brute_gamma_unramified(*F, s) - gamma_via_integral(F->q(), 0, s)) < 1e-12);
    }
  }
}

TEST_CASE("gamma_complex") {
  CHECK(std::abs(classical_gamma(0.5) - std::sqrt(kPi)) < 1e-13);
  CHECK(std::abs(classical_gamma(5.0) - 24.0) < 1e-10);
  CHECK(std::abs(classical_gamma(-0.5) + 2 * std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(gamma_complex(0.5) - 1.0) < 1e-13);
  CHECK_NOTHROW(gamma_complex(0.3));
  CHECK_THROWS_AS(gamma_complex(0.0), PoleError);
  CHECK_THROWS_AS(classical_gamma(-2.0), PoleError);
}

TEST_CASE("gauss sums") {
  auto F3 = FiniteField::get(3);
  // quadratic character of F_3 is index 1 of 2
  CHECK(std::abs(gauss_sum(*F3, 1) - cplx(0, std::sqrt(3.0))) < 1e-12);
  for (int p : {2, 3, 5, 7}) CHECK(std::abs(gauss_sum(*FiniteField::get(p), 0) + 1.0) < 1e-12);
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}, {5, 2}, {2, 4}, {3, 3}, {7, 2}}) {
    auto F = FiniteField::get(p, f);
    for (int j = 1; j < F->q() - 1; ++j) CHECK(std::abs(std::abs(gauss_sum(*F, j)) - std::sqrt(F->q())) < 1e-9);
  }
}

TEST_CASE("Hasse-Davenport: -g(chi o N) = (-g(chi))^m") {
  for (int p : {2, 3, 5, 7})
    for (int m = 1; m <= 3; ++m) {
      auto F = FiniteField::get(p, m);
      const long Q = F->q(), q = p;
      const long lift = (Q - 1) / (q - 1);
      // F_p inside F_Q: psi on F_p is exp(2 pi i x / p) on elements x = G^{k lift}.
      for (int j = 0; j < q - 1; ++j) {
        cplx g_small = 0.0;
        for (long k = 0; k < q - 1; ++k) {
          const int x = F->exp(k * lift);
          g_small += std::polar(1.0, 2 * kPi * j * k / (q - 1)) * std::polar(1.0, 2 * kPi * F->partial_trace(x, 1) / p);
        }
        // chi o N on F_Q^* corresponds to index j * lift.
        const cplx g_big = gauss_sum(*F, static_cast<int>(j * lift));
        CHECK(std::abs(-g_big - std::pow(-g_small, m)) < 1e-8);
      }
    }
}

TEST_CASE("Hasse-Davenport over F_q base fields (q = 4)") {
  const int p = 2, f = 2, m = 2;
  auto F = FiniteField::get(p, f * m);  // F_16 containing F_4
  const long Q = F->q(), q = 4, lift = (Q - 1) / (q - 1);
  for (int j = 0; j < q - 1; ++j) {
    cplx g_small = 0.0;
    for (long k = 0; k < q - 1; ++k) {
      const int x = F->exp(k * lift);
      g_small += std::polar(1.0, 2 * kPi * j * k / (q - 1)) * std::polar(1.0, 2 * kPi * F->partial_trace(x, f) / p);
    }
    CHECK(std::abs(-gauss_sum(*F, static_cast<int>(j * lift)) - std::pow(-g_small, m)) < 1e-8);
  }
}

TEST_CASE("gamma_ext") {
  const auto Q3 = LocalFieldDesc::padic(3);
  const auto chi = QuasiCharacter::unramified(Q3, 0.4);
  CHECK(std::abs(gamma_ext({1, 1, 0}, Q3, chi) - gamma_padic(Q3, chi)) < 1e-15);
  CHECK(std::abs(gamma_ext({1, 2, 0}, Q3, chi) - gamma_via_integral(9, 0, 0.4)) < 1e-12);
  CHECK(std::abs(gamma_ext({2, 1, 1}, Q3, chi) - gamma_via_integral(3, 1, 0.4)) < 1e-12);
}

TEST_CASE("quasi-characters") {
  const auto Q5 = LocalFieldDesc::padic(5);
  auto chi = QuasiCharacter::unramified(Q5, cplx(0.3, 0.2));
  CHECK(chi.real_part() == doctest::Approx(0.3));
  CHECK(std::abs(chi.at_valuation(2) - chi.at_valuation(1) * chi.at_valuation(1)) < 1e-14);
  CHECK(std::abs(std::abs(chi.at_valuation(1)) - std::pow(5.0, -0.3)) < 1e-14);
  auto chi0 = QuasiCharacter::norm(Q5);
  CHECK(std::abs(chi0.at_valuation(1) - 0.2) < 1e-15);
  auto F7 = FiniteField::get(7);
  auto fchi = QuasiCharacter::finite(LocalFieldDesc::finite(7), 2);
  for (int a = 1; a < 7; ++a)
    for (int b = 1; b < 7; ++b)
      CHECK(std::abs(fchi.at_finite(*F7, F7->mul(a, b)) - fchi.at_finite(*F7, a) * fchi.at_finite(*F7, b)) < 1e-12);
  CHECK(fchi.at_finite(*F7, 0) == cplx(0.0));
  CHECK(AdditiveCharDesc::standard(LocalFieldDesc::padic(3, 1, 2)).conductor_exponent() == 2);
  CHECK(std::abs(AdditiveCharDesc::standard(LocalFieldDesc::complex())(cplx(0.25, 3.0)) + 1.0) < 1e-14);
}
