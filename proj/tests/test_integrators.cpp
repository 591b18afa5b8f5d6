#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lsel/errors.hpp"
#include "lsel/finite_field.hpp"
#include "lsel/integrators.hpp"

using namespace lsel;

namespace {

constexpr double kPi = std::numbers::pi;

double pw(double p, double e) { return std::pow(p, e); }
cplx cpw(double p, cplx e) { return std::exp(std::log(p) * e); }

// int_{Q_p} |t|^{a-1} |1 - t|^{b-1} dt summed shell by shell.
cplx beta_by_shells(int p, cplx a, cplx b) {
  const double u = 1.0 - 1.0 / p;
  cplx total = static_cast<double>(p - 2) / p;
  for (int j = 1; j < 400; ++j) {
    total += u * pw(p, -j) * cpw(p, -static_cast<double>(j) * (a - 1.0));
    total += u * pw(p, -j) * cpw(p, -static_cast<double>(j) * (b - 1.0));
    total += u * pw(p, j) * cpw(p, static_cast<double>(j) * (a + b - 2.0));
  }
  return total;
}

EngineOptions serial() {
  EngineOptions o;
  o.workers = 1;
  return o;
}

PadicIntegrand plain(int p, int n, std::vector<PadicFactor> factors) {
  PadicIntegrand f;
  f.p = p;
  f.n = n;
  f.inner.factors = std::move(factors);
  f.outer = f.inner;
  return f;
}

}  // namespace

TEST_CASE("constant integrand over the unit box") {
  for (int p : {2, 3, 7}) {
    const auto f = plain(p, 2, {});
    CHECK(std::abs(padic_box_integrate(f, f.inner, 0, serial()).value - 1.0) < 1e-14);
    CHECK(std::abs(padic_box_integrate(f, f.inner, 2, serial()).value - pw(p, 4)) < 1e-9);
    CHECK(std::abs(padic_shell_integrate(f, f.inner, 1, serial()).value - (pw(p, 2) - 1)) < 1e-12);
  }
}

TEST_CASE("power of a coordinate over Z_p") {
  for (int p : {2, 3, 5}) {
    const cplx s(0.4, 1.3);
    const auto f = plain(p, 1, {{MPoly::var(1, 0), s - 1.0}});
    const cplx want = (1.0 - 1.0 / p) / (1.0 - cpw(p, -s));
    const auto est = padic_box_integrate(f, f.inner, 0, serial());
    CHECK(std::abs(est.value - want) < 1e-13);
    CHECK(est.depth_leaves == 0);
  }
}

TEST_CASE("one-dimensional beta integral is exact") {
  for (int p : {2, 3, 5}) {
    const cplx a(0.3, 0.2), b(0.25, -0.7);
    const auto est = padic_exact_1d(p, {mpq_class(0), mpq_class(1)}, {a - 1.0, b - 1.0});
    CHECK(std::abs(est.value - beta_by_shells(p, a, b)) < 1e-12);
    const cplx gamma_ratio = gamma_padic(p, 0, a) * gamma_padic(p, 0, b) / gamma_padic(p, 0, a + b);
    CHECK(std::abs(est.value - gamma_ratio) < 1e-12);
  }
}

TEST_CASE("one-dimensional integral with non-integral points") {
  // int |t|^{a-1} |t - 1/3|^{b-1} over Q_3: substitute t = u/3.
  const int p = 3;
  const cplx a(0.2, 0.1), b(0.3, 0.4);
  const auto est = padic_exact_1d(p, {mpq_class(0), mpq_class(1, 3)}, {a - 1.0, b - 1.0});
  const cplx want = cpw(p, a + b - 1.0) * beta_by_shells(p, a, b);
  CHECK(std::abs(est.value - want) < 1e-12);
  CHECK_THROWS_AS(padic_exact_1d(p, {mpq_class(0)}, {cplx(0.5)}), NonConvergent);
}

TEST_CASE("quadratic correction against the discriminant distribution") {
  for (int p : {3, 5, 7}) {
    const cplx s(0.3, 0.5), ku(0.6, 0.2), kr(-0.4, 0.9);
    // Delta = b1^2 - 4 b0, variable 0 = b1.
    const MPoly b1 = MPoly::var(2, 0), b0 = MPoly::var(2, 1);
    auto f = plain(p, 2, {{b1 * b1 - b0 * mpz_class(4), s}});
    f.inner.corr.kind = Correction::Kind::kQuadratic;
    f.inner.corr.disc_factor = 0;
    f.inner.corr.kappa_unramified = ku;
    f.inner.corr.kappa_ramified = kr;
    // Delta is Haar distributed on Z_p; half of the units are squares.
    const cplx rho = cpw(p, -(1.0 + s));
    const double u = 1.0 - 1.0 / p;
    const cplx even = u / (2.0 * (1.0 - rho * rho));
    const cplx want = even * (1.0 + ku) + kr * u * rho / (1.0 - rho * rho);
    const auto est = padic_box_integrate(f, f.inner, 0, serial());
    CHECK(std::abs(est.value - want) < 1e-12);
  }
}

TEST_CASE("box equals inner box plus shell in any unimodular chart") {
  const int p = 3;
  const cplx s1(-0.3, 0.4), s2(-0.45, 0.0);
  const MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
  // Same integrand in the chart (x, y) and in (x, x + y).
  auto f = plain(p, 2, {{x, s1}, {y * y - x * mpz_class(3) + MPoly::constant(2, 1), s2}});
  Chart sheared;
  const MPoly ys = y - x;
  sheared.factors = {{x, s1}, {ys * ys - x * mpz_class(3) + MPoly::constant(2, 1), s2}};
  const auto box1 = padic_box_integrate(f, f.inner, 1, serial());
  const auto box0 = padic_box_integrate(f, sheared, 0, serial());
  const auto shell1 = padic_shell_integrate(f, f.inner, 1, serial());
  const auto shell1s = padic_shell_integrate(f, sheared, 1, serial());
  CHECK(std::abs(box1.value - box0.value - shell1.value) < 1e-10 * std::abs(box1.value) + box1.tail + shell1.tail);
  CHECK(std::abs(shell1.value - shell1s.value) < 1e-10 * std::abs(shell1.value) + shell1.tail + shell1s.tail);
}

TEST_CASE("full integral of a product of beta integrands") {
  const int p = 3;
  const cplx a(0.3, 0.2), b(0.35, -0.1);
  const MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1), one = MPoly::constant(2, 1);
  const auto f = plain(p, 2, {{x, a - 1.0}, {one - x, b - 1.0}, {y, a - 1.0}, {one - y, b - 1.0}});
  EngineOptions opt;
  const auto est = padic_full_integrate(f, 60, opt);
  const cplx B = beta_by_shells(p, a, b);
  CHECK(est.tail_converged);
  CHECK(std::abs(est.value - B * B) <= est.total_error() + 1e-9);
  CHECK(std::abs(est.value - B * B) < 1e-6);
  CHECK(est.tail_ratio < 1.0);
}

TEST_CASE("trace hyperplane integrals") {
  const int p = 3;
  SUBCASE("two copies of Q_p") {
    const cplx s1(0.3, 0.2), s2(0.4, -0.5);
    const auto r = trace_hyperplane_integrate(p, {{1, s1, {}}, {1, s2, {}}}, 80, serial());
    CHECK(std::abs(r.lhs.value - beta_by_shells(p, s1, s2)) < 1e-12);
    CHECK(std::abs(r.lhs.value - r.rhs_untwisted * r.twist_factor) < 1e-12);
    CHECK(r.lhs.tail == 0.0);
  }
  SUBCASE("twisted") {
    const cplx s1(0.3, 0.2), s2(0.4, -0.5);
    const auto r = trace_hyperplane_integrate(p, {{1, s1, {3}}, {1, s2, {2}}}, 80, serial());
    CHECK(std::abs(r.twist_factor - cpw(p, s1)) < 1e-12);
    CHECK(std::abs(r.lhs.value - r.rhs_untwisted * r.twist_factor) < 1e-12);
  }
  SUBCASE("trace-one line in the unramified quadratic extension") {
    for (int q : {3, 5}) {
      const cplx s(0.2, 0.0);
      const auto r = trace_hyperplane_integrate(q, {{2, s, {}}}, 12, serial());
      const cplx want = gamma_padic(q * q, 0, s) / gamma_padic(q, 0, 2.0 * s);
      CHECK(std::abs(r.lhs.value - want) < 1e-12);
      CHECK(std::abs(r.rhs_untwisted - want) < 1e-14);
    }
  }
  SUBCASE("quadratic extension and Q_p") {
    const cplx s1(0.2, 0.3), s2(0.35, 0.1);
    const auto r = trace_hyperplane_integrate(p, {{2, s1, {}}, {1, s2, {}}}, 80);
    CHECK(std::abs(r.lhs.value - r.rhs_untwisted * r.twist_factor) <= r.lhs.total_error() + 1e-9);
    CHECK(std::abs(r.lhs.value - r.rhs_untwisted * r.twist_factor) < 1e-6);
  }
  CHECK_THROWS_AS(trace_hyperplane_integrate(p, {{1, 0.6, {}}, {1, 0.6, {}}}, 80), RegionViolation);
}

TEST_CASE("Monte Carlo over the complex plane") {
  auto disk = [](const std::vector<cplx>& z) { return std::abs(z[0]) < 1 ? 1.0 : 0.0; };
  ComplexSampler sp;
  const auto a = complex_mc_integrate(disk, 1, sp, 400000, 7, 1);
  CHECK(std::abs(a.value - 2 * kPi) < 5 * a.mc_sigma);
  const auto b = complex_mc_integrate(disk, 1, sp, 400000, 7, 4);
  CHECK(a.value == b.value);
  const auto c = complex_mc_integrate(disk, 1, sp, 1600000, 8, 4);
  CHECK(std::abs(a.mc_sigma / c.mc_sigma - 2.0) < 0.1);

  // int_C |z|_C^{a-1} |1-z|_C^{b-1} dz with |z|_C = |z|^2
  auto beta = [](const std::vector<cplx>& z) {
    return std::pow(std::abs(z[0]), 2 * 0.3 - 2) * std::pow(std::abs(1.0 - z[0]), 2 * 0.35 - 2);
  };
  ComplexSampler bs{0.3, 0.35, 1.35};
  const auto d = complex_mc_integrate(beta, 1, bs, 2000000, 3, 0);
  const cplx want = gamma_complex(0.3) * gamma_complex(0.35) / gamma_complex(0.65);
  CHECK(std::abs(d.value - want) < 5 * d.mc_sigma + 1e-3);
}

TEST_CASE("measure scale") {
  using M = std::vector<std::vector<mpq_class>>;
  CHECK(measure_scale(M{{1, 0}, {0, 1}}, 3) == doctest::Approx(1.0));
  CHECK(measure_scale(M{{3, 0}, {0, 1}}, 3) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(measure_scale(M{{mpq_class(1, 4)}}, 2) == doctest::Approx(2.0));
  CHECK(measure_scale(M{{2, 1}, {1, 2}}, 3) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK_THROWS_AS(measure_scale(M{{1, 1}, {1, 1}}, 3), SingularInput);
}

TEST_CASE("finite field enumeration") {
  const auto F = FiniteField::get(5);
  CHECK(ff_enumerate_sum(*F, 3, [](const std::vector<int>&) { return cplx(1.0); }).real() == 125.0);
  // Each root r and cofactor (x - s) gives one pair, so the root count sums to q^2.
  auto roots = [&](const std::vector<int>& b) {
    int count = 0;
    for (int x = 0; x < F->q(); ++x)
      if (F->add(F->add(F->mul(x, x), F->mul(b[0], x)), b[1]) == 0) ++count;
    return cplx(count);
  };
  CHECK(ff_enumerate_sum(*F, 2, roots).real() == 25.0);
  const auto G = FiniteField::get(3, 2);
  CHECK_THROWS_AS(ff_enumerate_sum(*G, 8, [](const std::vector<int>&) { return cplx(1.0); }), BudgetExceeded);
}
