// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "lsel/errors.hpp"
#include "lsel/finite_field.hpp"
#include "lsel/identities.hpp"
#include "lsel/integrators.hpp"
#include "lsel/poly.hpp"
#include "lsel/splitting.hpp"

using namespace lsel;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IdentityCase make(IdentityId id, LocalFieldDesc field, cplx a, cplx b, cplx c, int n = 1) {
  IdentityCase k;
  k.identity = id;
  k.field = field;
  k.a = a;
  k.b = b;
  k.c = c;
  k.n = n;
  k.engine.workers = 1;
  return k;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Runs verify and checks the gate, a deviation bound and a time limit.
VerificationReport gated(Outcome& o, const IdentityCase& k, const std::string& label, double limit_s) {
  VerificationReport r;
  try {
    r = verify(k);
  } catch (const std::exception& e) {
    o.require(false, label + ": " + e.what());
    return r;
  }
  o.require(r.pass, label + " outside its error budget");
  o.require(r.runtime_ms < 1000 * limit_s, label + " slower than " + std::to_string(limit_s) + " s");
  o.detail << " " << label << ": dev " << sci(r.abs_dev);
  if (r.lhs.mc_sigma > 0) o.detail << " (" << sci(r.sigma_dist) << " sigma)";
  return r;
}

Outcome gamma_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (long q : {2, 3, 5, 9, 25, 27})
    for (int d = 0; d <= 2; ++d)
      for (int k = 1; k <= 9; ++k) {
        const cplx s = 0.1 * k;
        worst = std::max(worst, std::abs(gamma_padic(q, d, s) - gamma_via_integral(q, d, s)));
      }
  const double t = seconds_since(t0);
  o.require(worst < 1e-12, "max deviation " + sci(worst));
  o.require(t < 1, "runtime");
  o.detail << " 162 points, max |dev| " << sci(worst) << ", " << t << " s";
  return o;
}

Outcome beta() {
  Outcome o;
  for (int p : {2, 5})
    for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{0.2, 0.2}}) {
      const auto r = gated(o, make(IdentityId::kBeta, LocalFieldDesc::padic(p), a, b, 0.1),
                           "Q_" + std::to_string(p), 1.0);
      const cplx ratio = gamma_padic(p, 0, a) * gamma_padic(p, 0, b) / gamma_padic(p, 0, a + b);
      o.require(std::abs(r.lhs.value - ratio) < 1e-9, "gamma ratio");
    }
  return o;
}

Outcome trace_line() {
  Outcome o;
  for (int p : {3, 5}) {
    const cplx s = 0.2;
    const auto t0 = std::chrono::steady_clock::now();
    const auto plain = trace_hyperplane_integrate(p, {{2, s, {}}}, 20);
    const cplx want = gamma_padic(static_cast<long>(p) * p, 0, s) / gamma_padic(p, 0, 2.0 * s);
    const double dev = std::abs(plain.lhs.value - want);
    o.require(dev <= plain.lhs.total_error() + 1e-9, "k = 1 line over Q_" + std::to_string(p * p));
    // a = p (1 + t) has |a|_E = p^{-2}, so c(a^{-1}) = p^{2s}
    const auto tw = trace_hyperplane_integrate(p, {{2, s, {p, p}}}, 20);
    const cplx cov = std::exp(std::log(static_cast<double>(p)) * 2.0 * s);
    o.require(std::abs(tw.twist_factor - cov) < 1e-12, "twist factor");
    o.require(std::abs(tw.lhs.value - plain.lhs.value * cov) <= tw.lhs.total_error() + plain.lhs.total_error() + 1e-9,
              "twisted covariance");
    const double t = seconds_since(t0);
    o.require(t < 10, "runtime");
    o.detail << " Q_" << p * p << ": dev " << sci(dev) << ", " << t << " s";
  }
  return o;
}

Outcome fixed_gamma() {
  Outcome o;
  auto k = make(IdentityId::kProp1, LocalFieldDesc::padic(3), 0, 0, 0);
  k.G = {1, 0, 1};
  k.s = 0.3;
  const auto r = gated(o, k, "G=x^2+1 Q_3", 30);
  o.require(r.abs_dev <= r.lhs.cert_err + 1e-6, "certified error + 1e-6");
  return o;
}

Outcome fixed_selberg() {
  Outcome o;
  auto k = make(IdentityId::kProp2, LocalFieldDesc::padic(5), 0.25, 0.25, 0.1);
  k.G = {-2, 1};
  k.engine.shells = 100;
  gated(o, k, "G=x-2 Q_5", 300);
  return o;
}

Outcome selberg_n2() {
  Outcome o;
  for (int p : {3, 5})
    for (auto [a, b, c] : {std::tuple{0.25, 0.25, 0.1}, std::tuple{0.2, 0.3, 0.08}}) {
      auto k = make(IdentityId::kTheorem, LocalFieldDesc::padic(p), a, b, c, 2);
      k.engine.shells = 100;
      std::ostringstream label;
      label << "Q_" << p << " (" << a << "," << b << "," << c << ")";
      gated(o, k, label.str(), 600);
    }
  for (int p : {3, 5}) {
    auto k = make(IdentityId::kRecursion, LocalFieldDesc::padic(p), 0.25, 0.25, 0.1, 2);
    k.engine.shells = 100;
    gated(o, k, "recursion Q_" + std::to_string(p), 600);
  }
  return o;
}

Outcome selberg_n3() {
  Outcome o;
  auto k = make(IdentityId::kTheorem, LocalFieldDesc::padic(5), 0.15, 0.15, 0.05, 3);
  k.engine.mc = true;
  k.engine.samples = 1'000'000;
  k.engine.workers = 0;
  const auto r = gated(o, k, "Q_5 N=1e6", 1800);
  const double rel = r.lhs.mc_sigma / std::abs(r.rhs);
  o.require(r.lhs.samples >= 1'000'000, "sample count");
  o.require(r.sigma_dist <= 3, "within 3 sigma");
  o.require(rel <= 0.02, "sigma / |RHS| = " + sci(rel));
  o.detail << ", sigma/|RHS| " << sci(rel) << ", " << r.runtime_ms / 1000 << " s";
  return o;
}

Outcome complex_case() {
  Outcome o;
  auto beta = make(IdentityId::kBeta, LocalFieldDesc::complex(), 0.4, 0.4, 0.1);
  beta.engine.samples = 1'000'000;
  beta.engine.workers = 0;
  gated(o, beta, "beta (0.4,0.4)", 60);
  auto aomoto = make(IdentityId::kComplexAomoto, LocalFieldDesc::complex(), 0.3, 0.3, 0.05, 2);
  aomoto.engine.samples = 4'000'000;
  aomoto.engine.workers = 0;
  gated(o, aomoto, "n=2 (0.3,0.3,0.05)", 600);
  const double q = classical_selberg_quadrature2(1, 1, 1);
  o.require(std::abs(q - 1.0 / 6) < 1e-12, "S_2(1,1,1) quadrature");
  o.require(std::abs(classical_selberg(2, 1, 1, 1) - 1.0 / 6) < 1e-12, "S_2(1,1,1) product formula");
  o.require(std::abs(classical_selberg_quadrature2(2, 3, 1) - classical_selberg(2, 2, 3, 1)) < 1e-12,
            "S_2(2,3,1) quadrature vs product");
  o.detail << ", S_2(1,1,1) = " << q;
  return o;
}

Outcome finite_fields() {
  Outcome o;
  long checked = 0;
  for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}}) {
    const auto F = FiniteField::get(p, f);
    for (int j = 1; j < F->q() - 1; ++j, ++checked)
      o.require(std::abs(std::abs(gauss_sum(*F, j)) - std::sqrt(F->q())) < 1e-9, "|g| = sqrt q");
  }
  // -g(chi o N) = (-g(chi))^m for the lift from F_p to F_{p^m}
  long lifts = 0;
  for (int p : {2, 3, 5, 7})
    for (int m = 1; m <= 3; ++m) {
      const auto F = FiniteField::get(p, m);
      const long lift = (F->q() - 1) / (p - 1);
      for (int j = 0; j < p - 1; ++j, ++lifts) {
        cplx small = 0.0;
        for (long k = 0; k < p - 1; ++k)
          small += std::polar(1.0, 2 * kPi * j * k / (p - 1)) *
                   std::polar(1.0, 2 * kPi * F->partial_trace(F->exp(k * lift), 1) / p);
        o.require(std::abs(-gauss_sum(*F, static_cast<int>(j * lift)) - std::pow(-small, m)) < 1e-8,
                  "lifting relation");
      }
    }
  // F_4 as the base field inside F_16
  {
    const auto F = FiniteField::get(2, 4);
    const long lift = (F->q() - 1) / 3;
    for (int j = 0; j < 3; ++j, ++lifts) {
      cplx small = 0.0;
      for (long k = 0; k < 3; ++k)
        small += std::polar(1.0, 2 * kPi * j * k / 3) * std::polar(1.0, 2 * kPi * F->partial_trace(F->exp(k * lift), 2) / 2);
      o.require(std::abs(-gauss_sum(*F, static_cast<int>(j * lift)) - std::pow(-small, 2)) < 1e-8,
                "lifting relation over F_4");
    }
  }
  long triples = 0;
  const auto F5 = FiniteField::get(5);
  for (int a = 1; a < 4; ++a)
    for (int b = 1; b < 4; ++b)
      for (int c = 1; c < 4; ++c) {
        auto k = make(IdentityId::kFfSelberg, LocalFieldDesc::finite(5), 0, 0, 0, 2);
        k.chi_a = a;
        k.chi_b = b;
        k.chi_c = c;
        try {
          check_region(k);
        } catch (const RegionViolation&) {
          continue;
        }
        ++triples;
        const cplx lhs = ff_selberg_sum(*F5, 2, a, b, c), rhs = ff_selberg_rhs(*F5, 2, a, b, c);
        o.require(std::abs(lhs - rhs) < 1e-9, "ff_selberg (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                  std::to_string(c) + ")");
      }
  o.require(triples > 0, "no admissible triple");
  o.detail << " " << checked << " Gauss sums, " << lifts << " lifts, " << triples << " ff_selberg triples at q=5";
  return o;
}

Outcome properties() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  using QPoly = Poly<mpq_class>;
  using C = cplx;
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> coef(-9, 9);
  auto rq = [&](int deg) {
    std::vector<mpq_class> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(coef(rng), 1 + std::abs(coef(rng)) % 4);
    for (auto& x : c) x.canonicalize();
    if (c.back() == 0) c.back() = 1;
    return QPoly(c, mpq_class(0));
  };
  long res_checks = 0;
  for (int t = 0; t < 60; ++t, ++res_checks) {
    const QPoly f = rq(1 + t % 3), g1 = rq(1 + (t / 3) % 3), g2 = rq(1 + (t / 9) % 3);
    o.require(resultant(f, g1 * g2) == resultant(f, g1) * resultant(f, g2), "R(f, g1 g2)");
    o.require(resultant(g1 * g2, f) == resultant(g1, f) * resultant(g2, f), "R(f1 f2, g)");
  }
  std::normal_distribution<double> nd;
  long jac = 0;
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 20; ++t, ++jac) {
      std::vector<C> z;
      for (int i = 0; i < n; ++i) z.emplace_back(nd(rng), nd(rng));
      C prod = 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) prod *= (z[i] - z[j]) * (z[i] - z[j]);
      const CMonic f = roots_to_coeffs(z);
      const C disc = discriminant(f);
      o.require(std::abs(disc - prod) <= 1e-9 * std::max(1.0, std::abs(prod)), "Jacobian identity");
      // R(f, f') = (-1)^{n(n-1)/2} Delta(f) from the roots: R(f, f') = prod f'(z_i)
      if (n >= 2) {
        const auto P = f.poly();
        const C Rff = resultant(P, P.derivative());
        C via_roots = 1.0;
        for (const auto& zi : z) via_roots *= P.derivative()(zi);
        const double sign = (n * (n - 1) / 2) % 2 ? -1.0 : 1.0;
        o.require(std::abs(Rff - via_roots) <= 1e-8 * std::abs(Rff), "R(f, f') by roots");
        o.require(std::abs(Rff - sign * prod) <= 1e-8 * std::abs(Rff), "R(f, f') = +-Delta");
      }
    }
  // splitting type is constant on certified balls
  const auto f = selberg_padic_integrand(5, 3, 0.15, 0.15, 0.05);
  std::uniform_int_distribution<long> digit(-60, 60);
  long balls = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<mpq_class> x{mpq_class(digit(rng), 5), mpq_class(digit(rng)), mpq_class(digit(rng))};
    std::vector<mpq_class> coeffs(x.rbegin(), x.rend());
    coeffs.push_back(1);
    const mpq_class disc = discriminant(MonicPoly<mpq_class>::from_poly(QPoly(coeffs, mpq_class(0))));
    if (disc == 0) continue;
    int r = 0;
    while (!f.inner.corr.constant_on_ball(x, r, padic_valuation(disc, 5))) ++r;
    const auto base = splitting_type_padic(coeffs, 5);
    for (int j = 0; j < 3; ++j, ++balls) {
      auto y = x;
      y[j] += mpq_class(ppow(5, r)) * digit(rng);
      std::vector<mpq_class> cy(y.rbegin(), y.rend());
      cy.push_back(1);
      o.require(splitting_type_padic(cy, 5) == base, "splitting type constant on a certified ball");
    }
  }
  // seeds fix Monte Carlo results regardless of the worker count
  auto disk = [](const std::vector<cplx>& z) { return std::abs(z[0]) < 1 ? 1.0 : 0.0; };
  const auto m1 = complex_mc_integrate(disk, 1, ComplexSampler{}, 100000, 7, 1);
  const auto m2 = complex_mc_integrate(disk, 1, ComplexSampler{}, 100000, 7, 4);
  o.require(m1.value == m2.value, "complex MC seed determinism");
  const auto r1 = selberg_padic_root_mc(5, 2, 0.25, 0.25, 0.1, 20000, 3, 1);
  const auto r2 = selberg_padic_root_mc(5, 2, 0.25, 0.25, 0.1, 20000, 3, 4);
  o.require(r1.value == r2.value, "p-adic MC seed determinism");
  const double t = seconds_since(t0);
  o.require(t < 120, "runtime");
  o.detail << " " << res_checks << " resultant pairs, " << jac << " root sets, " << balls << " perturbed balls, " << t
           << " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gamma factor equals its integral oracle", gamma_oracle},
      {"p-adic beta integral", beta},
      {"trace-hyperplane integral and twist covariance", trace_line},
      {"fixed-polynomial gamma identity", fixed_gamma},
      {"fixed-polynomial Selberg identity", fixed_selberg},
      {"Selberg identity n=2 and recursion", selberg_n2},
      {"Selberg identity n=3 by Monte Carlo", selberg_n3},
      {"complex Selberg integrals", complex_case},
      {"finite-field Gauss sums and Selberg sums", finite_fields},
      {"algebraic property suites", properties},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("criterion %2zu: %s  %s (%.1f s):%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
