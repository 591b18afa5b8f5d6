#include "lsel/identities.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "lsel/errors.hpp"
#include "lsel/factor_ff.hpp"
#include "lsel/padic.hpp"

namespace lsel {

namespace {

constexpr double kPi = std::numbers::pi;

const std::map<std::string, IdentityId>& names() {
  static const std::map<std::string, IdentityId> m{
      {"gamma_integral", IdentityId::kGammaIntegral}, {"beta", IdentityId::kBeta},
      {"gen_beta", IdentityId::kGenBeta},             {"prop1", IdentityId::kProp1},
      {"prop2", IdentityId::kProp2},                  {"theorem", IdentityId::kTheorem},
      {"recursion", IdentityId::kRecursion},          {"complex_aomoto", IdentityId::kComplexAomoto},
      {"ff_selberg", IdentityId::kFfSelberg},
  };
  return m;
}

// |x|_p^s for a nonzero rational x.
cplx abs_pow(const mpq_class& x, int p, cplx s) {
  if (x == 0) throw SingularInput("zero argument of a quasi-character");
  return std::exp(-std::log(static_cast<double>(p)) * static_cast<double>(padic_valuation(x, p)) * s);
}

cplx named_gamma(const LocalFieldDesc& field, cplx s, const std::string& label) {
  try {
    return gamma_of(field, s);
  } catch (const PoleError& e) {
    throw PoleError("pole of " + label + ": " + e.what());
  }
}

MonicPoly<mpq_class> monic_from_long(const std::vector<long>& G) {
  if (G.size() < 2 || G.back() != 1) throw std::invalid_argument("G must be monic of degree >= 1");
  std::vector<mpq_class> c(G.begin(), G.end());
  return MonicPoly<mpq_class>::from_poly(Poly<mpq_class>(c, mpq_class(0)));
}

struct GData {
  MonicPoly<mpq_class> G;
  mpq_class disc, res_derivative;
  SplittingType type;
};

GData analyse_G(const std::vector<long>& coeffs, int p) {
  GData d;
  d.G = monic_from_long(coeffs);
  const int n = d.G.degree();
  if (n >= p) throw UnsupportedDegree("G: wild ramification (p <= deg G) is not supported");
  d.disc = discriminant(d.G);
  if (d.disc == 0) throw SingularInput("G is not squarefree");
  d.res_derivative = resultant(d.G.poly(), d.G.poly().derivative());
  d.type = splitting_type_padic(d.G, p);
  return d;
}

cplx gamma_product(const SplittingType& type, int p, cplx s) {
  cplx r = 1.0;
  const auto base = LocalFieldDesc::padic(p);
  const auto chi = QuasiCharacter::unramified(base, s);
  for (const auto& inv : type.factors) r *= gamma_ext(inv, base, chi);
  return r;
}

PolyOverMPoly constant_poly(const std::vector<long>& G, int nvars) {
  PolyOverMPoly r;
  for (long c : G) r.push_back(MPoly::constant(nvars, c));
  return r;
}

EngineOptions engine_options(const EngineSettings& s) {
  EngineOptions o;
  o.max_depth = s.max_depth;
  o.mc = s.mc;
  o.mc_depth = s.mc_depth;
  o.samples = s.samples;
  o.seed = s.seed;
  o.workers = s.workers;
  return o;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw RegionViolation(what);
}

// Splitting type of the monic polynomial with eta = x is constant on the
// ball of radius p^{-r} around x when, after scaling to integral
// coefficients, the perturbation is below |Delta|^2 (Krasner / Hensel).
bool splitting_constant_on_ball(const std::vector<mpq_class>& x, int r, int disc_val, int p) {
  const int n = static_cast<int>(x.size());
  int t = 0;
  for (int j = 0; j < n; ++j) {
    if (x[j] == 0) continue;
    const int v = padic_valuation(x[j], p);
    // x[j] is the coefficient of x^{n-1-j}; scaling multiplies it by p^{(j+1)t}
    if (v < 0) t = std::max(t, (-v + j) / (j + 1));
  }
  const int perturbation = r + t;
  return perturbation >= 2 * (disc_val + n * (n - 1) * t) + 1;
}

IntegralEstimate exact_estimate(cplx v) {
  IntegralEstimate e;
  e.value = v;
  return e;
}

IntegralEstimate complex_selberg_mc(int n, cplx a, cplx b, cplx c, const EngineSettings& s) {
  const double ar = a.real(), br = b.real(), cr = c.real();
  auto integrand = [=](const std::vector<cplx>& z) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) v *= std::pow(std::abs(z[i]), 2 * ar - 2) * std::pow(std::abs(1.0 - z[i]), 2 * br - 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) v *= std::pow(std::abs(z[i] - z[j]), 4 * cr);
    return v;
  };
  ComplexSampler sp;
  sp.tau0 = ar;
  sp.tau1 = br;
  sp.t_out = 2 - ar - br - 2 * (n - 1) * cr;
  const long N = s.samples > 0 ? s.samples : 1'000'000;
  return complex_mc_integrate(integrand, n, sp, N, s.seed, s.workers);
}

IntegralEstimate padic_selberg_lhs(int p, int n, cplx a, cplx b, cplx c, const EngineSettings& s, std::string& engine) {
  if (n == 1) {
    engine = "exact-1d";
    return padic_exact_1d(p, {mpq_class(0), mpq_class(-1)}, {a - 1.0, b - 1.0});
  }
  if (s.mc) {
    engine = "root-mc";
    return selberg_padic_root_mc(p, n, a, b, c, s.samples > 0 ? s.samples : 1'000'000, s.seed, s.workers);
  }
  engine = "stratified";
  return padic_full_integrate(selberg_padic_integrand(p, n, a, b, c), s.shells, engine_options(s));
}

bool is_unramified_padic(const LocalFieldDesc& f) { return f.kind == LocalFieldDesc::Kind::kPadic && f.f == 1 && f.d == 0; }

}  // namespace

std::string identity_name(IdentityId id) {
  for (const auto& [k, v] : names())
    if (v == id) return k;
  return "unknown";
}

IdentityId identity_from_name(const std::string& name) {
  auto it = names().find(name);
  if (it == names().end()) throw std::invalid_argument("unknown identity '" + name + "'");
  return it->second;
}

void check_region(const IdentityCase& c) {
  const double a = c.a.real(), b = c.b.real(), g = c.c.real();
  switch (c.identity) {
    case IdentityId::kGammaIntegral:
      require(c.s.real() > 0, "gamma_integral: need re s > 0");
      break;
    case IdentityId::kBeta:
      require(a > 0 && b > 0 && a + b < 1, "beta: need re a, re b > 0 and re a + re b < 1");
      break;
    case IdentityId::kGenBeta: {
      double sum = 0;
      for (const auto& comp : c.components) {
        require(comp.s.real() > 0, "gen_beta: need re c_i > 0");
        sum += comp.degree * comp.s.real();
      }
      require(sum < 1, "gen_beta: need sum d_i re c_i < 1");
      break;
    }
    case IdentityId::kProp1: {
      const int n = static_cast<int>(c.G.size()) - 1;
      require(n * c.s.real() > 0 && n * c.s.real() < 1, "prop1: need 0 < n re chi < 1");
      break;
    }
    case IdentityId::kProp2: {
      const int n = static_cast<int>(c.G.size());
      require(a > 0 && b > 0 && g > 0 && a + b + (n - 1) * g < 1,
              "prop2: need re a, re b, re c > 0 and re a + re b + (n-1) re c < 1");
      break;
    }
    case IdentityId::kTheorem:
    case IdentityId::kRecursion:
    case IdentityId::kComplexAomoto:
      require(c.n >= 1, "n must be >= 1");
      require(a > 0 && b > 0 && g > 0 && a + b + 2 * (c.n - 1) * g < 1,
              "outside R_n: need re a, re b, re c > 0 and re a + re b + 2(n-1) re c < 1");
      if (c.identity == IdentityId::kRecursion) require(c.n >= 2, "recursion: need n >= 2");
      break;
    case IdentityId::kFfSelberg: {
      const int q1 = static_cast<int>(c.field.q()) - 1;
      auto nontrivial = [&](long k) { return ((k % q1) + q1) % q1 != 0; };
      for (int j = 0; j < c.n; ++j) {
        require(nontrivial(c.chi_a + static_cast<long>(j) * c.chi_c) && nontrivial(c.chi_b + static_cast<long>(j) * c.chi_c) &&
                    nontrivial(static_cast<long>(j + 1) * c.chi_c) &&
                    nontrivial(c.chi_a + c.chi_b + static_cast<long>(c.n + j - 1) * c.chi_c) && nontrivial(c.chi_c),
                "ff_selberg: every Gauss-sum argument must be a nontrivial character");
      }
      break;
    }
  }
}

cplx selberg_correction(const SplittingType& type, int p, cplx c) {
  const auto base = LocalFieldDesc::padic(p);
  const auto chi = QuasiCharacter::unramified(base, c);
  const cplx g = gamma_padic(p, 0, c);
  cplx r = 1.0;
  for (const auto& inv : type.factors) {
    if (inv.degree() == 1) continue;
    r *= gamma_ext(inv, base, chi) / std::pow(g, inv.degree());
  }
  return r;
}

cplx selberg_integrand(const MonicPoly<mpq_class>& f, int p, cplx a, cplx b, cplx c) {
  const mpq_class f0 = f(mpq_class(0)), f1 = f(mpq_class(1));
  const mpq_class disc = discriminant(f);
  if (f0 == 0 || f1 == 0 || disc == 0) throw SingularInput("selberg_integrand: f(0) f(1) Delta(f) = 0");
  cplx v = abs_pow(f0, p, a - 1.0) * abs_pow(f1, p, b - 1.0) * abs_pow(disc, p, c - 0.5);
  if (f.degree() > 1) v *= selberg_correction(splitting_type_padic(f, p), p, c);
  return v;
}

cplx selberg_integrand_complex(const CMonic& f, cplx a, cplx b, cplx c) {
  const cplx f0 = f(0.0), f1 = f(1.0);
  const cplx disc = discriminant(f);
  if (f0 == 0.0 || f1 == 0.0 || disc == 0.0) throw SingularInput("selberg_integrand: f(0) f(1) Delta(f) = 0");
  auto absc = [](cplx z, cplx s) { return std::exp(2.0 * std::log(std::abs(z)) * s); };
  return absc(f0, a - 1.0) * absc(f1, b - 1.0) * absc(disc, c - 0.5);
}

cplx rhs_theorem(const LocalFieldDesc& field, cplx a, cplx b, cplx c, int n) {
  if (n < 1) throw std::invalid_argument("rhs_theorem: n must be >= 1");
  cplx r = 1.0;
  for (int j = 0; j < n; ++j) {
    const double jd = j;
    r *= named_gamma(field, a + jd * c, "Gamma(alpha gamma^" + std::to_string(j) + ")");
    r *= named_gamma(field, b + jd * c, "Gamma(beta gamma^" + std::to_string(j) + ")");
    r /= named_gamma(field, a + b + static_cast<double>(n + j - 1) * c,
                     "Gamma(alpha beta gamma^" + std::to_string(n + j - 1) + ")");
    // Gamma(gamma^{j+1}) / Gamma(gamma) is 1 for j = 0
    if (j > 0) {
      r *= named_gamma(field, static_cast<double>(j + 1) * c, "Gamma(gamma^" + std::to_string(j + 1) + ")");
      r /= named_gamma(field, c, "Gamma(gamma)");
    }
  }
  return r;
}

cplx rhs_beta(const LocalFieldDesc& field, cplx a, cplx b) { return rhs_theorem(field, a, b, 0.0, 1); }

cplx rhs_prop1(const std::vector<long>& G, int p, cplx s) {
  const GData d = analyse_G(G, p);
  const int n = d.G.degree();
  const auto field = LocalFieldDesc::padic(p);
  return abs_pow(d.disc, p, -0.5) * abs_pow(d.res_derivative, p, s) * gamma_product(d.type, p, s) /
         named_gamma(field, static_cast<double>(n) * s, "Gamma(chi^n)");
}

cplx rhs_prop2(const std::vector<long>& G, int p, cplx a, cplx b, cplx c) {
  const GData d = analyse_G(G, p);
  const int n = d.G.degree() + 1;
  const mpq_class g0 = d.G(mpq_class(0)), g1 = d.G(mpq_class(1));
  if (g0 == 0 || g1 == 0) throw SingularInput("prop2: need G(0) G(1) != 0");
  const auto field = LocalFieldDesc::padic(p);
  // alpha(-1) = 1 for unramified alpha
  return abs_pow(d.disc, p, -0.5) * abs_pow(g0, p, a + c - 1.0) * abs_pow(g1, p, b + c - 1.0) *
         abs_pow(d.res_derivative, p, c) * named_gamma(field, a, "Gamma(alpha)") * named_gamma(field, b, "Gamma(beta)") *
         gamma_product(d.type, p, c) /
         named_gamma(field, a + b + static_cast<double>(n - 1) * c, "Gamma(alpha beta gamma^" + std::to_string(n - 1) + ")");
}

cplx recursion_factor(const LocalFieldDesc& field, cplx a, cplx b, cplx c, int n) {
  const double nd = n;
  return named_gamma(field, a, "Gamma(alpha)") * named_gamma(field, b, "Gamma(beta)") *
         named_gamma(field, nd * c, "Gamma(gamma^n)") /
         (named_gamma(field, a + b + (nd - 1) * c, "Gamma(alpha beta gamma^(n-1))") * named_gamma(field, c, "Gamma(gamma)"));
}

PadicIntegrand selberg_padic_integrand(int p, int n, cplx a, cplx b, cplx c) {
  if (n < 1 || n > 3) throw UnsupportedDegree("selberg_padic_integrand: n must be 1, 2 or 3");
  if (p <= n) throw UnsupportedDegree("selberg_padic_integrand: wild ramification (p <= n) is not supported");
  const PolyOverMPoly f = generic_monic(n);
  PadicIntegrand out;
  out.p = p;
  out.n = n;
  Chart eta;
  eta.factors.push_back({evaluate_at(f, 0), a - 1.0});
  eta.factors.push_back({evaluate_at(f, 1), b - 1.0});
  if (n >= 2) {
    eta.factors.push_back({discriminant_monic(f), c - 0.5});
    eta.corr.disc_factor = 2;
  }
  if (n == 2) {
    eta.corr.kind = Correction::Kind::kQuadratic;
    const cplx g2 = std::pow(gamma_padic(p, 0, c), 2);
    eta.corr.kappa_unramified = gamma_padic(static_cast<long>(p) * p, 0, c) / g2;
    eta.corr.kappa_ramified = gamma_padic(p, 1, c) / g2;
  } else if (n == 3) {
    eta.corr.kind = Correction::Kind::kGeneral;
    eta.corr.value = [p, c](const std::vector<mpq_class>& x) {
      std::vector<mpq_class> coeffs(x.rbegin(), x.rend());
      coeffs.push_back(1);
      return selberg_correction(splitting_type_padic(coeffs, p), p, c);
    };
    eta.corr.constant_on_ball = [p](const std::vector<mpq_class>& x, int r, int disc_val) {
      return splitting_constant_on_ball(x, r, disc_val, p);
    };
  }
  out.outer = eta;
  out.inner = eta;
  if (n == 2) {
    // Inner box chart (x, y) = (b0, b0 + b1): the curve Delta = 0 meets the
    // lines f(0) = 0 and f(1) = 0 tangentially, and this chart separates the
    // two contact points along a coordinate axis.
    const MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    const std::vector<MPoly> images{y - x, x};
    for (auto& fac : out.inner.factors) fac.q = fac.q.substitute(images);
  }
  return out;
}

PadicIntegrand prop1_padic_integrand(const std::vector<long>& G, int p, cplx s) {
  const int n = static_cast<int>(G.size()) - 1;
  if (n < 2) throw std::invalid_argument("prop1_padic_integrand: deg G must be >= 2");
  if (n - 1 > MPoly::kMaxVars) throw UnsupportedDegree("prop1_padic_integrand: deg G too large");
  PadicIntegrand out;
  out.p = p;
  out.n = n - 1;
  out.inner.factors.push_back({resultant_monic(constant_poly(G, n - 1), generic_monic(n - 1)), s - 1.0});
  out.outer = out.inner;
  return out;
}

PadicIntegrand prop2_padic_integrand(const std::vector<long>& G, int p, cplx a, cplx b, cplx c) {
  const int n = static_cast<int>(G.size());
  if (n > MPoly::kMaxVars) throw UnsupportedDegree("prop2_padic_integrand: deg G too large");
  const PolyOverMPoly f = generic_monic(n);
  PadicIntegrand out;
  out.p = p;
  out.n = n;
  out.inner.factors.push_back({evaluate_at(f, 0), a - 1.0});
  out.inner.factors.push_back({evaluate_at(f, 1), b - 1.0});
  out.inner.factors.push_back({resultant_monic(constant_poly(G, n), f), c - 1.0});
  out.outer = out.inner;
  return out;
}

double classical_selberg(int n, double a, double b, double c) {
  double r = 1.0;
  for (int j = 0; j < n; ++j)
    r *= std::tgamma(a + j * c) * std::tgamma(b + j * c) * std::tgamma(1 + (j + 1) * c) /
         (std::tgamma(a + b + (n + j - 1) * c) * std::tgamma(1 + c));
  return r;
}

double classical_selberg_quadrature2(double a, double b, double c, int nodes) {
  // Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
  std::vector<double> x(nodes), w(nodes);
  for (int i = 0; i < nodes; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (nodes + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= nodes; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = nodes * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (z + 1);
    w[i] = 1.0 / ((1 - z * z) * dp * dp);
  }
  double total = 0;
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j) {
      const double t1 = x[i], t2 = x[j];
      total += w[i] * w[j] * std::pow(t1, a - 1) * std::pow(1 - t1, b - 1) * std::pow(t2, a - 1) *
               std::pow(1 - t2, b - 1) * std::pow(std::abs(t1 - t2), 2 * c);
    }
  return total;
}

cplx rhs_complex(cplx a, cplx b, cplx c, int n) {
  return static_cast<double>(factorial(n)) * rhs_theorem(LocalFieldDesc::complex(), a, b, c, n);
}

double rhs_complex_via_classical(double a, double b, double c, int n) {
  double num = 1, den = static_cast<double>(factorial(n));
  for (int j = 0; j < n; ++j) {
    num *= 2 * std::sin(kPi * (a + j * c)) * std::sin(kPi * (b + j * c)) * std::sin(kPi * (j + 1) * c);
    den *= std::sin(kPi * (a + b + (n + j - 1) * c)) * std::sin(kPi * c);
  }
  const double S = classical_selberg(n, a, b, c);
  return num / den * S * S;
}

cplx ff_selberg_sum(const FiniteField& F, int n, int chi_a, int chi_b, int chi_c) {
  const int q1 = F.q() - 1;
  auto chi = [&](int idx, int x) -> cplx {
    if (x == 0) return 0.0;
    const long k = (static_cast<long>(idx) * F.log(x)) % q1;
    return std::polar(1.0, 2 * kPi * static_cast<double>(k) / q1);
  };
  const FFElem zero(&F, 0), one(&F, 1);
  const cplx sign = std::pow(chi(chi_a, F.neg(1)), n);
  return sign * ff_enumerate_sum(F, n, [&](const std::vector<int>& eta) {
           std::vector<FFElem> e;
           for (int v : eta) e.emplace_back(&F, v);
           const MonicPoly<FFElem> f(e, zero);
           const int f0 = f(zero).v, f1 = f(one).v;
           const int disc = n == 1 ? 1 : discriminant(f).v;
           if (f0 == 0 || f1 == 0 || disc == 0) return cplx(0.0);
           double corr = 1;
           for (int d : factor_degrees_ff(f.poly()))
             if ((d - 1) % 2) corr = -corr;
           return chi(chi_a, f0) * chi(chi_b, f1) * chi(chi_c, disc) * corr;
         });
}

cplx ff_selberg_rhs(const FiniteField& F, int n, int chi_a, int chi_b, int chi_c) {
  const int q1 = F.q() - 1;
  auto g = [&](long idx) { return gauss_sum(F, static_cast<int>(((idx % q1) + q1) % q1)); };
  cplx r = 1.0;
  for (int j = 0; j < n; ++j) {
    r *= g(chi_a + static_cast<long>(j) * chi_c) * g(chi_b + static_cast<long>(j) * chi_c) *
         g(static_cast<long>(j + 1) * chi_c);
    r /= g(chi_a + chi_b + static_cast<long>(n + j - 1) * chi_c) * g(chi_c);
  }
  return r;
}

VerificationReport verify(const IdentityCase& c) {
  const auto start = std::chrono::steady_clock::now();
  check_region(c);
  VerificationReport rep;
  rep.input = c;
  const auto& F = c.field;
  const bool complex_field = F.kind == LocalFieldDesc::Kind::kComplex;
  auto need_padic = [&] {
    if (!is_unramified_padic(F)) throw std::invalid_argument(identity_name(c.identity) + ": needs the field Q_p");
  };
  switch (c.identity) {
    case IdentityId::kGammaIntegral:
      if (F.kind != LocalFieldDesc::Kind::kPadic) throw std::invalid_argument("gamma_integral: needs a p-adic field");
      rep.engine = "exact-shell";
      rep.lhs = exact_estimate(gamma_via_integral(F.q(), F.d, c.s));
      rep.rhs = gamma_padic(F.q(), F.d, c.s);
      break;
    case IdentityId::kBeta:
      rep.rhs = rhs_beta(F, c.a, c.b);
      if (complex_field) {
        rep.engine = "complex-mc";
        rep.lhs = complex_selberg_mc(1, c.a, c.b, 0.0, c.engine);
      } else {
        need_padic();
        rep.engine = "exact-1d";
        rep.lhs = padic_exact_1d(F.p, {mpq_class(0), mpq_class(1)}, {c.a - 1.0, c.b - 1.0});
      }
      break;
    case IdentityId::kGenBeta: {
      need_padic();
      rep.engine = "trace-hyperplane";
      const auto r = trace_hyperplane_integrate(F.p, c.components, c.engine.shells, engine_options(c.engine));
      rep.lhs = r.lhs;
      rep.rhs = r.rhs_untwisted * r.twist_factor;
      break;
    }
    case IdentityId::kProp1:
      need_padic();
      rep.rhs = rhs_prop1(c.G, F.p, c.s);
      if (c.G.size() == 2) {
        rep.engine = "exact";
        rep.lhs = exact_estimate(1.0);  // M_0 = {1} and R(G, 1) = 1
      } else {
        rep.engine = c.G.size() == 3 ? "stratified-1d" : "stratified";
        rep.lhs = padic_full_integrate(prop1_padic_integrand(c.G, F.p, c.s), c.engine.shells, engine_options(c.engine));
      }
      break;
    case IdentityId::kProp2:
      need_padic();
      rep.rhs = rhs_prop2(c.G, F.p, c.a, c.b, c.c);
      rep.engine = "stratified";
      rep.lhs = padic_full_integrate(prop2_padic_integrand(c.G, F.p, c.a, c.b, c.c), c.engine.shells,
                                     engine_options(c.engine));
      break;
    case IdentityId::kTheorem:
      rep.rhs = rhs_theorem(F, c.a, c.b, c.c, c.n);
      if (complex_field) {
        rep.engine = "complex-mc";
        rep.lhs = complex_selberg_mc(c.n, c.a, c.b, c.c, c.engine);
        const double k = 1.0 / static_cast<double>(factorial(c.n));
        rep.lhs.value *= k;
        rep.lhs.mc_sigma *= k;
      } else {
        need_padic();
        rep.lhs = padic_selberg_lhs(F.p, c.n, c.a, c.b, c.c, c.engine, rep.engine);
      }
      break;
    case IdentityId::kRecursion: {
      need_padic();
      std::string inner_engine;
      rep.lhs = padic_selberg_lhs(F.p, c.n, c.a, c.b, c.c, c.engine, rep.engine);
      const IntegralEstimate lower = padic_selberg_lhs(F.p, c.n - 1, c.a + c.c, c.b + c.c, c.c, c.engine, inner_engine);
      const cplx k = recursion_factor(F, c.a, c.b, c.c, c.n);
      rep.rhs = lower.value * k;
      // the lower-dimensional estimate carries its own error
      rep.lhs.cert_err += std::abs(k) * lower.cert_err;
      rep.lhs.tail += std::abs(k) * lower.tail;
      rep.lhs.mc_sigma = std::hypot(rep.lhs.mc_sigma, std::abs(k) * lower.mc_sigma);
      rep.engine += "+" + inner_engine;
      rep.notes.push_back("S_{n-1}(a+c, b+c, c) = " + std::to_string(lower.value.real()) + " + " +
                          std::to_string(lower.value.imag()) + "i");
      rep.notes.push_back("rhs_theorem = " + std::to_string(rhs_theorem(F, c.a, c.b, c.c, c.n).real()));
      break;
    }
    case IdentityId::kComplexAomoto:
      rep.engine = "complex-mc";
      rep.rhs = rhs_complex(c.a, c.b, c.c, c.n);
      rep.lhs = complex_selberg_mc(c.n, c.a, c.b, c.c, c.engine);
      if (c.a.imag() == 0 && c.b.imag() == 0 && c.c.imag() == 0)
        rep.notes.push_back("classical form = " +
                            std::to_string(rhs_complex_via_classical(c.a.real(), c.b.real(), c.c.real(), c.n)));
      break;
    case IdentityId::kFfSelberg: {
      if (F.kind != LocalFieldDesc::Kind::kFinite) throw std::invalid_argument("ff_selberg: needs a finite field");
      const auto FF = FiniteField::get(F.p, F.f);
      rep.engine = "ff-enumeration";
      rep.lhs = exact_estimate(ff_selberg_sum(*FF, c.n, c.chi_a, c.chi_b, c.chi_c));
      rep.rhs = ff_selberg_rhs(*FF, c.n, c.chi_a, c.chi_b, c.chi_c);
      break;
    }
  }
  rep.abs_dev = std::abs(rep.lhs.value - rep.rhs);
  rep.rel_dev = std::abs(rep.rhs) > 0 ? rep.abs_dev / std::abs(rep.rhs) : rep.abs_dev;
  rep.sigma_dist = rep.lhs.mc_sigma > 0 ? rep.abs_dev / rep.lhs.mc_sigma : 0.0;
  rep.pass = std::isfinite(rep.abs_dev) &&
             rep.abs_dev <= rep.lhs.cert_err + rep.lhs.tail + c.engine.gate * rep.lhs.mc_sigma + 1e-9;
  rep.notes.insert(rep.notes.end(), rep.lhs.warnings.begin(), rep.lhs.warnings.end());
  rep.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<IdentityCase> desk_suite() {
  std::vector<IdentityCase> out;
  auto add = [&](IdentityCase c, std::string id) {
    c.case_id = std::move(id);
    out.push_back(std::move(c));
  };
  auto fmt = [](double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  };

  for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {5, 1}, {3, 2}, {5, 2}, {3, 3}})
    for (int d = 0; d <= 2; ++d)
      for (int k = 1; k <= 9; ++k) {
        IdentityCase c;
        c.identity = IdentityId::kGammaIntegral;
        c.field = LocalFieldDesc::padic(p, f, d);
        c.s = 0.1 * k;
        add(c, "gamma q=" + std::to_string(c.field.q()) + " d=" + std::to_string(d) + " s=" + fmt(0.1 * k));
      }
  for (int p : {2, 5})
    for (auto [a, b] : {std::pair{0.3, 0.4}, {0.2, 0.2}}) {
      IdentityCase c;
      c.identity = IdentityId::kBeta;
      c.field = LocalFieldDesc::padic(p);
      c.a = a;
      c.b = b;
      add(c, "beta Q_" + std::to_string(p) + " (" + fmt(a) + "," + fmt(b) + ")");
    }
  for (int p : {3, 5})
    for (bool twisted : {false, true}) {
      IdentityCase c;
      c.identity = IdentityId::kGenBeta;
      c.field = LocalFieldDesc::padic(p);
      c.components = {{2, 0.2, twisted ? std::vector<long>{p, p} : std::vector<long>{}}};
      c.engine.shells = 20;
      add(c, std::string(twisted ? "twisted " : "") + "trace line Q_" + std::to_string(p * p) + " s=0.2");
    }
  {
    IdentityCase c;
    c.identity = IdentityId::kProp1;
    c.field = LocalFieldDesc::padic(3);
    c.G = {1, 0, 1};
    c.s = 0.3;
    add(c, "fixed G=x^2+1 Q_3 s=0.3");
  }
  {
    IdentityCase c;
    c.identity = IdentityId::kProp2;
    c.field = LocalFieldDesc::padic(5);
    c.G = {-2, 1};
    c.a = 0.25;
    c.b = 0.25;
    c.c = 0.1;
    c.engine.shells = 100;
    add(c, "fixed-G Selberg G=x-2 Q_5");
  }
  for (int p : {3, 5})
    for (auto [a, b, g] : {std::tuple{0.25, 0.25, 0.1}, {0.2, 0.3, 0.08}}) {
      IdentityCase c;
      c.identity = IdentityId::kTheorem;
      c.field = LocalFieldDesc::padic(p);
      c.n = 2;
      c.a = a;
      c.b = b;
      c.c = g;
      c.engine.shells = 100;
      add(c, "selberg n=2 Q_" + std::to_string(p) + " (" + fmt(a) + "," + fmt(b) + "," + fmt(g) + ")");
    }
  for (int p : {3, 5}) {
    IdentityCase c;
    c.identity = IdentityId::kRecursion;
    c.field = LocalFieldDesc::padic(p);
    c.n = 2;
    c.a = 0.25;
    c.b = 0.25;
    c.c = 0.1;
    c.engine.shells = 100;
    add(c, "recursion n=2 Q_" + std::to_string(p));
  }
  {
    IdentityCase c;
    c.identity = IdentityId::kTheorem;
    c.field = LocalFieldDesc::padic(5);
    c.n = 3;
    c.a = 0.15;
    c.b = 0.15;
    c.c = 0.05;
    c.engine.mc = true;
    c.engine.samples = 1'000'000;
    add(c, "selberg n=3 Q_5 (0.15,0.15,0.05) mc");
  }
  {
    IdentityCase c;
    c.identity = IdentityId::kBeta;
    c.field = LocalFieldDesc::complex();
    c.a = 0.4;
    c.b = 0.4;
    c.engine.samples = 1'000'000;
    add(c, "beta C (0.4,0.4)");
  }
  {
    IdentityCase c;
    c.identity = IdentityId::kComplexAomoto;
    c.field = LocalFieldDesc::complex();
    c.n = 2;
    c.a = 0.3;
    c.b = 0.3;
    c.c = 0.05;
    c.engine.samples = 4'000'000;
    add(c, "selberg n=2 C (0.3,0.3,0.05)");
  }
  const auto F5 = LocalFieldDesc::finite(5);
  for (int x = 1; x < 4; ++x)
    for (int y = 1; y < 4; ++y)
      for (int z = 1; z < 4; ++z) {
        IdentityCase c;
        c.identity = IdentityId::kFfSelberg;
        c.field = F5;
        c.n = 2;
        c.chi_a = x;
        c.chi_b = y;
        c.chi_c = z;
        try {
          check_region(c);
        } catch (const RegionViolation&) {
          continue;
        }
        add(c, "ff selberg F_5 n=2 (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")");
      }
  return out;
}

}  // namespace lsel
