#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "lsel/characters.hpp"
#include "lsel/integrators.hpp"
#include "lsel/poly.hpp"
#include "lsel/splitting.hpp"

namespace lsel {

enum class IdentityId {
  kGammaIntegral,
  kBeta,
  kGenBeta,
  kProp1,
  kProp2,
  kTheorem,
  kRecursion,
  kComplexAomoto,
  kFfSelberg,
};

std::string identity_name(IdentityId id);
/// Throws std::invalid_argument for an unknown name.
IdentityId identity_from_name(const std::string& name);

struct EngineSettings {
  int shells = 60;
  bool mc = false;
  long samples = 0;
  std::uint64_t seed = 1;
  int workers = 0;
  int max_depth = 240;
  int mc_depth = 10;
  double gate = 3.0;
};

/// One identity instance. Unramified characters are given by exponents
/// (alpha = |.|^a etc.); over F_q by character indices.
struct IdentityCase {
  std::string case_id;
  IdentityId identity = IdentityId::kBeta;
  LocalFieldDesc field = LocalFieldDesc::padic(2);
  int n = 1;
  cplx a = 0.3, b = 0.4, c = 0.1;
  /// gamma_integral: the exponent s; prop1: chi = |.|^s.
  cplx s = 0.5;
  /// prop1 / prop2: monic integer polynomial G, constant term first.
  std::vector<long> G;
  /// gen_beta components.
  std::vector<TraceComponent> components;
  /// ff_selberg character indices.
  int chi_a = 1, chi_b = 1, chi_c = 1;
  EngineSettings engine;
};

struct VerificationReport {
  IdentityCase input;
  std::string engine;
  IntegralEstimate lhs;
  cplx rhs = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  double sigma_dist = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::vector<std::string> notes;
};

/// Throws RegionViolation when the case lies outside its convergence region.
void check_region(const IdentityCase& c);

/// Product of Gamma_{h_i}(gamma) / Gamma(gamma)^{deg h_i} over the factors.
cplx selberg_correction(const SplittingType& type, int p, cplx c);
/// Integrand of S_n at a monic f over Q_p (unramified characters).
cplx selberg_integrand(const MonicPoly<mpq_class>& f, int p, cplx a, cplx b, cplx c);
/// Integrand of S_n at a monic f over C; the correction factor is 1.
cplx selberg_integrand_complex(const CMonic& f, cplx a, cplx b, cplx c);

/// prod_j Gamma(a + jc) Gamma(b + jc) Gamma((j+1)c) / (Gamma(a + b + (n+j-1)c) Gamma(c))
/// on a p-adic or complex backend. Poles are reported with the factor named.
cplx rhs_theorem(const LocalFieldDesc& field, cplx a, cplx b, cplx c, int n);
cplx rhs_beta(const LocalFieldDesc& field, cplx a, cplx b);
/// Right side of the fixed-G propositions over Q_p; G monic squarefree.
cplx rhs_prop1(const std::vector<long>& G, int p, cplx s);
cplx rhs_prop2(const std::vector<long>& G, int p, cplx a, cplx b, cplx c);
/// Factor relating S_n(a, b, c) to S_{n-1}(a + c, b + c, c).
cplx recursion_factor(const LocalFieldDesc& field, cplx a, cplx b, cplx c, int n);

/// Integrands in coefficient coordinates, ready for padic_full_integrate.
PadicIntegrand selberg_padic_integrand(int p, int n, cplx a, cplx b, cplx c);
PadicIntegrand prop1_padic_integrand(const std::vector<long>& G, int p, cplx s);
PadicIntegrand prop2_padic_integrand(const std::vector<long>& G, int p, cplx a, cplx b, cplx c);

/// Monte Carlo value of S_n over Q_p in root coordinates: the integral is
/// split by splitting type, each irreducible factor is parametrized by a
/// generator of its field, and generators are drawn from that field's beta
/// density. Odd p > n, n <= 3.
IntegralEstimate selberg_padic_root_mc(int p, int n, cplx a, cplx b, cplx c, long samples, std::uint64_t seed,
                                       int workers = 0);

/// Classical Selberg integral by its product formula, and by tensor
/// Gauss-Legendre quadrature on [0, 1]^2 (smooth integrands only).
double classical_selberg(int n, double a, double b, double c);
double classical_selberg_quadrature2(double a, double b, double c, int nodes = 64);
/// n! prod Gamma_C ratio, and the same value through the classical integral.
cplx rhs_complex(cplx a, cplx b, cplx c, int n);
double rhs_complex_via_classical(double a, double b, double c, int n);

/// Finite-field Selberg sum (pinned normalization) and its Gauss-sum product.
cplx ff_selberg_sum(const FiniteField& F, int n, int chi_a, int chi_b, int chi_c);
cplx ff_selberg_rhs(const FiniteField& F, int n, int chi_a, int chi_b, int chi_c);

VerificationReport verify(const IdentityCase& c);

/// The built-in desk-scale suite: every identity at the parameters of the
/// acceptance checks, in a fixed order with stable case ids.
std::vector<IdentityCase> desk_suite();

}  // namespace lsel
