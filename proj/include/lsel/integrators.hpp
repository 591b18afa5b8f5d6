#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lsel/characters.hpp"
#include "lsel/mpoly.hpp"

namespace lsel {

/// Value with its error budget. cert_err is a rigorous radius, tail is the
/// fitted (non-certified) remainder from truncated shells and depth-limited
/// strata, mc_sigma is a Monte Carlo standard error.
struct IntegralEstimate {
  cplx value = 0.0;
  double cert_err = 0.0;
  double tail = 0.0;
  double mc_sigma = 0.0;
  long strata = 0;
  long samples = 0;
  long aborted = 0;
  long depth_leaves = 0;
  double tail_ratio = 0.0;
  double kurtosis = 0.0;
  bool tail_converged = true;
  std::vector<cplx> shells;
  std::vector<std::string> warnings;

  double total_error() const { return cert_err + tail + 3.0 * mc_sigma; }
};

/// |det D|_p^{1/2} for a nondegenerate rational matrix D over Q_p.
double measure_scale(const std::vector<std::vector<mpq_class>>& D, int p);

/// |q|^s for an integer polynomial q in the chart coordinates.
struct PadicFactor {
  MPoly q;
  cplx s;
};

/// Multiplicative correction depending on the polynomial f whose coefficients
/// the chart coordinates parameterize.
struct Correction {
  enum class Kind { kNone, kQuadratic, kGeneral };
  Kind kind = Kind::kNone;
  /// Index of the discriminant among the factors (degree-2 chart polynomial
  /// for kQuadratic).
  int disc_factor = -1;
  /// kQuadratic: value when Delta is a unit times an even power of p with
  /// non-square unit part, and when val Delta is odd.
  cplx kappa_unramified = 1.0, kappa_ramified = 1.0;
  /// kGeneral: value at an unscaled point of the chart.
  std::function<cplx(const std::vector<mpq_class>&)> value;
  /// kGeneral: true when the value is constant on the ball around `centre`
  /// of radius p^{-radius} in every coordinate, given val Delta(centre).
  std::function<bool(const std::vector<mpq_class>& centre, int radius, int disc_val)> constant_on_ball;
};

/// Linear chart: the integrand written in coordinates related to the
/// coefficient coordinates by a unimodular integer matrix, so every box
/// (p^{-m} Z_p)^n is preserved.
struct Chart {
  std::vector<PadicFactor> factors;
  Correction corr;
};

/// prod_j |q_j(x)|^{s_j} * corr(x) on Q_p^n. Box 0 uses `inner`, shells m >= 1
/// use `outer` (which may equal `inner`).
struct PadicIntegrand {
  int p = 2;
  int n = 1;
  Chart inner;
  Chart outer;
  cplx constant = 1.0;
};

struct EngineOptions {
  int max_depth = 240;
  long max_balls = 20'000'000;
  double safety = 4.0;
  int window = 3;
  /// Monte Carlo mode: sample strata whose correction is not certified, and
  /// every stratum reaching mc_depth splits.
  bool mc = false;
  int mc_depth = 10;
  long samples = 0;
  std::uint64_t seed = 1;
  int sample_digits = 32;
  int workers = 0;
};

/// Integral over the box (p^{-m} Z_p)^n computed in the given chart.
IntegralEstimate padic_box_integrate(const PadicIntegrand& f, const Chart& chart, int m,
                                     const EngineOptions& opt = {});
/// Integral over (p^{-m} Z_p)^n \ (p^{-m+1} Z_p)^n, m >= 1.
IntegralEstimate padic_shell_integrate(const PadicIntegrand& f, const Chart& chart, int m,
                                       const EngineOptions& opt = {});
/// Box 0 plus shells 1..M with a geometric tail fit over the last shells.
IntegralEstimate padic_full_integrate(const PadicIntegrand& f, int M, const EngineOptions& opt = {});

/// Exact integral over Q_p of prod_j |t - r_j|^{s_j}: stratified box up to
/// the size of the points, then the closed-form geometric series of shells.
IntegralEstimate padic_exact_1d(int p, const std::vector<mpq_class>& points, const std::vector<cplx>& exponents);

/// One component of Lemma 2.2: an unramified extension of Q_p of degree m
/// (m = 1 is Q_p itself), quasi-character |.|_E^s and twist a (integer
/// coordinates in the power basis of the defining polynomial).
struct TraceComponent {
  int degree = 1;
  cplx s = 0.5;
  std::vector<long> twist;
};

struct TraceHyperplaneResult {
  IntegralEstimate lhs;
  cplx rhs_untwisted = 0.0;
  cplx twist_factor = 1.0;
};

/// Integral over {sum Tr(a_i x_i) = 1} of prod |x_i|_{E_i}^{s_i - 1} ds.
TraceHyperplaneResult trace_hyperplane_integrate(int p, const std::vector<TraceComponent>& comps, int shells,
                                                 const EngineOptions& opt = {});

/// Importance-sampled integral over C^n with dz twice Lebesgue measure.
struct ComplexSampler {
  /// power-law exponents at 0 and 1 and at infinity (density ~ |z|^{-2t})
  double tau0 = 0.5, tau1 = 0.5, t_out = 1.5;
  double w0 = 0.3, w1 = 0.3, w_out = 0.2, w_uniform = 0.2;
};

IntegralEstimate complex_mc_integrate(const std::function<double(const std::vector<cplx>&)>& integrand, int n,
                                      const ComplexSampler& sampler, long N, std::uint64_t seed, int workers = 0);

/// Exact sum over all monic degree-n polynomials over F_q, given by
/// their coefficient codes (b_{n-1}, ..., b_0).
cplx ff_enumerate_sum(const FiniteField& F, int n, const std::function<cplx(const std::vector<int>&)>& summand);

/// Worker count: LSEL_WORKERS if set, else hardware concurrency.
int default_workers();

}  // namespace lsel
