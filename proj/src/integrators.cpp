#include <cmath>
#include <numbers>
#include <random>

#include "lsel/errors.hpp"
#include "lsel/finite_field.hpp"
#include "lsel/integrators.hpp"
#include "lsel/padic.hpp"
#include "lsel/parallel.hpp"
#include "lsel/poly.hpp"

namespace lsel {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Power basis 1, t, ..., t^{m-1} of Z_p[t]/(g), g the lift of the defining
// polynomial of F_{p^m}. reduce[j] holds the coordinates of t^j.
struct PowerBasis {
  int m;
  std::vector<std::vector<mpz_class>> reduce;

  PowerBasis(int p, int m, int count) : m(m) {
    std::vector<mpz_class> g(m, 0);
    if (m > 1) {
      const auto& mod = FiniteField::get(p, m)->modulus();
      for (int i = 0; i < m; ++i) g[i] = mod[i];
    }
    for (int j = 0; j < count; ++j) {
      std::vector<mpz_class> v(m, 0);
      if (j < m) {
        v[j] = 1;
      } else {
        const auto& prev = reduce[j - 1];
        // t * (sum v_i t^i) with t^m = -sum g_i t^i
        for (int i = m - 1; i >= 1; --i) v[i] = prev[i - 1];
        v[0] = 0;
        for (int i = 0; i < m; ++i) v[i] -= prev[m - 1] * g[i];
      }
      reduce.push_back(v);
    }
  }

  mpz_class trace_of_power(int j) const {
    mpz_class tr = 0;
    for (int i = 0; i < m; ++i) tr += reduce[i + j][i];
    return tr;
  }
};

}  // namespace

double measure_scale(const std::vector<std::vector<mpq_class>>& D, int p) {
  const size_t n = D.size();
  for (const auto& row : D)
    if (row.size() != n) throw std::invalid_argument("measure_scale: matrix must be square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (D[i][j] != D[j][i]) throw std::invalid_argument("measure_scale: matrix must be symmetric");
  const mpq_class det = determinant(D, mpq_class(0));
  if (det == 0) throw SingularInput("measure_scale: singular matrix");
  return std::pow(static_cast<double>(p), -0.5 * padic_valuation(det, p));
}

TraceHyperplaneResult trace_hyperplane_integrate(int p, const std::vector<TraceComponent>& comps, int shells,
                                                 const EngineOptions& opt) {
  if (comps.empty()) throw std::invalid_argument("trace_hyperplane_integrate: no components");
  int d = 0;
  double re_sum = 0;
  for (const auto& c : comps) {
    if (c.degree < 1) throw std::invalid_argument("trace_hyperplane_integrate: degree must be >= 1");
    if (c.s.real() <= 0) throw RegionViolation("trace_hyperplane_integrate: need re c_i > 0");
    d += c.degree;
    re_sum += c.degree * c.s.real();
  }
  if (d < 2) throw std::invalid_argument("trace_hyperplane_integrate: total degree must be >= 2");
  if (d > MPoly::kMaxVars + 1) throw UnsupportedDegree("trace_hyperplane_integrate: total degree too large");
  if (re_sum >= 1) throw RegionViolation("trace_hyperplane_integrate: need sum d_i re c_i < 1");

  // Coordinates of all components, the linear form sum Tr(a_i x_i), norm
  // forms and self-dual measure scales.
  std::vector<PowerBasis> bases;
  std::vector<mpz_class> L;
  std::vector<int> comp_of;
  double scale = 1.0;
  for (size_t i = 0; i < comps.size(); ++i) {
    const int m = comps[i].degree;
    bases.emplace_back(p, m, 3 * m);
    const auto& B = bases.back();
    std::vector<mpz_class> a(m, 0);
    if (comps[i].twist.empty()) a[0] = 1;
    for (size_t j = 0; j < comps[i].twist.size() && j < static_cast<size_t>(m); ++j) a[j] = comps[i].twist[j];
    for (int l = 0; l < m; ++l) {
      mpz_class t = 0;
      for (int k = 0; k < m; ++k) t += a[k] * B.trace_of_power(k + l);
      L.push_back(t);
      comp_of.push_back(static_cast<int>(i));
    }
    std::vector<std::vector<mpq_class>> D(m, std::vector<mpq_class>(m));
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) D[r][c] = B.trace_of_power(r + c);
    scale *= measure_scale(D, p);
  }
  int jstar = -1, vbest = 0;
  for (int j = 0; j < d; ++j) {
    if (L[j] == 0) continue;
    const int v = padic_valuation(L[j], p);
    if (jstar < 0 || v < vbest) {
      jstar = j;
      vbest = v;
    }
  }
  if (jstar < 0) throw SingularInput("trace_hyperplane_integrate: zero twist");

  // Free variables: every coordinate but jstar. The eliminated coordinate
  // times L[jstar] equals 1 - sum_{j != jstar} L_j x_j.
  const int nv = d - 1;
  std::vector<MPoly> image(d, MPoly(nv));
  int next = 0;
  MPoly X = MPoly::constant(nv, 1);
  for (int j = 0; j < d; ++j) {
    if (j == jstar) continue;
    image[j] = MPoly::var(nv, next++);
    X -= image[j] * L[j];
  }
  const double lnp = std::log(static_cast<double>(p));
  PadicIntegrand f;
  f.p = p;
  f.n = nv;
  cplx log_const = std::log(scale) + lnp * vbest;  // ds = scale |L_jstar|^{-1} dx
  int offset = 0;
  for (size_t i = 0; i < comps.size(); ++i) {
    const int m = comps[i].degree;
    const auto& B = bases[i];
    const bool has_star = comp_of[jstar] == static_cast<int>(i);
    // Coordinates of x_i, each multiplied by L[jstar] when this component
    // holds the eliminated one: N is homogeneous of degree m.
    std::vector<MPoly> xs;
    for (int l = 0; l < m; ++l) {
      const int j = offset + l;
      if (j == jstar) xs.push_back(X);
      else xs.push_back(has_star ? image[j] * L[jstar] : image[j]);
    }
    MPolyMatrix M(m, std::vector<MPoly>(m, MPoly(nv)));
    for (int col = 0; col < m; ++col)
      for (int l = 0; l < m; ++l)
        for (int r = 0; r < m; ++r)
          if (B.reduce[l + col][r] != 0) M[r][col] += xs[l] * B.reduce[l + col][r];
    const MPoly N = mpoly_det(M);
    f.inner.factors.push_back({N, comps[i].s - 1.0});
    if (has_star) log_const += lnp * static_cast<double>(m * vbest) * (comps[i].s - 1.0);
    offset += m;
  }
  f.constant = std::exp(log_const);
  f.outer = f.inner;

  TraceHyperplaneResult out;
  out.lhs = padic_full_integrate(f, shells, opt);
  cplx num = 1.0, total_s = 0.0;
  for (size_t i = 0; i < comps.size(); ++i) {
    long q = 1;
    for (int k = 0; k < comps[i].degree; ++k) q *= p;
    num *= gamma_padic(q, 0, comps[i].s);
    total_s += static_cast<double>(comps[i].degree) * comps[i].s;
    // c_i(a_i^{-1}) = |N a_i|^{-s_i}
    const int m = comps[i].degree;
    const auto& B = bases[i];
    MPolyMatrix M(m, std::vector<MPoly>(m, MPoly(0)));
    std::vector<mpz_class> a(m, 0);
    if (comps[i].twist.empty()) a[0] = 1;
    for (size_t j = 0; j < comps[i].twist.size() && j < static_cast<size_t>(m); ++j) a[j] = comps[i].twist[j];
    for (int col = 0; col < m; ++col)
      for (int l = 0; l < m; ++l)
        for (int r = 0; r < m; ++r) M[r][col] += MPoly::constant(0, a[l] * B.reduce[l + col][r]);
    const mpz_class Na = mpoly_det(M).eval(std::vector<mpz_class>{});
    if (Na == 0) throw SingularInput("trace_hyperplane_integrate: zero twist");
    out.twist_factor *= std::exp(lnp * static_cast<double>(padic_valuation(Na, p)) * comps[i].s);
  }
  out.rhs_untwisted = num / gamma_padic(p, 0, total_s);
  return out;
}

IntegralEstimate complex_mc_integrate(const std::function<double(const std::vector<cplx>&)>& integrand, int n,
                                      const ComplexSampler& sp, long N, std::uint64_t seed, int workers) {
  if (n < 1 || N < 2) throw std::invalid_argument("complex_mc_integrate: need n >= 1 and N >= 2");
  if (sp.tau0 <= 0 || sp.tau1 <= 0 || sp.t_out <= 1) throw std::invalid_argument("complex_mc_integrate: bad sampler");
  if (workers <= 0) workers = default_workers();
  const double wsum = sp.w0 + sp.w1 + sp.w_out + sp.w_uniform;
  const double c0 = sp.w0 / wsum, c1 = sp.w1 / wsum, co = sp.w_out / wsum, cu = sp.w_uniform / wsum;
  const cplx centre_u(0.5, 0.0);
  const double ru = 2.0;
  auto density = [&](cplx z) {
    double q = 0;
    const double r0 = std::abs(z), r1 = std::abs(z - 1.0);
    if (r0 < 1 && r0 > 0) q += c0 * sp.tau0 / kPi * std::pow(r0, 2 * sp.tau0 - 2);
    if (r1 < 1 && r1 > 0) q += c1 * sp.tau1 / kPi * std::pow(r1, 2 * sp.tau1 - 2);
    if (r0 > 1) q += co * (sp.t_out - 1) / kPi * std::pow(r0, -2 * sp.t_out);
    if (std::abs(z - centre_u) < ru) q += cu / (kPi * ru * ru);
    return q;
  };

  constexpr long kChunk = 8192;
  const long chunks = (N + kChunk - 1) / kChunk;
  struct Acc {
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    long n = 0, aborted = 0;
  };
  std::vector<Acc> acc(chunks);
  const double measure = std::pow(2.0, n);
  parallel_for(chunks, workers, [&](long ch) {
    std::mt19937_64 rng(mix(seed ^ mix(static_cast<std::uint64_t>(ch) + 1)));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Acc& a = acc[ch];
    std::vector<cplx> z(n);
    const long count = std::min(kChunk, N - ch * kChunk);
    for (long s = 0; s < count; ++s) {
      double q = 1.0;
      for (int i = 0; i < n; ++i) {
        const double pick = U(rng);
        const double theta = 2 * kPi * U(rng);
        const double u = 1.0 - U(rng);  // (0, 1]
        double r;
        cplx centre = 0.0;
        if (pick < c0) {
          r = std::pow(u, 1.0 / (2 * sp.tau0));
        } else if (pick < c0 + c1) {
          r = std::pow(u, 1.0 / (2 * sp.tau1));
          centre = 1.0;
        } else if (pick < c0 + c1 + co) {
          r = std::pow(u, -1.0 / (2 * sp.t_out - 2));
        } else {
          r = ru * std::sqrt(u);
          centre = centre_u;
        }
        z[i] = centre + std::polar(r, theta);
        q *= density(z[i]);
      }
      ++a.n;
      const double fz = integrand(z);
      if (!(q > 0) || !std::isfinite(fz)) {
        ++a.aborted;
        continue;
      }
      const double x = measure * fz / q;
      a.s1 += x;
      a.s2 += x * x;
      a.s3 += x * x * x;
      a.s4 += x * x * x * x;
    }
  });
  Acc t;
  for (const auto& a : acc) {
    t.s1 += a.s1;
    t.s2 += a.s2;
    t.s3 += a.s3;
    t.s4 += a.s4;
    t.n += a.n;
    t.aborted += a.aborted;
  }
  IntegralEstimate est;
  const double nn = static_cast<double>(t.n);
  const double m1 = t.s1 / nn, m2 = t.s2 / nn, m3 = t.s3 / nn, m4 = t.s4 / nn;
  const double var = std::max(0.0, m2 - m1 * m1);
  est.value = m1;
  est.mc_sigma = std::sqrt(var / nn);
  est.samples = t.n;
  est.aborted = t.aborted;
  const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  est.kurtosis = var > 0 ? c4 / (var * var) : 0.0;
  if (est.kurtosis > 1e4) est.warnings.push_back("weight kurtosis suggests infinite variance");
  return est;
}

cplx ff_enumerate_sum(const FiniteField& F, int n, const std::function<cplx(const std::vector<int>&)>& summand) {
  if (n < 1) throw std::invalid_argument("ff_enumerate_sum: n must be >= 1");
  double count = std::pow(static_cast<double>(F.q()), n);
  if (count > 1e7) throw BudgetExceeded("ff_enumerate_sum: q^n exceeds 10^7");
  std::vector<int> b(n, 0);
  cplx total = 0.0;
  while (true) {
    total += summand(b);
    int i = n - 1;
    while (i >= 0 && b[i] == F.q() - 1) b[i--] = 0;
    if (i < 0) break;
    ++b[i];
  }
  return total;
}

}  // namespace lsel
