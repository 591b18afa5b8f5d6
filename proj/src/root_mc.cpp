#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lsel/errors.hpp"
#include "lsel/identities.hpp"
#include "lsel/padic.hpp"
#include "lsel/parallel.hpp"

namespace lsel {

namespace {

constexpr long kChunk = 4096;
constexpr int kDigits = 24;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Elem = std::vector<mpq_class>;

// A tame extension of Q_p of degree d = e f, given as Q_p[t]/(m) with
// O_E = Z_p[t]: m is an unramified lift (e = 1) or t^e - p u (f = 1).
struct Field {
  int d = 1, e = 1, f = 1;
  std::vector<mpq_class> m;  // monic, constant first
  mpq_class pu;              // t^e when ramified
  int aut = 1;
  ExtInvariants inv;
};

bool has_root_mod_p(const std::vector<long>& m, int p) {
  for (long x = 0; x < p; ++x) {
    long v = 0;
    for (auto it = m.rbegin(); it != m.rend(); ++it) v = (v * x + *it) % p;
    if (v == 0) return true;
  }
  return false;
}

long powmod(long b, long e, long p) {
  long r = 1;
  for (b %= p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// All isomorphism classes of extensions of degree d (d prime to p, d <= 3).
std::vector<Field> fields_of_degree(int p, int d) {
  std::vector<Field> out;
  Field q;
  q.d = d;
  q.inv = {1, 1, 0};
  if (d == 1) {
    q.m = {0, 1};
    return {q};
  }
  // unramified: a monic cubic or quadratic without roots mod p is irreducible
  std::vector<long> m(d + 1, 0);
  m[d] = 1;
  for (long code = 0;; ++code) {
    long c = code;
    for (int i = 0; i < d; ++i, c /= p) m[i] = c % p;
    if (!has_root_mod_p(m, p)) break;
  }
  Field u = q;
  u.f = d;
  u.aut = d;
  u.inv = {1, d, 0};
  u.m.assign(m.begin(), m.end());
  out.push_back(u);
  // totally ramified: t^d = p u, u over units modulo d-th powers
  const long g = std::gcd<long>(d, p - 1);
  std::vector<long> reps;
  for (long v = 1; v < p && static_cast<long>(reps.size()) < g; ++v) {
    bool fresh = true;
    for (long r : reps) {
      const long ratio = v * powmod(r, p - 2, p) % p;
      if (powmod(ratio, (p - 1) / g, p) == 1) fresh = false;
    }
    if (fresh) reps.push_back(v);
  }
  for (long r : reps) {
    Field t = q;
    t.e = d;
    t.aut = static_cast<int>(g);
    t.inv = {d, 1, d - 1};
    t.pu = mpq_class(p * r);
    t.m.assign(d + 1, 0);
    t.m[0] = -t.pu;
    t.m[d] = 1;
    out.push_back(t);
  }
  return out;
}

Elem mul(const Field& F, const Elem& x, const Elem& y) {
  const int d = F.d;
  std::vector<mpq_class> r(2 * d - 1, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r[i + j] += x[i] * y[j];
  for (int k = 2 * d - 2; k >= d; --k) {
    if (r[k] == 0) continue;
    for (int i = 0; i < d; ++i) r[k - d + i] -= r[k] * F.m[i];
    r[k] = 0;
  }
  r.resize(d);
  return r;
}

// pi^k: p^k when unramified, t^k = (p u)^j t^r with k = e j + r when ramified.
Elem pi_pow(const Field& F, int k, int p) {
  Elem r(F.d, 0);
  if (F.e == 1) {
    mpq_class s = 1;
    for (int i = 0; i < std::abs(k); ++i) s *= p;
    r[0] = k >= 0 ? s : mpq_class(1 / s);
    return r;
  }
  int j = k / F.e, rem = k % F.e;
  if (rem < 0) {
    rem += F.e;
    --j;
  }
  mpq_class s = 1;
  for (int i = 0; i < std::abs(j); ++i) s *= F.pu;
  r[rem] = j >= 0 ? s : mpq_class(1 / s);
  return r;
}

// Characteristic polynomial of multiplication by x, constant first.
std::vector<mpq_class> charpoly(const Field& F, const Elem& x) {
  const int d = F.d;
  if (d == 1) return {-x[0], 1};
  std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d, 0));
  Elem basis(d, 0);
  for (int i = 0; i < d; ++i) {
    std::fill(basis.begin(), basis.end(), 0);
    basis[i] = 1;
    const Elem col = mul(F, x, basis);
    for (int r = 0; r < d; ++r) M[r][i] = col[r];
  }
  mpq_class tr = 0, tr2 = 0;
  for (int i = 0; i < d; ++i) tr += M[i][i];
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) tr2 += M[i][k] * M[k][i];
  const mpq_class det = determinant(M, mpq_class(0));
  if (d == 2) return {det, -tr, 1};
  return {-det, (tr * tr - tr2) / 2, -tr, 1};
}

// Point of E with density |x|_E^{A-1} |1 - x|_E^{B-1} / Z, except that for
// |x|_E > 1 the shells decay like |x|_E^{A+B-1+delta}.
struct BetaSampler {
  const Field* F;
  int p;
  double Q;
  double A, B, delta;
  double w[4];
  double Z;

  BetaSampler(const Field& field, int prime, double a, double b, double dl)
      : F(&field), p(prime), A(a), B(b), delta(dl) {
    Q = std::pow(prime, field.f);
    const double u = 1 - 1 / Q, ra = std::pow(Q, -A), rb = std::pow(Q, -B), ro = std::pow(Q, A + B - 1 + delta);
    w[0] = u * ra / (1 - ra);
    w[1] = u * rb / (1 - rb);
    w[2] = u * ro / (1 - ro);
    w[3] = (Q - 2) / Q;
    Z = w[0] + w[1] + w[2] + w[3];
  }

  // Uniform unit of O_E, optionally with residue different from 1.
  Elem unit(std::mt19937_64& rng, bool exclude_one) const {
    while (true) {
      Elem x(F->d, 0);
      std::vector<long> res(F->d);
      for (int i = 0; i < F->d; ++i) {
        mpz_class v = 0;
        for (int k = 0; k < kDigits; ++k) v = v * p + static_cast<long>(rng() % static_cast<std::uint64_t>(p));
        x[i] = v;
        res[i] = mpz_class(v % p).get_si();
      }
      bool zero, one;
      if (F->e == 1) {
        zero = std::all_of(res.begin(), res.end(), [](long r) { return r == 0; });
        one = res[0] == 1 && std::all_of(res.begin() + 1, res.end(), [](long r) { return r == 0; });
      } else {
        zero = res[0] == 0;
        one = res[0] == 1;
      }
      if (!zero && !(exclude_one && one)) return x;
    }
  }

  int shell(std::mt19937_64& rng, double ratio) const {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    return 1 + static_cast<int>(std::floor(std::log(1 - U(rng)) / std::log(ratio)));
  }

  // Returns the point, log_Q of |x|_E and |1 - x|_E, and the log of the
  // density ratio against the plain beta density.
  Elem draw(std::mt19937_64& rng, int& lx, int& l1x, double& lratio) const {
    lratio = 0;
    std::uniform_real_distribution<double> U(0.0, Z);
    const double pick = U(rng);
    if (pick < w[0]) {
      const int k = shell(rng, std::pow(Q, -A));
      lx = -k;
      l1x = 0;
      return mul(*F, pi_pow(*F, k, p), unit(rng, false));
    }
    if (pick < w[0] + w[1]) {
      const int k = shell(rng, std::pow(Q, -B));
      Elem x = mul(*F, pi_pow(*F, k, p), unit(rng, false));
      x[0] += 1;
      lx = 0;
      l1x = -k;
      return x;
    }
    if (pick < w[0] + w[1] + w[2]) {
      const int k = shell(rng, std::pow(Q, A + B - 1 + delta));
      lx = l1x = k;
      lratio = -k * delta * std::log(Q);
      return mul(*F, pi_pow(*F, -k, p), unit(rng, false));
    }
    lx = l1x = 0;
    return unit(rng, true);
  }
};

// One splitting type: a multiset of fields of total degree n.
struct Component {
  std::vector<const Field*> parts;
  cplx constant = 1.0;
};

struct Moments {
  cplx s1 = 0.0;
  double s2 = 0, r2 = 0, r4 = 0;
  long n = 0, aborted = 0;
  void add(const Moments& o) {
    s1 += o.s1;
    s2 += o.s2;
    r2 += o.r2;
    r4 += o.r4;
    n += o.n;
    aborted += o.aborted;
  }
};

}  // namespace

IntegralEstimate selberg_padic_root_mc(int p, int n, cplx a, cplx b, cplx c, long samples, std::uint64_t seed,
                                       int workers) {
  if (n < 1 || n > 3) throw UnsupportedDegree("root Monte Carlo: degree must be 1, 2 or 3");
  if (p <= n || p == 2) throw UnsupportedDegree("root Monte Carlo: needs an odd prime p > n");
  const double A = a.real(), B = b.real();
  if (!(A > 0 && B > 0 && A + B < 1 && c.real() > 0))
    throw RegionViolation("root Monte Carlo: needs re a, re b, re c > 0 and re a + re b < 1");
  if (samples < 100) throw std::invalid_argument("root Monte Carlo: too few samples");
  if (workers <= 0) workers = default_workers();

  std::vector<std::vector<Field>> fields(n + 1);
  for (int d = 1; d <= n; ++d) fields[d] = fields_of_degree(p, d);
  std::vector<std::vector<BetaSampler>> samplers(n + 1);
  // A root of degree d far out makes the weight grow like |x|_E^delta.
  for (int d = 1; d <= n; ++d)
    for (const auto& F : fields[d]) samplers[d].emplace_back(F, p, A, B, c.real() * (2 * n - d - 1));

  // Enumerate multisets of fields with degrees summing to n.
  struct Pick {
    int d, idx;
  };
  std::vector<Component> comps;
  std::vector<std::vector<Pick>> picks;
  std::vector<Pick> cur;
  auto rec = [&](auto&& self, int left, Pick last) -> void {
    if (left == 0) {
      picks.push_back(cur);
      return;
    }
    for (int d = std::min(left, last.d); d >= 1; --d)
      for (int i = 0; i < static_cast<int>(fields[d].size()); ++i) {
        if (d == last.d && i > last.idx) continue;
        cur.push_back({d, i});
        self(self, left - d, {d, i});
        cur.pop_back();
      }
  };
  rec(rec, n, {n, 1 << 20});

  const cplx g = gamma_padic(p, 0, c);
  for (const auto& pk : picks) {
    Component comp;
    double sym = 1;
    for (size_t i = 0; i < pk.size(); ++i) {
      const Field& F = fields[pk[i].d][pk[i].idx];
      const BetaSampler& S = samplers[pk[i].d][pk[i].idx];
      comp.parts.push_back(&F);
      sym *= F.aut;
      // |d_E|^{1/2} Gamma_E(c) / Gamma(c)^d, and the beta normalizer
      comp.constant *= S.Z * std::pow(p, -0.5 * (F.e - 1) * F.f);
      if (F.d > 1) comp.constant *= gamma_padic(ppow(p, F.f).get_si(), F.inv.d, c) / std::pow(g, F.d);
    }
    for (size_t i = 0; i < pk.size();) {
      size_t j = i;
      while (j < pk.size() && pk[j].d == pk[i].d && pk[j].idx == pk[i].idx) ++j;
      sym *= std::tgamma(static_cast<double>(j - i + 1));
      i = j;
    }
    comp.constant /= sym;
    comps.push_back(std::move(comp));
  }

  const double lnp = std::log(static_cast<double>(p));
  auto weight = [&](const std::vector<const BetaSampler*>& S, std::mt19937_64& rng) -> cplx {
    std::vector<MonicPoly<mpq_class>> h;
    cplx logw = 0.0;
    for (const auto* s : S) {
      int lx, l1x;
      double lratio;
      const Elem x = s->draw(rng, lx, l1x, lratio);
      const double lq = std::log(s->Q);
      logw += lratio;
      // ratio of the complex exponents to the sampling density
      logw += cplx(0, 1) * lq * (static_cast<double>(lx) * a.imag() + static_cast<double>(l1x) * b.imag());
      h.push_back(MonicPoly<mpq_class>::from_poly(Poly<mpq_class>(charpoly(*s->F, x), mpq_class(0))));
    }
    for (size_t i = 0; i < h.size(); ++i) {
      if (h[i].degree() > 1) {
        const mpq_class D = discriminant(h[i]);
        if (D == 0) return {NAN, NAN};
        logw -= lnp * static_cast<double>(padic_valuation(D, p)) * c;
      }
      for (size_t j = i + 1; j < h.size(); ++j) {
        const mpq_class R = resultant(h[i].poly(), h[j].poly());
        if (R == 0) return {NAN, NAN};
        logw -= lnp * static_cast<double>(padic_valuation(R, p)) * 2.0 * c;
      }
    }
    return std::exp(logw);
  };

  auto run = [&](size_t k, long count, std::uint64_t stream) {
    std::vector<const BetaSampler*> S;
    for (const Field* F : comps[k].parts) {
      const auto& list = fields[F->d];
      S.push_back(&samplers[F->d][F - list.data()]);
    }
    const long chunks = (count + kChunk - 1) / kChunk;
    std::vector<Moments> acc(chunks);
    parallel_for(chunks, workers, [&](long ch) {
      std::mt19937_64 rng(mix(seed ^ mix(stream * 0x100000001b3ULL + static_cast<std::uint64_t>(ch) + 1)));
      Moments& m = acc[ch];
      const long todo = std::min(kChunk, count - ch * kChunk);
      for (long i = 0; i < todo; ++i) {
        ++m.n;
        const cplx x = weight(S, rng);
        if (std::isnan(x.real())) {
          ++m.aborted;
          continue;
        }
        m.s1 += x;
        m.s2 += std::norm(x);
        const double r = x.real();
        m.r2 += r * r;
        m.r4 += r * r * r * r;
      }
    });
    Moments total;
    for (const auto& m : acc) total.add(m);
    return total;
  };

  // Pilot run, then the rest allocated in proportion to |constant| * sd.
  const size_t K = comps.size();
  const long pilot = std::max<long>(100, samples / (20 * static_cast<long>(K)));
  std::vector<Moments> mom(K);
  std::vector<double> score(K);
  for (size_t k = 0; k < K; ++k) {
    mom[k] = run(k, pilot, 2 * k);
    const double mean2 = std::norm(mom[k].s1 / static_cast<double>(mom[k].n));
    const double var = std::max(0.0, mom[k].s2 / static_cast<double>(mom[k].n) - mean2);
    score[k] = std::abs(comps[k].constant) * std::sqrt(var + 1e-3 * mean2);
  }
  const long rest = std::max<long>(0, samples - pilot * static_cast<long>(K));
  const double ssum = std::accumulate(score.begin(), score.end(), 0.0);
  std::vector<long> extra(K);
  for (size_t k = 0; k < K; ++k)
    extra[k] = ssum > 0 ? static_cast<long>(rest * score[k] / ssum) : rest / static_cast<long>(K);
  const size_t top = std::max_element(score.begin(), score.end()) - score.begin();
  extra[top] += rest - std::accumulate(extra.begin(), extra.end(), 0L);
  for (size_t k = 0; k < K; ++k)
    if (extra[k] > 0) mom[k].add(run(k, extra[k], 2 * k + 1));

  IntegralEstimate est;
  double var = 0, kurt = 0;
  for (size_t k = 0; k < K; ++k) {
    const double N = static_cast<double>(mom[k].n);
    const cplx mean = mom[k].s1 / N;
    const double v = std::max(0.0, mom[k].s2 / N - std::norm(mean));
    est.value += comps[k].constant * mean;
    var += std::norm(comps[k].constant) * v / N;
    est.samples += mom[k].n;
    est.aborted += mom[k].aborted;
    const double m2 = mom[k].r2 / N;
    if (m2 > 0) kurt = std::max(kurt, mom[k].r4 / N / (m2 * m2));
  }
  est.mc_sigma = std::sqrt(var);
  est.kurtosis = kurt;
  est.strata = static_cast<long>(K);
  if (kurt > 1e4) est.warnings.push_back("sample kurtosis suggests infinite variance");
  return est;
}

}  // namespace lsel
