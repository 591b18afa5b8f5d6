#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <thread>

#include "lsel/errors.hpp"
#include "lsel/integrators.hpp"
#include "lsel/padic.hpp"
#include "lsel/parallel.hpp"

namespace lsel {

namespace {

constexpr int kInf = INT_MAX / 4;
constexpr long kChunk = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Taylor expansion data of one factor: T_nu(C) = sum over pieces of
// coef * C^rest, grouped by the multi-index nu.
struct CompiledFactor {
  cplx s;
  int degree = 0;
  std::vector<std::array<int, 4>> nus;  // nus[0] = 0
  std::vector<int> order;               // |nu|
  struct Piece {
    int nu;
    mpz_class coef;
    std::array<int, 4> rest;
  };
  std::vector<Piece> pieces;
  MPoly poly;

  CompiledFactor(const MPoly& q, cplx exponent) : s(exponent), degree(std::max(0, q.total_degree())), poly(q) {
    std::map<std::array<int, 4>, int> id;
    id[{0, 0, 0, 0}] = 0;
    nus.push_back({0, 0, 0, 0});
    order.push_back(0);
    for (const auto& [e, c] : q.terms()) {
      std::array<int, 4> nu{0, 0, 0, 0};
      while (true) {
        mpz_class coef = c;
        std::array<int, 4> rest;
        for (int i = 0; i < 4; ++i) {
          coef *= binom(e[i], nu[i]);
          rest[i] = e[i] - nu[i];
        }
        auto [it, fresh] = id.try_emplace(nu, static_cast<int>(nus.size()));
        if (fresh) {
          nus.push_back(nu);
          order.push_back(nu[0] + nu[1] + nu[2] + nu[3]);
        }
        pieces.push_back({it->second, coef, rest});
        int i = 0;
        while (i < 4 && nu[i] == e[i]) nu[i++] = 0;
        if (i == 4) break;
        ++nu[i];
      }
    }
  }
};

struct FactorState {
  std::vector<mpz_class> T;
  std::vector<int> v;
  int v0 = kInf, lin = kInf, nonlin = kInf;
  mpz_class unit0;
  bool resolved() const { return v0 < std::min(lin, nonlin); }
  bool fiber() const { return lin < kInf && nonlin >= lin + 1; }
};

struct Stratum {
  std::vector<mpz_class> c;
  std::vector<int> k;
  cplx logw;
  double weight;
};

class Engine {
 public:
  Engine(const PadicIntegrand& f, const Chart& chart, int m, const EngineOptions& opt)
      : f_(f), chart_(chart), m_(m), opt_(opt), p_(f.p), P_(f.p), lnp_(std::log(static_cast<double>(f.p))) {
    cplx logbox = static_cast<double>(m * f.n);
    for (const auto& fac : chart.factors) {
      const MPoly scaled = fac.q.box_scaled(p_, m);
      factors_.emplace_back(scaled, fac.s);
      logbox += static_cast<double>(m * factors_.back().degree) * fac.s;
    }
    logbox_ = logbox * lnp_ + std::log(f.constant);
    level_.assign(opt.max_depth + 2, 0.0);
    if (chart.corr.kind != Correction::Kind::kNone &&
        (chart.corr.disc_factor < 0 || chart.corr.disc_factor >= static_cast<int>(factors_.size())))
      throw std::invalid_argument("integrand: correction needs a discriminant factor");
  }

  void run_box() {
    std::vector<mpz_class> c(f_.n, 0);
    std::vector<int> k(f_.n, 0);
    process(c, k, 0);
  }

  void run_shell() {
    if (m_ < 1) throw std::invalid_argument("padic shell needs m >= 1");
    std::vector<int> digits(f_.n, 0);
    while (true) {
      int i = 0;
      while (i < f_.n && digits[i] == p_ - 1) digits[i++] = 0;
      if (i == f_.n) break;
      ++digits[i];
      std::vector<mpz_class> c(digits.begin(), digits.end());
      std::vector<int> k(f_.n, 1);
      process(c, k, 1);
    }
  }

  double residual(bool& ok) const {
    if (leaves_ == 0) return 0.0;
    const int w = 6, D = opt_.max_depth;
    if (D < 2 * w) {
      ok = false;
      return HUGE_VAL;
    }
    double A = 0, B = 0;
    for (int d = D - w + 1; d <= D; ++d) A += level_[d];
    for (int d = D - 2 * w + 1; d <= D - w; ++d) B += level_[d];
    if (B <= 0 || A >= B) {
      ok = false;
      return HUGE_VAL;
    }
    const double R = A / B;
    return opt_.safety * A * R / (1 - R);
  }

  // One uniform point of the stratum; returns the integrand times mass and
  // box constant, or NaN when the point hits a zero of a factor.
  cplx sample(const Stratum& st, std::mt19937_64& rng) const {
    std::vector<mpz_class> y(f_.n);
    for (int i = 0; i < f_.n; ++i) {
      mpz_class u = 0;
      int left = opt_.sample_digits;
      while (left > 0) {
        const int g = std::min(left, digits_per_word());
        unsigned long base = 1;
        for (int j = 0; j < g; ++j) base *= static_cast<unsigned long>(p_);
        u = u * base + static_cast<unsigned long>(rng() % base);
        left -= g;
      }
      y[i] = st.c[i] + ppow(p_, st.k[i]) * u;
    }
    cplx logv = st.logw;
    mpz_class unit, tmp;
    int disc_v = kInf;
    mpz_class disc_unit;
    for (size_t j = 0; j < factors_.size(); ++j) {
      const mpz_class q = factors_[j].poly.eval(y);
      if (q == 0) return {NAN, NAN};
      const int v = static_cast<int>(mpz_remove(unit.get_mpz_t(), q.get_mpz_t(), P_.get_mpz_t()));
      logv -= lnp_ * static_cast<double>(v) * factors_[j].s;
      if (static_cast<int>(j) == chart_.corr.disc_factor) {
        disc_v = v;
        disc_unit = unit;
      }
    }
    return std::exp(logv) * corr_at(y, disc_v, disc_unit);
  }

  cplx exact() const { return exact_; }
  long balls() const { return balls_; }
  long leaves() const { return leaves_; }
  std::vector<Stratum>& strata() { return strata_; }

 private:
  int digits_per_word() const {
    int g = 0;
    unsigned long b = 1;
    while (b <= (1UL << 62) / static_cast<unsigned long>(p_)) {
      b *= static_cast<unsigned long>(p_);
      ++g;
    }
    return std::max(1, g);
  }

  std::vector<mpq_class> unscaled(const std::vector<mpz_class>& y) const {
    std::vector<mpq_class> x;
    const mpz_class pm = ppow(p_, m_);
    for (const auto& v : y) {
      mpq_class q(v, pm);
      q.canonicalize();
      x.push_back(q);
    }
    return x;
  }

  cplx quadratic_value(int v, const mpz_class& unit) const {
    if (v % 2) return chart_.corr.kappa_ramified;
    mpz_class u = unit % P_;
    if (u < 0) u += P_;
    return mpz_legendre(u.get_mpz_t(), P_.get_mpz_t()) == 1 ? cplx(1.0) : chart_.corr.kappa_unramified;
  }

  cplx corr_at(const std::vector<mpz_class>& y, int disc_v, const mpz_class& disc_unit) const {
    switch (chart_.corr.kind) {
      case Correction::Kind::kNone: return 1.0;
      case Correction::Kind::kQuadratic: return quadratic_value(disc_v, disc_unit);
      case Correction::Kind::kGeneral: return chart_.corr.value(unscaled(y));
    }
    return 1.0;
  }

  void analyse(const CompiledFactor& F, const std::vector<mpz_class>& c, const std::vector<int>& k,
               FactorState& st) const {
    const size_t nn = F.nus.size();
    st.T.assign(nn, 0);
    st.v.assign(nn, kInf);
    mpz_class term, pw;
    for (const auto& pc : F.pieces) {
      term = pc.coef;
      for (int i = 0; i < f_.n; ++i)
        if (pc.rest[i]) {
          mpz_pow_ui(pw.get_mpz_t(), c[i].get_mpz_t(), pc.rest[i]);
          term *= pw;
        }
      st.T[pc.nu] += term;
    }
    st.lin = st.nonlin = st.v0 = kInf;
    mpz_class unit;
    for (size_t id = 0; id < nn; ++id) {
      if (st.T[id] == 0) continue;
      const int v = static_cast<int>(mpz_remove(unit.get_mpz_t(), st.T[id].get_mpz_t(), P_.get_mpz_t()));
      if (id == 0) {
        st.v0 = v;
        st.unit0 = unit;
        st.v[0] = v;
        continue;
      }
      int w = v;
      for (int i = 0; i < f_.n; ++i) w += F.nus[id][i] * k[i];
      st.v[id] = w;
      if (F.order[id] == 1) st.lin = std::min(st.lin, w);
      else st.nonlin = std::min(st.nonlin, w);
    }
  }

  void add(cplx contrib, int depth) {
    exact_ += contrib;
    level_[std::min<int>(depth, static_cast<int>(level_.size()) - 1)] += std::abs(contrib);
  }

  void push_stratum(const std::vector<mpz_class>& c, const std::vector<int>& k, cplx logmass,
                    const std::vector<FactorState>& st) {
    cplx proxy = logmass;
    for (size_t j = 0; j < st.size(); ++j)
      if (st[j].resolved()) proxy -= lnp_ * static_cast<double>(st[j].v0) * factors_[j].s;
    strata_.push_back({c, k, logmass, std::exp(proxy.real())});
  }

  void process(std::vector<mpz_class>& c, std::vector<int>& k, int depth) {
    if (++balls_ > opt_.max_balls) throw BudgetExceeded("padic engine: stratum budget exhausted");
    const int nf = static_cast<int>(factors_.size());
    std::vector<FactorState> st(nf);
    long sumk = 0;
    for (int i = 0; i < f_.n; ++i) sumk += k[i];
    cplx logc = logbox_ - lnp_ * static_cast<double>(sumk);
    const cplx logmass = logc;
    std::vector<int> unresolved;
    for (int j = 0; j < nf; ++j) {
      analyse(factors_[j], c, k, st[j]);
      if (st[j].resolved()) logc -= lnp_ * static_cast<double>(st[j].v0) * factors_[j].s;
      else unresolved.push_back(j);
    }

    const auto& corr = chart_.corr;
    const int dj = corr.disc_factor;
    bool known = true;
    cplx corr_val = 1.0;
    if (corr.kind == Correction::Kind::kQuadratic) {
      known = st[dj].resolved();
      if (known) corr_val = quadratic_value(st[dj].v0, st[dj].unit0);
    } else if (corr.kind == Correction::Kind::kGeneral) {
      known = false;
      if (st[dj].resolved()) {
        int kmin = *std::min_element(k.begin(), k.end());
        const int disc_val = st[dj].v0 - m_ * factors_[dj].degree;
        const auto centre = unscaled(c);
        if (corr.constant_on_ball(centre, kmin - m_, disc_val)) {
          known = true;
          corr_val = corr.value(centre);
        }
      }
    }

    if (unresolved.empty()) {
      if (known) {
        add(std::exp(logc) * corr_val, depth);
        return;
      }
      if (opt_.mc) {
        push_stratum(c, k, logmass, st);
        return;
      }
    } else if (unresolved.size() == 1 && st[unresolved[0]].fiber()) {
      const int j = unresolved[0];
      const bool quad_fiber = corr.kind == Correction::Kind::kQuadratic && j == dj;
      if (known || quad_fiber) {
        const int K = st[j].lin;
        const cplx s = factors_[j].s;
        const cplx rho = std::exp(-lnp_ * (1.0 + s));
        cplx sum;
        if (quad_fiber) {
          auto avg = [&](int v) {
            return v % 2 ? corr.kappa_ramified : 0.5 * (1.0 + corr.kappa_unramified);
          };
          sum = (avg(K) + rho * avg(K + 1)) / (1.0 - rho * rho);
        } else {
          sum = corr_val / (1.0 - rho);
        }
        add(std::exp(logc - lnp_ * static_cast<double>(K) * s) * (1.0 - 1.0 / p_) * sum, depth);
        return;
      }
      if (opt_.mc && corr.kind == Correction::Kind::kGeneral && j == dj) {
        push_stratum(c, k, logmass, st);
        return;
      }
    }

    if (depth >= opt_.max_depth || (opt_.mc && depth >= opt_.mc_depth)) {
      if (opt_.mc) push_stratum(c, k, logmass, st);
      else ++leaves_;
      return;
    }

    const int axis = split_axis(st, unresolved, k);
    const mpz_class step = ppow(p_, k[axis]);
    const mpz_class base = c[axis];
    ++k[axis];
    for (int r = 0; r < p_; ++r) {
      c[axis] = base + step * r;
      process(c, k, depth + 1);
    }
    c[axis] = base;
    --k[axis];
  }

  int split_axis(const std::vector<FactorState>& st, const std::vector<int>& unresolved,
                 const std::vector<int>& k) const {
    int best = kInf;
    for (int j : unresolved) best = std::min({best, st[j].lin, st[j].nonlin});
    std::vector<bool> nonlin_cand(f_.n, false), lin_cand(f_.n, false);
    bool any_nonlin = false;
    for (int j : unresolved) {
      const auto& F = factors_[j];
      for (size_t id = 1; id < F.nus.size(); ++id) {
        if (st[j].v[id] != best) continue;
        for (int i = 0; i < f_.n; ++i) {
          if (F.nus[id][i] == 0) continue;
          if (F.order[id] >= 2) {
            nonlin_cand[i] = true;
            any_nonlin = true;
          } else {
            lin_cand[i] = true;
          }
        }
      }
    }
    const auto& cand = any_nonlin ? nonlin_cand : lin_cand;
    int axis = -1;
    for (int i = 0; i < f_.n; ++i)
      if ((cand[i] || best == kInf) && (axis < 0 || k[i] < k[axis])) axis = i;
    if (axis < 0) axis = static_cast<int>(std::min_element(k.begin(), k.end()) - k.begin());
    return axis;
  }

  const PadicIntegrand& f_;
  const Chart& chart_;
  int m_;
  EngineOptions opt_;
  int p_;
  mpz_class P_;
  double lnp_;
  cplx logbox_;
  std::vector<CompiledFactor> factors_;
  cplx exact_ = 0.0;
  std::vector<double> level_;
  long balls_ = 0, leaves_ = 0;
  std::vector<Stratum> strata_;
};

struct SampleSummary {
  cplx mean = 0.0;
  double sigma = 0.0;
  double kurtosis = 0.0;
  long aborted = 0;
  std::vector<cplx> per_engine;
};

SampleSummary draw_samples(std::vector<std::unique_ptr<Engine>>& engines, long N, std::uint64_t seed, int workers) {
  SampleSummary out;
  out.per_engine.assign(engines.size(), 0.0);
  struct Ref {
    size_t engine;
    const Stratum* st;
  };
  std::vector<Ref> refs;
  std::vector<double> cum;
  double total = 0;
  for (size_t e = 0; e < engines.size(); ++e)
    for (const auto& st : engines[e]->strata()) {
      refs.push_back({e, &st});
      total += st.weight;
      cum.push_back(total);
    }
  if (refs.empty()) return out;
  if (N <= 0) throw std::invalid_argument("padic engine: Monte Carlo strata present but no samples requested");
  if (!(total > 0)) throw NonConvergent("padic engine: degenerate sampling weights");

  const long chunks = (N + kChunk - 1) / kChunk;
  struct Acc {
    cplx s1 = 0.0;
    double s2 = 0, r1 = 0, r2 = 0, r3 = 0, r4 = 0;
    long n = 0, aborted = 0;
    std::vector<cplx> per_engine;
  };
  std::vector<Acc> acc(chunks);
  parallel_for(chunks, workers, [&](long ch) {
    Acc& a = acc[ch];
    a.per_engine.assign(engines.size(), 0.0);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(ch) + 1)));
    std::uniform_real_distribution<double> uni(0.0, total);
    const long count = std::min(kChunk, N - ch * kChunk);
    for (long i = 0; i < count; ++i) {
      const double u = uni(rng);
      size_t idx = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
      if (idx >= refs.size()) idx = refs.size() - 1;
      const double prob = refs[idx].st->weight / total;
      cplx x = engines[refs[idx].engine]->sample(*refs[idx].st, rng);
      ++a.n;
      if (std::isnan(x.real())) {
        ++a.aborted;
        continue;
      }
      x /= prob;
      a.s1 += x;
      a.s2 += std::norm(x);
      const double r = x.real();
      a.r1 += r;
      a.r2 += r * r;
      a.r3 += r * r * r;
      a.r4 += r * r * r * r;
      a.per_engine[refs[idx].engine] += x;
    }
  });
  Acc t;
  t.per_engine.assign(engines.size(), 0.0);
  for (const auto& a : acc) {
    t.s1 += a.s1;
    t.s2 += a.s2;
    t.r1 += a.r1;
    t.r2 += a.r2;
    t.r3 += a.r3;
    t.r4 += a.r4;
    t.n += a.n;
    t.aborted += a.aborted;
    for (size_t e = 0; e < engines.size(); ++e) t.per_engine[e] += a.per_engine[e];
  }
  const double n = static_cast<double>(t.n);
  out.mean = t.s1 / n;
  const double var = std::max(0.0, t.s2 / n - std::norm(out.mean));
  out.sigma = std::sqrt(var / n);
  const double m1 = t.r1 / n, m2 = t.r2 / n, m3 = t.r3 / n, m4 = t.r4 / n;
  const double cvar = m2 - m1 * m1;
  const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  out.kurtosis = cvar > 0 ? c4 / (cvar * cvar) : 0.0;
  out.aborted = t.aborted;
  for (size_t e = 0; e < engines.size(); ++e) out.per_engine[e] = t.per_engine[e] / n;
  return out;
}

IntegralEstimate finish(std::vector<std::unique_ptr<Engine>>& engines, const EngineOptions& opt,
                        IntegralEstimate est) {
  bool ok = true;
  double residual = 0;
  for (auto& e : engines) {
    est.value += e->exact();
    est.strata += e->balls();
    est.depth_leaves += e->leaves();
    residual += e->residual(ok);
  }
  if (!ok) {
    est.tail_converged = false;
    est.warnings.push_back("depth-limited strata do not show geometric decay");
  }
  est.tail += residual;
  if (opt.mc) {
    const SampleSummary s = draw_samples(engines, opt.samples, opt.seed, opt.workers);
    est.value += s.mean;
    est.mc_sigma = s.sigma;
    est.kurtosis = s.kurtosis;
    est.aborted = s.aborted;
    est.samples = opt.samples;
    if (s.kurtosis > 1e4) est.warnings.push_back("sample kurtosis suggests infinite variance");
    for (size_t e = 0; e < engines.size() && e < est.shells.size(); ++e) est.shells[e] += s.per_engine[e];
  }
  return est;
}

EngineOptions with_workers(EngineOptions opt) {
  if (opt.workers <= 0) opt.workers = default_workers();
  return opt;
}

}  // namespace

int default_workers() {
  if (const char* env = std::getenv("LSEL_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

IntegralEstimate padic_box_integrate(const PadicIntegrand& f, const Chart& chart, int m, const EngineOptions& o) {
  const EngineOptions opt = with_workers(o);
  std::vector<std::unique_ptr<Engine>> engines;
  engines.push_back(std::make_unique<Engine>(f, chart, m, opt));
  engines[0]->run_box();
  return finish(engines, opt, {});
}

IntegralEstimate padic_shell_integrate(const PadicIntegrand& f, const Chart& chart, int m, const EngineOptions& o) {
  const EngineOptions opt = with_workers(o);
  std::vector<std::unique_ptr<Engine>> engines;
  engines.push_back(std::make_unique<Engine>(f, chart, m, opt));
  engines[0]->run_shell();
  return finish(engines, opt, {});
}

IntegralEstimate padic_full_integrate(const PadicIntegrand& f, int M, const EngineOptions& o) {
  const EngineOptions opt = with_workers(o);
  const int w = std::max(1, opt.window);
  if (M < 2 * w) throw std::invalid_argument("padic_full_integrate: need at least 2 * window shells");
  std::vector<std::unique_ptr<Engine>> engines;
  engines.push_back(std::make_unique<Engine>(f, f.inner, 0, opt));
  for (int m = 1; m <= M; ++m) engines.push_back(std::make_unique<Engine>(f, f.outer, m, opt));
  parallel_for(M + 1, opt.workers, [&](long i) {
    if (i == 0) engines[0]->run_box();
    else engines[i]->run_shell();
  });
  IntegralEstimate est;
  for (auto& e : engines) est.shells.push_back(e->exact());
  est = finish(engines, opt, est);

  if (f.n == 1 && f.outer.corr.kind == Correction::Kind::kNone) {
    // Past shell m1 every factor has the valuation of its leading term, so
    // the shells form an exact geometric series.
    int m1 = 1;
    cplx growth = 1.0;
    for (const auto& fac : f.outer.factors) {
      const int D = fac.q.total_degree();
      if (D <= 0) continue;
      const int vD = padic_valuation(fac.q.coeff({D, 0, 0, 0}), f.p);
      for (int k = 0; k < D; ++k) {
        const mpz_class ck = fac.q.coeff({k, 0, 0, 0});
        if (ck == 0) continue;
        const int diff = vD - padic_valuation(ck, f.p);
        // need m D - vD > m k - v_k
        m1 = std::max(m1, static_cast<int>(std::floor(static_cast<double>(diff) / (D - k))) + 1);
      }
      growth *= std::exp(std::log(static_cast<double>(f.p)) * static_cast<double>(D) * fac.s);
    }
    const cplx x = growth * static_cast<double>(f.p);
    if (m1 <= M) {
      if (std::abs(x) >= 1) throw NonConvergent("padic_full_integrate: integral diverges at infinity");
      est.value += est.shells[M] * x / (1.0 - x);
      est.tail_ratio = std::abs(x);
      return est;
    }
  }

  double A = 0, B = 0;
  for (int m = M - w + 1; m <= M; ++m) A += std::abs(est.shells[m]);
  for (int m = M - 2 * w + 1; m <= M - w; ++m) B += std::abs(est.shells[m]);
  if (A == 0) {
    est.tail_ratio = 0;
  } else if (B <= 0 || A >= B) {
    est.tail_converged = false;
    est.tail = HUGE_VAL;
    est.tail_ratio = B > 0 ? A / B : HUGE_VAL;
    est.warnings.push_back("outer shells are not decaying");
  } else {
    const double R = A / B;
    est.tail_ratio = std::pow(R, 1.0 / w);
    est.tail += opt.safety * A * R / (1 - R);
  }
  return est;
}

IntegralEstimate padic_exact_1d(int p, const std::vector<mpq_class>& points, const std::vector<cplx>& exponents) {
  if (points.size() != exponents.size() || points.empty())
    throw std::invalid_argument("padic_exact_1d: one exponent per point");
  PadicIntegrand f;
  f.p = p;
  f.n = 1;
  int m0 = 0;
  cplx total_s = 0.0;
  for (size_t j = 0; j < points.size(); ++j) {
    const mpq_class& r = points[j];
    // |t - r| = |den t - num| / |den|
    MPoly q = MPoly::var(1, 0) * r.get_den() - MPoly::constant(1, r.get_num());
    f.inner.factors.push_back({q, exponents[j]});
    const int vden = padic_valuation(mpz_class(r.get_den()), p);
    f.constant *= std::exp(static_cast<double>(vden) * std::log(static_cast<double>(p)) * exponents[j]);
    if (r != 0) m0 = std::max(m0, -padic_valuation(r, p));
    total_s += exponents[j];
  }
  f.outer = f.inner;
  EngineOptions opt;
  opt.workers = 1;
  IntegralEstimate est = padic_box_integrate(f, f.inner, m0, opt);
  if (est.depth_leaves) throw std::logic_error("padic_exact_1d: points not separated");
  // For |t| = p^m > max |r_j| every factor equals p^m.
  const cplx x = std::exp(std::log(static_cast<double>(p)) * (1.0 + total_s));
  if (std::abs(x) >= 1) throw NonConvergent("padic_exact_1d: integral diverges at infinity");
  est.value += (1.0 - 1.0 / p) * std::pow(x, m0 + 1) / (1.0 - x);
  return est;
}

}  // namespace lsel
