#include "lsel/splitting.hpp"

#include <algorithm>
#include <sstream>

#include "lsel/errors.hpp"
#include "lsel/factor_ff.hpp"
#include "lsel/local_roots.hpp"
#include "lsel/unram.hpp"

namespace lsel {

namespace {

// Z_p[pi], pi^2 = eps p, modulo p^K. Elements a + b pi.
class RamifiedQuadratic {
 public:
  using Elem = std::pair<mpz_class, mpz_class>;

  RamifiedQuadratic(int p, long eps, int K) : p_(p), K_(K), M_(ppow(p, K)), pe_(mpz_class(p) * eps) {
    for (int r = 0; r < p; ++r) lifts_.push_back({r, 0});
  }

  int capacity() const { return 2 * K_; }
  Elem zero() const { return {0, 0}; }
  Elem one() const { return {1, 0}; }
  Elem from_int(const mpz_class& n) const { return {red(n), 0}; }
  Elem add(const Elem& x, const Elem& y) const { return {red(x.first + y.first), red(x.second + y.second)}; }
  Elem sub(const Elem& x, const Elem& y) const { return {red(x.first - y.first), red(x.second - y.second)}; }
  Elem mul(const Elem& x, const Elem& y) const {
    return {red(x.first * y.first + pe_ * x.second * y.second), red(x.first * y.second + x.second * y.first)};
  }
  int valuation(const Elem& x) const {
    const int va = x.first == 0 ? K_ : padic_valuation(x.first, p_);
    const int vb = x.second == 0 ? K_ : padic_valuation(x.second, p_);
    return std::min({2 * va, 2 * vb + 1, 2 * K_});
  }
  Elem inverse(const Elem& x) const {
    mpz_class den = red(x.first * x.first - pe_ * x.second * x.second), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M_.get_mpz_t()) == 0)
      throw std::domain_error("RamifiedQuadratic::inverse: not a unit");
    return {red(x.first * inv), red(-x.second * inv)};
  }
  Elem div_pi_pow(Elem x, int v) const {
    for (int i = 0; i < v; ++i) {
      // (a + b pi) / pi = b + (a / (eps p)) pi
      mpz_class a = x.first;
      if (!mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p_)))
        throw std::domain_error("RamifiedQuadratic::div_pi_pow: not divisible");
      mpz_class ap = a / p_;
      mpz_class eps = pe_ / p_, einv;
      mpz_invert(einv.get_mpz_t(), eps.get_mpz_t(), M_.get_mpz_t());
      x = {x.second, red(ap * einv)};
    }
    return x;
  }
  Elem pi_pow(int e) const {
    mpz_class c = ipow(pe_, static_cast<unsigned long>(e / 2));
    return e % 2 ? Elem{0, red(c)} : Elem{red(c), 0};
  }
  const std::vector<Elem>& residue_lifts() const { return lifts_; }

 private:
  mpz_class red(const mpz_class& x) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), M_.get_mpz_t());
    return r;
  }

  int p_, K_;
  mpz_class M_, pe_;
  std::vector<Elem> lifts_;
};

long least_nonresidue(int p) {
  for (long a = 2; a < p; ++a) {
    long r = 1;
    for (int i = 0; i < (p - 1) / 2; ++i) r = r * a % p;
    if (r == p - 1) return a;
  }
  throw std::invalid_argument("least_nonresidue: p must be an odd prime");
}

// f_t(x) = p^{nt} f(x / p^t) with t minimal making every coefficient p-integral.
std::vector<mpq_class> make_integral(const std::vector<mpq_class>& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  int t = 0;
  for (int i = 0; i < n; ++i) {
    if (f[i] == 0) continue;
    const int v = padic_valuation(f[i], p);
    if (v < 0) t = std::max(t, (-v + (n - i) - 1) / (n - i));
  }
  std::vector<mpq_class> g(f);
  for (int i = 0; i < n; ++i) g[i] = f[i] * mpq_class(ppow(p, (n - i) * t));
  return g;
}

std::vector<mpz_class> to_residues(const std::vector<mpq_class>& f, int p, int K) {
  const mpz_class M = ppow(p, K);
  std::vector<mpz_class> out;
  for (const auto& c : f) {
    mpz_class inv, r;
    mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), M.get_mpz_t());
    r = c.get_num() * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
    out.push_back(r);
  }
  return out;
}

}  // namespace

int SplittingType::degree() const {
  int d = 0;
  for (const auto& x : factors) d += x.degree();
  return d;
}

std::string SplittingType::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < factors.size(); ++i)
    os << (i ? " " : "") << "(" << factors[i].e << "," << factors[i].f << "," << factors[i].d << ")";
  os << "]";
  return os.str();
}

int count_roots_unramified(const std::vector<mpz_class>& f, int p, int m, int precision) {
  UnramExt E(p, m, precision);
  std::vector<UnramExt::Elem> g;
  for (const auto& c : f) g.push_back(E.from_int(c));
  return LocalRootSearch<UnramExt>(E).count(g);
}

int count_roots_ramified_quadratic(const std::vector<mpz_class>& f, int p, bool nonresidue, int precision) {
  RamifiedQuadratic R(p, nonresidue ? least_nonresidue(p) : 1, precision);
  std::vector<RamifiedQuadratic::Elem> g;
  for (const auto& c : f) g.push_back(R.from_int(c));
  return LocalRootSearch<RamifiedQuadratic>(R).count(g);
}

SplittingType splitting_type_padic(const MonicPoly<mpq_class>& f, int p, int precision) {
  std::vector<mpq_class> c;
  for (int i = 0; i <= f.degree(); ++i) c.push_back(f.coeff(i));
  return splitting_type_padic(c, p, precision);
}

SplittingType splitting_type_padic(const std::vector<mpq_class>& monic_coeffs, int p, int precision) {
  const int n = static_cast<int>(monic_coeffs.size()) - 1;
  if (n < 1 || monic_coeffs.back() != 1) throw std::invalid_argument("splitting_type_padic: need a monic polynomial");
  if (n > 4) throw UnsupportedDegree("splitting_type_padic: degree " + std::to_string(n) + " > 4");
  if (p <= n) throw std::invalid_argument("splitting_type_padic: tame regime requires p > deg f");

  const std::vector<mpq_class> g = make_integral(monic_coeffs, p);
  std::vector<mpq_class> eta(g.rbegin() + 1, g.rend());
  const mpq_class disc = discriminant(MonicPoly<mpq_class>(eta, mpq_class(0)));
  if (disc == 0) throw SingularInput("splitting_type_padic: zero discriminant");
  const int vd = padic_valuation(disc, p);

  SplittingType st;
  if (vd == 0) {
    auto F = FiniteField::get(p);
    std::vector<int> codes;
    for (const auto& r : to_residues(g, p, 1)) codes.push_back(static_cast<int>(r.get_si()));
    for (int deg : factor_degrees_ff(ff_poly(*F, codes))) st.factors.push_back({1, deg, 0});
    std::sort(st.factors.begin(), st.factors.end());
    return st;
  }

  int K = std::max(precision, vd + 4);
  for (int attempt = 0;; ++attempt) {
    try {
      const auto z = to_residues(g, p, K);
      std::vector<int> N(n + 1, 0);
      for (int m = 1; m <= n; ++m) N[m] = count_roots_unramified(z, p, m, K);
      // An unramified irreducible factor of degree k has k roots in Q_{p^m} when k | m.
      int u[5] = {0, 0, 0, 0, 0};
      u[1] = N[1];
      if (n >= 2) u[2] = (N[2] - N[1]) / 2;
      if (n >= 3) u[3] = (N[3] - N[1]) / 3;
      if (n >= 4) u[4] = (N[4] - N[1] - 2 * u[2]) / 4;
      int r = n;
      for (int k = 1; k <= 4; ++k) {
        for (int i = 0; i < u[k]; ++i) st.factors.push_back({1, k, 0});
        r -= k * u[k];
      }
      if (r < 0 || r == 1) throw std::logic_error("splitting_type_padic: inconsistent root counts");
      if (r == 2) {
        st.factors.push_back({2, 1, 1});
      } else if (r == 3) {
        st.factors.push_back({3, 1, 2});
      } else if (r == 4) {
        // Quartic with no unramified factor: (4,1,3) has odd discriminant
        // valuation; (2,2,1) and two (2,1,1) both have even valuation and are
        // told apart by roots in the ramified quadratic extensions.
        if (vd % 2) {
          st.factors.push_back({4, 1, 3});
        } else {
          const int roots = count_roots_ramified_quadratic(z, p, false, K) +
                            count_roots_ramified_quadratic(z, p, true, K);
          if (roots > 0) {
            st.factors.push_back({2, 1, 1});
            st.factors.push_back({2, 1, 1});
          } else {
            st.factors.push_back({2, 2, 1});
          }
        }
      }
      std::sort(st.factors.begin(), st.factors.end());
      return st;
    } catch (const PrecisionExhausted&) {
      if (attempt >= 4) throw;
      K *= 2;
      st.factors.clear();
    }
  }
}

CMonic roots_to_coeffs(const std::vector<std::complex<double>>& z) {
  using C = std::complex<double>;
  std::vector<C> c{1.0};  // constant term first
  for (const C& r : z) {
    std::vector<C> next(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return CMonic::from_poly(CPoly(c, C(0.0)));
}

}  // namespace lsel
