#include "lsel/unram.hpp"

#include <stdexcept>

#include "lsel/errors.hpp"
#include "lsel/local_roots.hpp"

namespace lsel {

namespace {

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const size_t n = a.size();
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

UnramExt::UnramExt(int p, int m, int precision)
    : p_(p), m_(m), k_(precision), mod_(ppow(p, precision)), field_(FiniteField::get(p, m)) {
  if (precision < 2) throw std::invalid_argument("UnramExt: precision must be >= 2");
  for (int b : field_->modulus()) g_.emplace_back(b);

  lifts_.reserve(field_->q());
  for (int c = 0; c < field_->q(); ++c) lifts_.push_back(lift(c));

  // sigma(t): the root of g congruent to t^p.
  Elem y = pow(generator(), static_cast<unsigned long>(p));
  for (int it = 0; it < 2 * k_ + 8; ++it) {
    Elem gy = one(), dgy = zero();
    // Horner for g and g' simultaneously, g monic of degree m.
    for (int i = m_ - 1; i >= 0; --i) {
      dgy = add(mul(dgy, y), gy);
      gy = add(mul(gy, y), from_int(g_[i]));
    }
    if (valuation(gy) >= k_) break;
    y = sub(y, mul(gy, inverse(dgy)));
  }
  frob_t_ = y;
}

mpz_class UnramExt::reduce(const mpz_class& x) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), mod_.get_mpz_t());
  return r;
}

UnramExt::Elem UnramExt::from_int(const mpz_class& n) const {
  Elem e = zero();
  e[0] = reduce(n);
  return e;
}

UnramExt::Elem UnramExt::generator() const {
  if (m_ == 1) return from_int(-g_[0]);
  Elem e = zero();
  e[1] = 1;
  return e;
}

UnramExt::Elem UnramExt::add(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = reduce(a[i] + b[i]);
  return r;
}

UnramExt::Elem UnramExt::sub(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = reduce(a[i] - b[i]);
  return r;
}

UnramExt::Elem UnramExt::neg(const Elem& a) const { return sub(zero(), a); }

UnramExt::Elem UnramExt::mul(const Elem& a, const Elem& b) const {
  std::vector<mpz_class> z(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) z[i + j] += a[i] * b[j];
  for (int d = 2 * m_ - 2; d >= m_; --d) {
    if (z[d] == 0) continue;
    for (int i = 0; i < m_; ++i) z[d - m_ + i] -= z[d] * g_[i];
    z[d] = 0;
  }
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = reduce(z[i]);
  return r;
}

UnramExt::Elem UnramExt::pow(const Elem& a, unsigned long e) const {
  Elem r = one(), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

UnramExt::Elem UnramExt::inverse(const Elem& a) const {
  const int res = residue(a);
  if (res == 0) throw std::domain_error("UnramExt::inverse: not a unit");
  Elem x = lift(field_->inv(res));
  const Elem two = from_int(2);
  for (int known = 1; known < k_; known *= 2) x = mul(x, sub(two, mul(a, x)));
  return x;
}

int UnramExt::valuation(const Elem& a) const {
  int v = k_;
  for (const auto& c : a)
    if (c != 0) v = std::min(v, padic_valuation(c, p_));
  return v;
}

UnramExt::Elem UnramExt::div_p_pow(const Elem& a, int v) const {
  if (v == 0) return a;
  const mpz_class d = ppow(p_, v);
  Elem r(m_);
  for (int i = 0; i < m_; ++i) {
    if (!mpz_divisible_p(a[i].get_mpz_t(), d.get_mpz_t()))
      throw std::domain_error("UnramExt::div_p_pow: not divisible");
    r[i] = a[i] / d;
  }
  return r;
}

int UnramExt::residue(const Elem& a) const {
  int code = 0;
  for (int i = m_ - 1; i >= 0; --i) {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), a[i].get_mpz_t(), static_cast<unsigned long>(p_));
    code = code * p_ + static_cast<int>(r.get_si());
  }
  return code;
}

UnramExt::Elem UnramExt::lift(int code) const {
  Elem e(m_);
  for (int i = 0; i < m_; ++i) {
    e[i] = code % p_;
    code /= p_;
  }
  return e;
}

UnramExt::Elem UnramExt::frobenius(const Elem& a) const {
  Elem r = zero(), tp = one();
  for (int i = 0; i < m_; ++i) {
    r = add(r, mul(from_int(a[i]), tp));
    tp = mul(tp, frob_t_);
  }
  return r;
}

std::vector<UnramExt::Elem> UnramExt::conjugates(const Elem& a) const {
  std::vector<Elem> c{a};
  for (int j = 1; j < m_; ++j) c.push_back(frobenius(c.back()));
  return c;
}

mpz_class UnramExt::trace(const Elem& a) const {
  Elem s = zero();
  for (const auto& c : conjugates(a)) s = add(s, c);
  for (int i = 1; i < m_; ++i)
    if (s[i] != 0) throw PrecisionExhausted("UnramExt::trace: conjugate sum not in Z_p");
  return s[0];
}

mpz_class UnramExt::norm(const Elem& a) const {
  Elem s = one();
  for (const auto& c : conjugates(a)) s = mul(s, c);
  for (int i = 1; i < m_; ++i)
    if (s[i] != 0) throw PrecisionExhausted("UnramExt::norm: conjugate product not in Z_p");
  return s[0];
}

std::vector<std::vector<mpz_class>> UnramExt::multiplication_matrix(const Elem& a) const {
  std::vector<std::vector<mpz_class>> M(m_, std::vector<mpz_class>(m_));
  Elem col = a;
  const Elem t = generator();
  for (int j = 0; j < m_; ++j) {
    for (int i = 0; i < m_; ++i) M[i][j] = col[i];
    col = mul(col, t);
  }
  return M;
}

mpz_class UnramExt::matrix_trace(const Elem& a) const {
  auto M = multiplication_matrix(a);
  mpz_class s = 0;
  for (int i = 0; i < m_; ++i) s += M[i][i];
  return reduce(s);
}

mpz_class UnramExt::matrix_norm(const Elem& a) const {
  return reduce(bareiss_det(multiplication_matrix(a)));
}

PAdicNum UnramExt::coordinate(const Elem& a, int i) const {
  if (a[i] == 0) return PAdicNum::inexact_zero(p_, k_);
  const int v = padic_valuation(a[i], p_);
  return PAdicNum::from_parts(p_, v, a[i] / ppow(p_, v), k_ - v);
}

std::vector<UnramExt::Elem> unram_root_search(const UnramExt& E,
                                              const std::vector<mpq_class>& monic_coeffs) {
  if (monic_coeffs.empty() || monic_coeffs.back() != 1)
    throw std::invalid_argument("unram_root_search: polynomial must be monic");
  std::vector<UnramExt::Elem> f;
  const mpz_class& M = E.modulus();
  for (const auto& c : monic_coeffs) {
    if (padic_valuation(c, E.p()) < 0)
      throw std::invalid_argument("unram_root_search: coefficients must be p-integral");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), M.get_mpz_t());
    f.push_back(E.from_int(c.get_num() * inv));
  }
  return LocalRootSearch<UnramExt>(E).roots(f);
}

double complex_norm(std::complex<double> z) { return std::norm(z); }

}  // namespace lsel
