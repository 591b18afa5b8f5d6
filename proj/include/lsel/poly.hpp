#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lsel/errors.hpp"
#include "lsel/finite_field.hpp"
#include "lsel/padic.hpp"

namespace lsel {

/// Backend hooks used by the generic polynomial code. `proto` is any element of
/// the ring and carries runtime data (the prime, the finite field).
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<mpz_class> {
  static mpz_class from_int(const mpz_class&, long n) { return n; }
  static bool is_zero(const mpz_class& x) { return x == 0; }
  static double pivot_rank(const mpz_class& x) { return x == 0 ? HUGE_VAL : 0.0; }
  static constexpr bool kExactDivision = true;
};

template <>
struct ScalarTraits<mpq_class> {
  static mpq_class from_int(const mpq_class&, long n) { return n; }
  static bool is_zero(const mpq_class& x) { return x == 0; }
  static double pivot_rank(const mpq_class& x) { return x == 0 ? HUGE_VAL : 0.0; }
  static constexpr bool kExactDivision = false;
};

template <>
struct ScalarTraits<std::complex<double>> {
  using C = std::complex<double>;
  static C from_int(const C&, long n) { return static_cast<double>(n); }
  static bool is_zero(const C& x) { return x == 0.0; }
  static double pivot_rank(const C& x) { return x == 0.0 ? HUGE_VAL : -std::abs(x); }
  static constexpr bool kExactDivision = false;
};

template <>
struct ScalarTraits<FFElem> {
  static FFElem from_int(const FFElem& proto, long n) { return {proto.F, proto.F->from_int(n)}; }
  static bool is_zero(const FFElem& x) { return x.v == 0; }
  static double pivot_rank(const FFElem& x) { return x.v == 0 ? HUGE_VAL : 0.0; }
  static constexpr bool kExactDivision = false;
};

template <>
struct ScalarTraits<PAdicNum> {
  static PAdicNum from_int(const PAdicNum& proto, long n) {
    const int k = proto.is_value() ? std::max(proto.precision(), int{PAdicNum::kDefaultPrecision})
                                   : int{PAdicNum::kDefaultPrecision};
    return n == 0 ? PAdicNum::exact_zero(proto.prime()) : PAdicNum(proto.prime(), n, k);
  }
  static bool is_zero(const PAdicNum& x) { return x.is_exact_zero(); }
  // Minimum valuation pivoting; inexact zeros rank after every known value.
  static double pivot_rank(const PAdicNum& x) {
    if (x.is_exact_zero()) return HUGE_VAL;
    if (x.is_inexact_zero()) return 1e9 + x.valuation_lower_bound();
    return x.valuation();
  }
  static constexpr bool kExactDivision = false;
};

/// Dense polynomial, coefficients from the constant term up.
template <class T>
class Poly {
 public:
  using Traits = ScalarTraits<T>;

  Poly() = default;
  Poly(std::vector<T> coeffs, T proto) : c_(std::move(coeffs)), proto_(std::move(proto)) { trim(); }
  static Poly constant(const T& a) { return Poly({a}, a); }
  static Poly x_minus(const T& a) { return Poly({-a, Traits::from_int(a, 1)}, a); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : zero(); }
  T lead() const { return c_.empty() ? zero() : c_.back(); }
  const T& proto() const { return proto_; }
  T zero() const { return Traits::from_int(proto_, 0); }

  T operator()(const T& x) const {
    T acc = zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(Traits::from_int(proto_, i) * c_[i]);
    return Poly(d, proto_);
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const T& pr = a.c_.empty() ? b.proto_ : a.proto_;
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), Traits::from_int(pr, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(r, pr);
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    const T& pr = a.c_.empty() ? b.proto_ : a.proto_;
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), Traits::from_int(pr, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Poly(r, pr);
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly({}, a.proto_);
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, a.zero());
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Poly(r, a.proto_);
  }
  bool operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!Traits::is_zero(c_[i] - o.c_[i])) return false;
    return true;
  }

  /// Quotient and remainder by a polynomial with invertible leading coefficient.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
    std::vector<T> r = c_, q(std::max(0, degree() - d.degree() + 1), zero());
    for (int i = degree(); i >= d.degree(); --i) {
      if (Traits::is_zero(r[i])) continue;
      const T t = r[i] / d.lead();
      q[i - d.degree()] = t;
      for (int j = 0; j <= d.degree(); ++j) r[i - d.degree() + j] = r[i - d.degree() + j] - t * d.c_[j];
    }
    r.resize(std::max(0, std::min<int>(static_cast<int>(r.size()), d.degree())));
    return {Poly(q, proto_), Poly(r, proto_)};
  }

 private:
  void trim() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
  T proto_{};
};

/// Monic polynomial of degree n identified with F^n through
/// x^n + b_{n-1} x^{n-1} + ... + b_0 -> (b_{n-1}, ..., b_0).
template <class T>
class MonicPoly {
 public:
  using Traits = ScalarTraits<T>;

  MonicPoly() = default;
  /// eta = (b_{n-1}, ..., b_0); n >= 1.
  MonicPoly(std::vector<T> eta, T proto) : eta_(std::move(eta)), proto_(std::move(proto)) {}
  static MonicPoly from_poly(const Poly<T>& f) {
    std::vector<T> e;
    const T one = Traits::from_int(f.proto(), 1);
    if (!Traits::is_zero(f.lead() - one)) throw std::invalid_argument("MonicPoly: not monic");
    for (int i = f.degree() - 1; i >= 0; --i) e.push_back(f.coeff(i));
    return MonicPoly(e, f.proto());
  }

  int degree() const { return static_cast<int>(eta_.size()); }
  const std::vector<T>& eta() const { return eta_; }
  /// Coefficient of x^i (b_n = 1).
  T coeff(int i) const { return i == degree() ? Traits::from_int(proto_, 1) : eta_[degree() - 1 - i]; }
  Poly<T> poly() const {
    std::vector<T> c;
    for (int i = 0; i <= degree(); ++i) c.push_back(coeff(i));
    return Poly<T>(c, proto_);
  }
  T operator()(const T& x) const { return poly()(x); }

 private:
  std::vector<T> eta_;
  T proto_{};
};

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
template <class T>
T determinant(std::vector<std::vector<T>> a, const T& proto) {
  using Tr = ScalarTraits<T>;
  const size_t n = a.size();
  if (n == 0) return Tr::from_int(proto, 1);
  T prev = Tr::from_int(proto, 1);
  bool negate = false;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = n;
    double best = HUGE_VAL;
    for (size_t i = k; i < n; ++i) {
      const double r = Tr::pivot_rank(a[i][k]);
      if (r < best) {
        best = r;
        piv = i;
      }
    }
    if (piv == n) return Tr::from_int(proto, 0);
    if (best >= 1e9) throw PrecisionExhausted("determinant: pivot indistinguishable from zero");
    if (piv != k) {
      std::swap(a[piv], a[k]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = Tr::from_int(proto, 0);
    }
    prev = a[k][k];
  }
  return negate ? T(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

template <class T>
std::vector<std::vector<T>> sylvester_matrix(const Poly<T>& f, const Poly<T>& g) {
  const int m = f.degree(), n = g.degree();
  const int N = m + n;
  const T z = f.zero();
  std::vector<std::vector<T>> S(N, std::vector<T>(N, z));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S[i][i + j] = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S[n + i][i + j] = g.coeff(n - j);
  return S;
}

/// R(f, g) = lead(f)^{deg g} prod_{f(a)=0} g(a), via the Sylvester determinant.
template <class T>
T resultant(const Poly<T>& f, const Poly<T>& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  if (f.degree() == 0 && g.degree() == 0) return ScalarTraits<T>::from_int(f.proto(), 1);
  return determinant(sylvester_matrix(f, g), f.proto());
}

template <class T>
T resultant(const MonicPoly<T>& f, const Poly<T>& g) {
  return resultant(f.poly(), g);
}

/// Delta(f) = (-1)^{n(n-1)/2} R(f, f'); 1 in degree 1.
template <class T>
T discriminant(const MonicPoly<T>& f) {
  if (f.degree() < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
  const Poly<T> P = f.poly();
  T r = resultant(P, P.derivative());
  const int n = f.degree();
  return ((n * (n - 1) / 2) % 2) ? T(-r) : r;
}

using CPoly = Poly<std::complex<double>>;
using CMonic = MonicPoly<std::complex<double>>;

/// prod (x - z_i).
CMonic roots_to_coeffs(const std::vector<std::complex<double>>& z);

}  // namespace lsel
