#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <vector>

#include "lsel/finite_field.hpp"
#include "lsel/padic.hpp"

namespace lsel {

/// The unramified extension Q_{p^m} of Q_p, restricted to its ring of integers
/// Z_{p^m} = Z_p[t]/(g) modulo p^precision, where g is the defining polynomial
/// of F_{p^m} (see FiniteField) lifted with digits in [0, p).
///
/// Elements are coordinate vectors in the basis 1, t, ..., t^{m-1}.
class UnramExt {
 public:
  using Elem = std::vector<mpz_class>;

  UnramExt(int p, int m, int precision = PAdicNum::kDefaultPrecision);

  int p() const { return p_; }
  int degree() const { return m_; }
  int precision() const { return k_; }
  const mpz_class& modulus() const { return mod_; }
  const FiniteField& residue_field() const { return *field_; }
  /// Lifted defining polynomial, coefficients g_0..g_{m-1} (monic).
  const std::vector<mpz_class>& defining_poly() const { return g_; }

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const { return from_int(1); }
  Elem from_int(const mpz_class& n) const;
  Elem generator() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, unsigned long e) const;
  /// Inverse of a unit (valuation 0).
  Elem inverse(const Elem& a) const;

  /// Minimum coordinate valuation; precision() when a == 0 mod p^precision.
  int valuation(const Elem& a) const;
  /// a / p^v, assuming valuation(a) >= v; the top v digits become unknown.
  Elem div_p_pow(const Elem& a, int v) const;
  /// Residue class of a in F_{p^m} (as a FiniteField code).
  int residue(const Elem& a) const;
  /// Digit lift of a residue code.
  Elem lift(int code) const;

  /// Frobenius automorphism, acting through the Hensel-lifted image of t.
  Elem frobenius(const Elem& a) const;
  std::vector<Elem> conjugates(const Elem& a) const;
  /// Tr and N as sums/products over conjugates (results lie in Z_p).
  mpz_class trace(const Elem& a) const;
  mpz_class norm(const Elem& a) const;
  /// Tr and N as trace/determinant of the multiplication-by-a matrix.
  mpz_class matrix_trace(const Elem& a) const;
  mpz_class matrix_norm(const Elem& a) const;
  std::vector<std::vector<mpz_class>> multiplication_matrix(const Elem& a) const;

  PAdicNum coordinate(const Elem& a, int i) const;

  // LocalRootSearch ring interface (uniformizer p).
  int capacity() const { return k_; }
  Elem div_pi_pow(const Elem& a, int v) const { return div_p_pow(a, v); }
  Elem pi_pow(int e) const { return from_int(ppow(p_, e)); }
  const std::vector<Elem>& residue_lifts() const { return lifts_; }

 private:
  mpz_class reduce(const mpz_class& x) const;

  int p_, m_, k_;
  mpz_class mod_;
  std::shared_ptr<const FiniteField> field_;
  std::vector<mpz_class> g_;
  Elem frob_t_;  // sigma(t)
  std::vector<Elem> lifts_;
};

/// All roots in Z_{p^m} of a monic polynomial with p-integral rational
/// coefficients (low to high, leading 1 included), found by residue search
/// modulo p followed by Hensel lifting. Each returned root r satisfies
/// val f(r) >= E.precision() - (lifting loss). Throws PrecisionExhausted when
/// a multiple residue cannot be separated at the working precision.
std::vector<UnramExt::Elem> unram_root_search(const UnramExt& E,
                                              const std::vector<mpq_class>& monic_coeffs);

/// |z|_C = |z|^2.
double complex_norm(std::complex<double> z);

}  // namespace lsel
