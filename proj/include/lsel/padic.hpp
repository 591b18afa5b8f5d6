#pragma once

#include <gmpxx.h>

#include <climits>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsel {

/// Exact power of a prime, the value set of |.| on Q_p. `zero` marks |0| = 0.
struct PowerOfP {
  int p = 2;
  int exponent = 0;  // value is p^exponent
  bool zero = false;

  double value() const;
  mpq_class exact() const;
  bool operator==(const PowerOfP&) const = default;
};

int padic_valuation(const mpz_class& x, int p);  // INT_MAX for x == 0
int padic_valuation(const mpq_class& x, int p);
mpz_class ipow(const mpz_class& base, unsigned long e);
mpz_class ppow(int p, int e);

/// Fixed relative precision p-adic number: p^valuation * unit, with the unit
/// known modulo p^precision. Three states: a value, an exact zero, and an
/// inexact zero (all digits cancelled; only a lower bound on the valuation is
/// known).
class PAdicNum {
 public:
  static constexpr int kDefaultPrecision = 24;
  static constexpr int kInfinity = INT_MAX;

  PAdicNum() = default;
  PAdicNum(int p, long value, int precision = kDefaultPrecision);
  PAdicNum(int p, const mpz_class& value, int precision = kDefaultPrecision);

  static PAdicNum from_rational(int p, const mpq_class& q, int precision = kDefaultPrecision);
  static PAdicNum exact_zero(int p);
  static PAdicNum inexact_zero(int p, int absolute_precision);
  /// p^valuation * unit, unit taken modulo p^precision (must be prime to p).
  static PAdicNum from_parts(int p, int valuation, const mpz_class& unit, int precision);

  int prime() const { return p_; }
  bool is_exact_zero() const { return state_ == State::kExactZero; }
  bool is_inexact_zero() const { return state_ == State::kInexactZero; }
  bool is_value() const { return state_ == State::kValue; }

  /// Throws PrecisionExhausted for an inexact zero; kInfinity for exact zero.
  int valuation() const;
  /// Lower bound on the valuation that never throws.
  int valuation_lower_bound() const;
  int precision() const { return prec_; }
  /// valuation + precision; kInfinity for exact zero.
  int absolute_precision() const;
  const mpz_class& unit() const { return unit_; }
  /// Base-p digits of the unit part, least significant first.
  std::vector<int> unit_digits() const;

  /// Rational representative p^v * unit (unit in [0, p^k)).
  mpq_class to_rational() const;
  /// Same number re-expressed at a smaller relative precision.
  PAdicNum with_precision(int precision) const;

  PAdicNum operator-() const;
  PAdicNum& operator+=(const PAdicNum& o);
  PAdicNum& operator-=(const PAdicNum& o);
  PAdicNum& operator*=(const PAdicNum& o);
  PAdicNum& operator/=(const PAdicNum& o);
  friend PAdicNum operator+(PAdicNum a, const PAdicNum& b) { return a += b; }
  friend PAdicNum operator-(PAdicNum a, const PAdicNum& b) { return a -= b; }
  friend PAdicNum operator*(PAdicNum a, const PAdicNum& b) { return a *= b; }
  friend PAdicNum operator/(PAdicNum a, const PAdicNum& b) { return a /= b; }

  /// Agreement on all digits both operands know.
  bool agrees_with(const PAdicNum& o) const;

  std::string to_string() const;

 private:
  enum class State { kValue, kExactZero, kInexactZero };

  void normalize(int absolute_precision);

  int p_ = 2;
  State state_ = State::kExactZero;
  int val_ = 0;    // valuation, or absolute precision bound for inexact zero
  int prec_ = 0;   // relative precision of the unit
  mpz_class unit_; // in [0, p^prec_)
};

std::ostream& operator<<(std::ostream& os, const PAdicNum& x);

/// |x|_p. Exact zero maps to 0; an inexact zero throws PrecisionExhausted.
PowerOfP padic_abs(const PAdicNum& x);

}  // namespace lsel
