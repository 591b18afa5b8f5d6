#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lsel {

/// F_q, q = p^f, realised as F_p[x]/(g) with g the lexicographically smallest
/// monic irreducible of degree f, ordered by (b_{f-1}, ..., b_0).
///
/// Elements are integer codes c_0 + c_1 p + ... + c_{f-1} p^{f-1}, where c_i is
/// the coefficient of x^i. Discrete logs are taken with respect to the
/// smallest-code generator of F_q^*.
class FiniteField {
 public:
  static std::shared_ptr<const FiniteField> get(int p, int f = 1);

  FiniteField(int p, int f);

  int p() const { return p_; }
  int degree() const { return f_; }
  int q() const { return q_; }
  /// Coefficients b_0..b_{f-1} of the defining polynomial (monic, leading 1 omitted).
  const std::vector<int>& modulus() const { return modulus_; }
  int generator() const { return exp_[1]; }

  int from_int(long n) const;
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long e) const;
  int frobenius(int a) const { return pow(a, p_); }

  /// Discrete log of a nonzero element, in [0, q-1).
  int log(int a) const;
  int exp(long k) const;

  /// Absolute trace to F_p, as an integer in [0, p).
  int trace(int a) const { return trace_[a]; }
  /// sum_{i<d} a^{p^i}: the trace from F_{p^d} to F_p for a in that subfield.
  int partial_trace(int a, int d) const;

  std::string to_string(int a) const;

 private:
  int p_, f_, q_;
  std::vector<int> modulus_;
  std::vector<int> log_, exp_, trace_;
};

/// Value-type element bound to a field.
struct FFElem {
  const FiniteField* F = nullptr;
  int v = 0;

  FFElem() = default;
  FFElem(const FiniteField* field, int code) : F(field), v(code) {}

  bool is_zero() const { return v == 0; }
  FFElem operator-() const { return {F, F->neg(v)}; }
  FFElem& operator+=(const FFElem& o) { v = F->add(v, o.v); return *this; }
  FFElem& operator-=(const FFElem& o) { v = F->sub(v, o.v); return *this; }
  FFElem& operator*=(const FFElem& o) { v = F->mul(v, o.v); return *this; }
  FFElem& operator/=(const FFElem& o) { v = F->div(v, o.v); return *this; }
  friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
  friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
  friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
  friend FFElem operator/(FFElem a, const FFElem& b) { return a /= b; }
  friend bool operator==(const FFElem& a, const FFElem& b) { return a.v == b.v; }
};

}  // namespace lsel
