#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace lsel {

/// Integer polynomial in up to four variables.
class MPoly {
 public:
  static constexpr int kMaxVars = 4;
  using Exp = std::array<int, kMaxVars>;

  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {}
  static MPoly constant(int nvars, const mpz_class& c);
  static MPoly var(int nvars, int i);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  const std::map<Exp, mpz_class>& terms() const { return terms_; }
  mpz_class coeff(const Exp& e) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const mpz_class& c);
  MPoly operator-() const { return *this * mpz_class(-1); }
  MPoly pow(int e) const;
  bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// x_i -> images[i]; the result lives in images[0].nvars() variables.
  MPoly substitute(const std::vector<MPoly>& images) const;
  /// Multiplies each degree-t term by p^{m (D - t)}, D the total degree, so
  /// that the result is p^{mD} P(p^{-m} y).
  MPoly box_scaled(int p, int m) const;

  mpz_class eval(const std::vector<mpz_class>& x) const;
  mpq_class eval(const std::vector<mpq_class>& x) const;
  std::string to_string() const;

 private:
  void add_term(const Exp& e, const mpz_class& c);

  int nvars_ = 0;
  std::map<Exp, mpz_class> terms_;
};

using MPolyMatrix = std::vector<std::vector<MPoly>>;

/// Determinant by cofactor expansion with memoized minors.
MPoly mpoly_det(const MPolyMatrix& a);

/// Polynomial in x with MPoly coefficients, constant term first.
using PolyOverMPoly = std::vector<MPoly>;

/// Generic monic polynomial x^n + b_{n-1} x^{n-1} + ... + b_0 in variables
/// ordered as eta: variable 0 is b_{n-1}, variable n-1 is b_0.
PolyOverMPoly generic_monic(int n);
/// R(f, g) = prod_{f(a)=0} g(a) = det g(C_f) for monic f.
MPoly resultant_monic(const PolyOverMPoly& f, const PolyOverMPoly& g);
/// (-1)^{n(n-1)/2} R(f, f') for monic f.
MPoly discriminant_monic(const PolyOverMPoly& f);
/// f(t) as an MPoly, for an integer t.
MPoly evaluate_at(const PolyOverMPoly& f, long t);

}  // namespace lsel
