#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "lsel/characters.hpp"
#include "lsel/poly.hpp"

namespace lsel {

/// Extension invariants (e, f, d) of the irreducible factors of a polynomial
/// over Q_p, sorted. In the tame regime d = e - 1.
struct SplittingType {
  std::vector<ExtInvariants> factors;

  int degree() const;
  std::string to_string() const;
  bool operator==(const SplittingType&) const = default;
};

/// Splitting type of a monic polynomial over Q_p with rational coefficients
/// (constant term first, leading 1 included); deg <= 4 and p > deg.
/// Unit discriminant: read off the factorization mod p. Otherwise: count
/// roots in Q_{p^m}, m <= deg, and settle any remaining degree-4 ramified part
/// by root search in the two ramified quadratic extensions. Precision starts
/// at `precision` and doubles up to four times on PrecisionExhausted.
SplittingType splitting_type_padic(const std::vector<mpq_class>& monic_coeffs, int p,
                                   int precision = PAdicNum::kDefaultPrecision);
SplittingType splitting_type_padic(const MonicPoly<mpq_class>& f, int p,
                                   int precision = PAdicNum::kDefaultPrecision);

/// Number of roots in Q_{p^m} of a monic p-integral polynomial (squarefree).
int count_roots_unramified(const std::vector<mpz_class>& monic_coeffs, int p, int m, int precision);
/// Number of roots in Q_p(sqrt(eps p)) (eps = 1 or the least non-residue).
int count_roots_ramified_quadratic(const std::vector<mpz_class>& monic_coeffs, int p, bool nonresidue,
                                   int precision);

}  // namespace lsel
