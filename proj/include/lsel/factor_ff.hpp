#pragma once

#include <utility>
#include <vector>

#include "lsel/finite_field.hpp"
#include "lsel/poly.hpp"

namespace lsel {

using FFPoly = Poly<FFElem>;

/// Complete factorization of a monic polynomial over F_q into monic
/// irreducibles with multiplicities, by trial division in increasing degree.
/// Throws BudgetExceeded when a degree layer has more than 10^6 candidates.
std::vector<std::pair<FFPoly, int>> factor_ff(const FFPoly& f);

/// Degrees of the irreducible factors (with multiplicity), ascending.
std::vector<int> factor_degrees_ff(const FFPoly& f);

/// Monic polynomial over F_q from integer codes, constant term first (leading 1 included).
FFPoly ff_poly(const FiniteField& F, const std::vector<int>& codes);

}  // namespace lsel
