#include "lsel/factor_ff.hpp"

#include <algorithm>

namespace lsel {

FFPoly ff_poly(const FiniteField& F, const std::vector<int>& codes) {
  std::vector<FFElem> c;
  for (int v : codes) c.emplace_back(&F, v);
  return FFPoly(c, FFElem(&F, 0));
}

std::vector<std::pair<FFPoly, int>> factor_ff(const FFPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("factor_ff: degree must be >= 1");
  if (f.lead().v != 1) throw std::invalid_argument("factor_ff: polynomial must be monic");
  const FiniteField& F = *f.proto().F;
  const long q = F.q();
  std::vector<std::pair<FFPoly, int>> out;
  FFPoly rest = f;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) {
      count *= q;
      if (count > 1000000) throw BudgetExceeded("factor_ff: trial division budget exceeded");
    }
    std::vector<int> codes(d + 1, 0);
    codes[d] = 1;
    for (long c = 0; c < count && 2 * d <= rest.degree(); ++c) {
      long t = c;
      for (int i = 0; i < d; ++i) {
        codes[i] = static_cast<int>(t % q);
        t /= q;
      }
      const FFPoly h = ff_poly(F, codes);
      int mult = 0;
      while (rest.degree() >= d) {
        auto [quo, rem] = rest.divmod(h);
        if (!rem.is_zero()) break;
        rest = quo;
        ++mult;
      }
      if (mult > 0) out.emplace_back(h, mult);
    }
  }
  if (rest.degree() >= 1) out.emplace_back(rest, 1);
  return out;
}

std::vector<int> factor_degrees_ff(const FFPoly& f) {
  std::vector<int> d;
  for (const auto& [h, m] : factor_ff(f))
    for (int i = 0; i < m; ++i) d.push_back(h.degree());
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace lsel
