#include "lsel/mpoly.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lsel/padic.hpp"

namespace lsel {

MPoly MPoly::constant(int nvars, const mpz_class& c) {
  MPoly r(nvars);
  r.add_term({0, 0, 0, 0}, c);
  return r;
}

MPoly MPoly::var(int nvars, int i) {
  if (i < 0 || i >= nvars || nvars > kMaxVars) throw std::invalid_argument("MPoly::var: bad index");
  MPoly r(nvars);
  Exp e{0, 0, 0, 0};
  e[i] = 1;
  r.add_term(e, 1);
  return r;
}

void MPoly::add_term(const Exp& e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

mpz_class MPoly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exp e;
      for (int i = 0; i < MPoly::kMaxVars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly operator*(MPoly a, const mpz_class& c) {
  if (c == 0) return MPoly(a.nvars_);
  for (auto& [e, v] : a.terms_) v *= c;
  return a;
}

MPoly MPoly::pow(int e) const {
  MPoly r = constant(nvars_, 1), b = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b;
    if (e > 1) b = b * b;
  }
  return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
  if (static_cast<int>(images.size()) < nvars_) throw std::invalid_argument("MPoly::substitute: too few images");
  const int nv = images.empty() ? 0 : images[0].nvars();
  MPoly r(nv);
  for (const auto& [e, c] : terms_) {
    MPoly t = constant(nv, c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t = t * images[i].pow(e[i]);
    r += t;
  }
  return r;
}

MPoly MPoly::box_scaled(int p, int m) const {
  const int D = total_degree();
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    const int t = e[0] + e[1] + e[2] + e[3];
    r.add_term(e, c * ppow(p, m * (D - t)));
  }
  return r;
}

mpz_class MPoly::eval(const std::vector<mpz_class>& x) const {
  mpz_class acc = 0, t, pw;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) {
        mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), e[i]);
        t *= pw;
      }
    acc += t;
  }
  return acc;
}

mpq_class MPoly::eval(const std::vector<mpq_class>& x) const {
  mpq_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int j = 0; j < e[i]; ++j) t *= x[i];
    acc += t;
  }
  return acc;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const mpz_class a = abs(c);
    const bool unit_coeff = a == 1 && (e[0] + e[1] + e[2] + e[3]) > 0;
    if (!unit_coeff) os << a;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) os << "x" << i << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return os.str();
}

MPoly mpoly_det(const MPolyMatrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return MPoly::constant(0, 1);
  if (n > 20) throw std::invalid_argument("mpoly_det: matrix too large");
  const int nv = a[0][0].nvars();
  std::unordered_map<unsigned, MPoly> memo;
  // minor over rows r..n-1 and the columns in mask
  std::function<MPoly(int, unsigned)> minor = [&](int r, unsigned mask) -> MPoly {
    if (r == n) return MPoly::constant(nv, 1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    MPoly acc(nv);
    int sign_pos = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      if (!a[r][j].is_zero()) {
        MPoly t = a[r][j] * minor(r + 1, mask & ~(1u << j));
        if (sign_pos % 2) acc -= t;
        else acc += t;
      }
      ++sign_pos;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return minor(0, (1u << n) - 1);
}

PolyOverMPoly generic_monic(int n) {
  PolyOverMPoly f(n + 1, MPoly(n));
  for (int i = 0; i < n; ++i) f[i] = MPoly::var(n, n - 1 - i);
  f[n] = MPoly::constant(n, 1);
  return f;
}

MPoly resultant_monic(const PolyOverMPoly& f, const PolyOverMPoly& g) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1) throw std::invalid_argument("resultant_monic: degree must be >= 1");
  const int nv = f[0].nvars();
  // Companion matrix of f acting on the basis 1, x, ..., x^{n-1}.
  MPolyMatrix C(n, std::vector<MPoly>(n, MPoly(nv)));
  for (int i = 1; i < n; ++i) C[i][i - 1] = MPoly::constant(nv, 1);
  for (int i = 0; i < n; ++i) C[i][n - 1] = -f[i];
  auto matmul = [&](const MPolyMatrix& A, const MPolyMatrix& B) {
    MPolyMatrix R(n, std::vector<MPoly>(n, MPoly(nv)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (A[i][k].is_zero()) continue;
        for (int j = 0; j < n; ++j)
          if (!B[k][j].is_zero()) R[i][j] += A[i][k] * B[k][j];
      }
    return R;
  };
  MPolyMatrix P(n, std::vector<MPoly>(n, MPoly(nv))), acc = P;
  for (int i = 0; i < n; ++i) P[i][i] = MPoly::constant(nv, 1);
  for (size_t j = 0; j < g.size(); ++j) {
    if (!g[j].is_zero())
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (!P[r][c].is_zero()) acc[r][c] += g[j] * P[r][c];
    if (j + 1 < g.size()) P = matmul(P, C);
  }
  return mpoly_det(acc);
}

MPoly discriminant_monic(const PolyOverMPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n == 1) return MPoly::constant(f[0].nvars(), 1);
  PolyOverMPoly df;
  for (int i = 1; i <= n; ++i) df.push_back(f[i] * mpz_class(i));
  MPoly r = resultant_monic(f, df);
  return (n * (n - 1) / 2) % 2 ? -r : r;
}

MPoly evaluate_at(const PolyOverMPoly& f, long t) {
  MPoly acc(f[0].nvars());
  mpz_class pw = 1;
  for (const auto& c : f) {
    acc += c * pw;
    pw *= t;
  }
  return acc;
}

}  // namespace lsel
