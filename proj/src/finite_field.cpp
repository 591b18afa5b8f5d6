#include "lsel/finite_field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lsel {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Dense = std::vector<int>;  // coefficients low to high over F_p

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1, e = p - 2;
  long b = a;
  while (e > 0) {
    if (e & 1) r = static_cast<int>(r * b % p);
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

Dense rem(Dense a, const Dense& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = static_cast<int>(static_cast<long>(a.back()) * lead_inv % p);
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Dense from_code(long code, int p, int len) {
  Dense d(len);
  for (int i = 0; i < len; ++i) {
    d[i] = static_cast<int>(code % p);
    code /= p;
  }
  return d;
}

bool irreducible(const Dense& g, int p) {
  const int n = static_cast<int>(g.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long c = 0; c < count; ++c) {
      Dense h = from_code(c, p, d);
      h.push_back(1);
      if (rem(g, h, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::get(int p, int f) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, f}];
  if (!slot) slot = std::make_shared<const FiniteField>(p, f);
  return slot;
}

FiniteField::FiniteField(int p, int f) : p_(p), f_(f) {
  if (!is_prime(p)) throw std::invalid_argument("FiniteField: p must be prime");
  if (f < 1) throw std::invalid_argument("FiniteField: degree must be >= 1");
  long q = 1;
  for (int i = 0; i < f; ++i) q *= p;
  if (q > (1 << 22)) throw std::invalid_argument("FiniteField: q too large for table representation");
  q_ = static_cast<int>(q);

  Dense g;
  if (f == 1) {
    g = {0, 1};
  } else {
    for (long c = 0; c < q; ++c) {
      Dense cand = from_code(c, p, f);
      cand.push_back(1);
      if (irreducible(cand, p)) {
        g = cand;
        break;
      }
    }
  }
  modulus_.assign(g.begin(), g.end() - 1);

  auto to_code = [&](const Dense& d) {
    int code = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
    return code;
  };
  auto slow_mul = [&](int a, int b) {
    Dense x = from_code(a, p, f), y = from_code(b, p, f), z(2 * f, 0);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
    return to_code(rem(z, g, p));
  };

  exp_.assign(q_, 1);
  log_.assign(q_, -1);
  log_[1] = 0;
  for (int gen = 2; gen < q_; ++gen) {
    std::vector<int> powers{1};
    int x = slow_mul(1, gen);
    while (x != 1) {
      powers.push_back(x);
      x = slow_mul(x, gen);
    }
    if (static_cast<int>(powers.size()) == q_ - 1) {
      for (int i = 0; i < q_ - 1; ++i) {
        exp_[i] = powers[i];
        log_[powers[i]] = i;
      }
      break;
    }
  }
  exp_[q_ - 1] = 1;

  trace_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) trace_[a] = partial_trace(a, f_);
}

int FiniteField::from_int(long n) const {
  long r = ((n % p_) + p_) % p_;
  return static_cast<int>(r);
}

int FiniteField::add(int a, int b) const {
  if (f_ == 1) return (a + b) % p_;
  int r = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

int FiniteField::neg(int a) const {
  if (f_ == 1) return (p_ - a) % p_;
  int r = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int FiniteField::inv(int a) const {
  if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int FiniteField::pow(int a, long e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  const long n = q_ - 1;
  long k = (static_cast<long>(log_[a]) * (((e % n) + n) % n)) % n;
  return exp_[k];
}

int FiniteField::log(int a) const {
  if (a == 0) throw std::domain_error("FiniteField: log of zero");
  return log_[a];
}

int FiniteField::exp(long k) const {
  const long n = q_ - 1;
  return exp_[((k % n) + n) % n];
}

int FiniteField::partial_trace(int a, int d) const {
  int s = 0, x = a;
  for (int i = 0; i < d; ++i) {
    s = add(s, x);
    x = frobenius(x);
  }
  return s;
}

std::string FiniteField::to_string(int a) const {
  if (f_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < f_; ++i) {
    os << (i ? "," : "") << a % p_;
    a /= p_;
  }
  os << "]";
  return os.str();
}

}  // namespace lsel
