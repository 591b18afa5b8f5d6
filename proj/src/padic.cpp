#include "lsel/padic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lsel/errors.hpp"

namespace lsel {

double PowerOfP::value() const {
  if (zero) return 0.0;
  return std::pow(static_cast<double>(p), exponent);
}

mpq_class PowerOfP::exact() const {
  if (zero) return 0;
  if (exponent >= 0) return mpq_class(ppow(p, exponent));
  return mpq_class(mpz_class(1), ppow(p, -exponent));
}

int padic_valuation(const mpz_class& x, int p) {
  if (x == 0) return INT_MAX;
  mpz_class t = x;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int padic_valuation(const mpq_class& x, int p) {
  if (x == 0) return INT_MAX;
  return padic_valuation(x.get_num(), p) - padic_valuation(x.get_den(), p);
}

mpz_class ipow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpz_class ppow(int p, int e) {
  if (e < 0) throw std::invalid_argument("ppow: negative exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

namespace {

mpz_class mod_pk(const mpz_class& x, int p, int k) {
  mpz_class m = ppow(p, k);
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

void check_prime(int p) {
  if (p < 2) throw std::invalid_argument("PAdicNum: p must be a prime >= 2");
}

}  // namespace

// unit_ holds a raw integer (possibly divisible by p) scaled by p^val_, known
// modulo p^(abs_prec - val_); strip p-factors and reduce.
void PAdicNum::normalize(int abs_prec) {
  if (abs_prec <= val_) {
    state_ = State::kInexactZero;
    val_ = abs_prec;
    prec_ = 0;
    unit_ = 0;
    return;
  }
  mpz_class u = mod_pk(unit_, p_, abs_prec - val_);
  if (u == 0) {
    state_ = State::kInexactZero;
    val_ = abs_prec;
    prec_ = 0;
    unit_ = 0;
    return;
  }
  int v = padic_valuation(u, p_);
  if (v > 0) mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), ppow(p_, v).get_mpz_t());
  val_ += v;
  prec_ = abs_prec - val_;
  unit_ = u;
  state_ = State::kValue;
}

PAdicNum::PAdicNum(int p, long value, int precision) : PAdicNum(p, mpz_class(value), precision) {}

PAdicNum::PAdicNum(int p, const mpz_class& value, int precision) : p_(p) {
  check_prime(p);
  if (precision < 1) throw std::invalid_argument("PAdicNum: precision must be >= 1");
  if (value == 0) {
    state_ = State::kExactZero;
    return;
  }
  int v = padic_valuation(value, p);
  val_ = 0;
  unit_ = value;
  normalize(v + precision);
}

PAdicNum PAdicNum::from_rational(int p, const mpq_class& q, int precision) {
  check_prime(p);
  if (q == 0) return exact_zero(p);
  int vn = padic_valuation(q.get_num(), p);
  int vd = padic_valuation(q.get_den(), p);
  mpz_class num = q.get_num() / ppow(p, vn);
  mpz_class den = q.get_den() / ppow(p, vd);
  mpz_class m = ppow(p, precision);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return from_parts(p, vn - vd, num * inv, precision);
}

PAdicNum PAdicNum::exact_zero(int p) {
  check_prime(p);
  PAdicNum z;
  z.p_ = p;
  z.state_ = State::kExactZero;
  return z;
}

PAdicNum PAdicNum::inexact_zero(int p, int absolute_precision) {
  check_prime(p);
  PAdicNum z;
  z.p_ = p;
  z.state_ = State::kInexactZero;
  z.val_ = absolute_precision;
  return z;
}

PAdicNum PAdicNum::from_parts(int p, int valuation, const mpz_class& unit, int precision) {
  check_prime(p);
  if (precision < 1) throw std::invalid_argument("PAdicNum: precision must be >= 1");
  PAdicNum x;
  x.p_ = p;
  x.val_ = valuation;
  x.unit_ = unit;
  x.normalize(valuation + precision);
  if (x.state_ != State::kValue || x.val_ != valuation)
    throw std::invalid_argument("PAdicNum::from_parts: unit divisible by p");
  return x;
}

int PAdicNum::valuation() const {
  switch (state_) {
    case State::kExactZero: return kInfinity;
    case State::kInexactZero:
      throw PrecisionExhausted("valuation of a p-adic number indistinguishable from 0 (>= " +
                               std::to_string(val_) + ")");
    default: return val_;
  }
}

int PAdicNum::valuation_lower_bound() const {
  return state_ == State::kExactZero ? kInfinity : val_;
}

int PAdicNum::absolute_precision() const {
  switch (state_) {
    case State::kExactZero: return kInfinity;
    case State::kInexactZero: return val_;
    default: return val_ + prec_;
  }
}

std::vector<int> PAdicNum::unit_digits() const {
  std::vector<int> d;
  mpz_class u = unit_;
  for (int i = 0; i < prec_; ++i) {
    mpz_class r;
    mpz_fdiv_qr_ui(u.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p_));
    d.push_back(static_cast<int>(r.get_si()));
  }
  return d;
}

mpq_class PAdicNum::to_rational() const {
  if (state_ != State::kValue) return 0;
  mpq_class r(unit_);
  if (val_ >= 0) r *= mpq_class(ppow(p_, val_));
  else r /= mpq_class(ppow(p_, -val_));
  return r;
}

PAdicNum PAdicNum::with_precision(int precision) const {
  if (state_ != State::kValue || precision >= prec_) return *this;
  PAdicNum x = *this;
  x.normalize(val_ + precision);
  return x;
}

PAdicNum PAdicNum::operator-() const {
  if (state_ != State::kValue) return *this;
  PAdicNum x = *this;
  x.unit_ = -unit_;
  x.normalize(val_ + prec_);
  return x;
}

PAdicNum& PAdicNum::operator+=(const PAdicNum& o) {
  if (o.p_ != p_ && !(o.is_exact_zero() || is_exact_zero()))
    throw std::invalid_argument("PAdicNum: mixed primes");
  if (o.is_exact_zero()) return *this;
  if (is_exact_zero()) return *this = o;
  int abs_prec = std::min(absolute_precision(), o.absolute_precision());
  int vmin = std::min(val_, o.val_);
  mpz_class a = state_ == State::kValue ? unit_ * ppow(p_, val_ - vmin) : mpz_class(0);
  mpz_class b = o.state_ == State::kValue ? o.unit_ * ppow(p_, o.val_ - vmin) : mpz_class(0);
  val_ = vmin;
  unit_ = a + b;
  normalize(abs_prec);
  return *this;
}

PAdicNum& PAdicNum::operator-=(const PAdicNum& o) { return *this += -o; }

PAdicNum& PAdicNum::operator*=(const PAdicNum& o) {
  if (is_exact_zero()) return *this;
  if (o.is_exact_zero()) return *this = o;
  if (o.p_ != p_) throw std::invalid_argument("PAdicNum: mixed primes");
  if (is_inexact_zero() || o.is_inexact_zero()) {
    int bound = val_ + o.val_;
    return *this = inexact_zero(p_, bound);
  }
  int k = std::min(prec_, o.prec_);
  val_ += o.val_;
  unit_ *= o.unit_;
  normalize(val_ + k);
  return *this;
}

PAdicNum& PAdicNum::operator/=(const PAdicNum& o) {
  if (o.is_exact_zero()) throw std::domain_error("PAdicNum: division by zero");
  if (o.is_inexact_zero())
    throw PrecisionExhausted("PAdicNum: division by a number indistinguishable from 0");
  if (o.p_ != p_) throw std::invalid_argument("PAdicNum: mixed primes");
  if (is_exact_zero()) return *this;
  if (is_inexact_zero()) return *this = inexact_zero(p_, val_ - o.val_);
  int k = std::min(prec_, o.prec_);
  mpz_class m = ppow(p_, k);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), o.unit_.get_mpz_t(), m.get_mpz_t());
  val_ -= o.val_;
  unit_ *= inv;
  normalize(val_ + k);
  return *this;
}

bool PAdicNum::agrees_with(const PAdicNum& o) const {
  if (is_exact_zero() && o.is_exact_zero()) return true;
  int a = std::min(absolute_precision(), o.absolute_precision());
  if (a == kInfinity) return false;
  PAdicNum d = *this - o;
  return d.valuation_lower_bound() >= a;
}

std::string PAdicNum::to_string() const {
  std::ostringstream os;
  switch (state_) {
    case State::kExactZero: os << "0"; break;
    case State::kInexactZero: os << "O(" << p_ << "^" << val_ << ")"; break;
    default:
      os << unit_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << (val_ + prec_)
         << ")";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PAdicNum& x) { return os << x.to_string(); }

PowerOfP padic_abs(const PAdicNum& x) {
  if (x.is_exact_zero()) return PowerOfP{x.prime(), 0, true};
  return PowerOfP{x.prime(), -x.valuation(), false};
}

}  // namespace lsel
