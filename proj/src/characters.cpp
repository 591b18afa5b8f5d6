#include "lsel/characters.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lsel/errors.hpp"

namespace lsel {

namespace {

constexpr double kPi = std::numbers::pi;

cplx qpow(long q, cplx e) { return std::exp(e * std::log(static_cast<double>(q))); }

void check_pole(long q, cplx s, const char* who) {
  if (std::abs(1.0 - qpow(q, -s)) < 1e-13)
    throw PoleError(std::string(who) + ": pole at q^{-s} = 1 (s = " + std::to_string(s.real()) +
                    (s.imag() != 0 ? "+" + std::to_string(s.imag()) + "i" : "") + ")");
}

}  // namespace

LocalFieldDesc LocalFieldDesc::padic(int p, int f, int d) {
  if (p < 2) throw std::invalid_argument("LocalFieldDesc: p must be prime");
  if (f < 1 || d < 0) throw std::invalid_argument("LocalFieldDesc: need f >= 1, d >= 0");
  return {Kind::kPadic, p, f, d};
}

LocalFieldDesc LocalFieldDesc::finite(int p, int f) { return {Kind::kFinite, p, f, 0}; }

LocalFieldDesc LocalFieldDesc::complex() { return {Kind::kComplex, 0, 0, 0}; }

long LocalFieldDesc::q() const {
  long q = 1;
  for (int i = 0; i < f; ++i) q *= p;
  return q;
}

std::string LocalFieldDesc::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kComplex: os << "C"; break;
    case Kind::kFinite: os << "F_" << q(); break;
    case Kind::kPadic:
      os << "Q_" << p;
      if (f > 1) os << "^(f=" << f << ")";
      if (d > 0) os << "(d=" << d << ")";
  }
  return os.str();
}

int AdditiveCharDesc::conductor_exponent() const {
  return field.kind == LocalFieldDesc::Kind::kPadic ? field.d : 0;
}

cplx AdditiveCharDesc::operator()(const FiniteField& F, int x) const {
  return std::polar(1.0, 2 * kPi * F.trace(x) / F.p());
}

cplx AdditiveCharDesc::operator()(cplx z) const { return std::polar(1.0, 4 * kPi * z.real()); }

QuasiCharacter QuasiCharacter::unramified(const LocalFieldDesc& field, cplx s) {
  if (field.kind == LocalFieldDesc::Kind::kFinite)
    throw std::invalid_argument("QuasiCharacter: finite fields use indexed characters");
  return {field, s, 0};
}

QuasiCharacter QuasiCharacter::finite(const LocalFieldDesc& field, int index) {
  if (field.kind != LocalFieldDesc::Kind::kFinite)
    throw std::invalid_argument("QuasiCharacter: indexed characters need a finite field");
  const long n = field.q() - 1;
  return {field, 0.0, static_cast<int>(((index % n) + n) % n)};
}

cplx QuasiCharacter::at_valuation(int v) const { return qpow(field.q(), -s * static_cast<double>(v)); }

cplx QuasiCharacter::at_complex(cplx z) const {
  const double r = std::norm(z);
  if (r == 0) return 0.0;
  return std::exp(s * std::log(r));
}

cplx QuasiCharacter::at_finite(const FiniteField& F, int x) const {
  if (x == 0) return 0.0;
  return std::polar(1.0, 2 * kPi * static_cast<double>(index) * F.log(x) / (F.q() - 1));
}

cplx gamma_padic(long q, int d, cplx s) {
  check_pole(q, s, "gamma_padic");
  return qpow(q, static_cast<double>(d) * (s - 0.5)) * (1.0 - qpow(q, s - 1.0)) / (1.0 - qpow(q, -s));
}

cplx gamma_padic(const LocalFieldDesc& field, const QuasiCharacter& chi) {
  if (field.kind != LocalFieldDesc::Kind::kPadic) throw std::invalid_argument("gamma_padic: not p-adic");
  return gamma_padic(field.q(), field.d, chi.s);
}

cplx rho_padic(const LocalFieldDesc& field, const QuasiCharacter& chi) {
  // chi(-1) = |-1|^s = 1
  return gamma_padic(field, chi) / chi.at_valuation(0);
}

cplx gamma_via_integral(long q, int d, cplx s) {
  if (s.real() <= 0 || s.real() >= 1)
    throw NonConvergent("gamma_via_integral: shell series needs 0 < re s < 1");
  const double Q = static_cast<double>(q);
  const double vol_O = std::pow(Q, -0.5 * d);
  // Shells {val x = v}: psi integrates to vol(shell) for v >= -d, to
  // -vol(p^{-d} O) on the first nontrivial shell v = -d-1, and to 0 below.
  auto shell_psi = [&](int v) -> double {
    if (v >= -d) return vol_O * std::pow(Q, -v) * (1.0 - 1.0 / Q);
    if (v == -d - 1) return -vol_O * std::pow(Q, d);
    return 0.0;
  };
  auto integrand = [&](int v) { return qpow(q, -static_cast<double>(v) * (s - 1.0)); };

  cplx total = 0.0;
  const int head_end = -d + 8;
  for (int v = -d - 3; v < head_end; ++v) total += shell_psi(v) * integrand(v);
  // Remaining shells v >= head_end form a geometric series with ratio q^{-s}.
  const cplx ratio = qpow(q, -s);
  check_pole(q, s, "gamma_via_integral");
  total += shell_psi(head_end) * integrand(head_end) / (1.0 - ratio);
  return total;
}

cplx gamma_via_integral(const LocalFieldDesc& field, const QuasiCharacter& chi) {
  if (field.kind != LocalFieldDesc::Kind::kPadic)
    throw std::invalid_argument("gamma_via_integral: not p-adic");
  return gamma_via_integral(field.q(), field.d, chi.s);
}

cplx classical_gamma(cplx z) {
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    if (std::abs(z.imag()) < 1e-14 && std::abs(z.real() - std::round(z.real())) < 1e-14)
      throw PoleError("classical Gamma: pole at nonpositive integer " + std::to_string(z.real()));
    return kPi / (std::sin(kPi * z) * classical_gamma(1.0 - z));
  }
  z -= 1.0;
  cplx x = kCoef[0];
  for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx gamma_complex(cplx s) {
  const cplx g = classical_gamma(s);
  const cplx form1 = std::pow(2.0, 1.0 - 2.0 * s) * std::pow(kPi, -2.0 * s) * g * g * std::sin(kPi * s);
  const cplx form2 = std::pow(2 * kPi, 1.0 - s) * g / (std::pow(2 * kPi, s) * classical_gamma(1.0 - s));
  if (std::abs(form1 - form2) > 1e-10 * std::max(1.0, std::abs(form2)))
    throw std::logic_error("gamma_complex: closed forms disagree");
  return form2;
}

cplx gauss_sum(const FiniteField& F, int chi_index) {
  const auto field = LocalFieldDesc::finite(F.p(), F.degree());
  return gauss_sum(F, QuasiCharacter::finite(field, chi_index), AdditiveCharDesc::standard(field));
}

cplx gauss_sum(const FiniteField& F, const QuasiCharacter& chi, const AdditiveCharDesc& psi) {
  cplx s = 0.0;
  for (int x = 1; x < F.q(); ++x) s += chi.at_finite(F, x) * psi(F, x);
  return s;
}

cplx gamma_ext(const ExtInvariants& inv, const LocalFieldDesc& base, const QuasiCharacter& chi) {
  if (base.kind != LocalFieldDesc::Kind::kPadic) throw std::invalid_argument("gamma_ext: base not p-adic");
  long qE = 1;
  for (int i = 0; i < inv.f; ++i) qE *= base.q();
  return gamma_padic(qE, inv.d, chi.s);
}

cplx gamma_of(const LocalFieldDesc& field, cplx s) {
  switch (field.kind) {
    case LocalFieldDesc::Kind::kPadic: return gamma_padic(field.q(), field.d, s);
    case LocalFieldDesc::Kind::kComplex: return gamma_complex(s);
    default: throw std::invalid_argument("gamma_of: finite fields use gauss_sum");
  }
}

}  // namespace lsel
