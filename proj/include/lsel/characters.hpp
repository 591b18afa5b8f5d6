#pragma once

#include <complex>
#include <memory>
#include <string>

#include "lsel/finite_field.hpp"

namespace lsel {

using cplx = std::complex<double>;

/// Which local field: F_q, a p-adic field with residue cardinality q = p^f and
/// different exponent d, or C.
struct LocalFieldDesc {
  enum class Kind { kFinite, kPadic, kComplex };

  Kind kind = Kind::kPadic;
  int p = 2;
  int f = 1;
  int d = 0;

  static LocalFieldDesc padic(int p, int f = 1, int d = 0);
  static LocalFieldDesc finite(int p, int f = 1);
  static LocalFieldDesc complex();

  long q() const;
  std::string name() const;
};

/// Additive character conventions: psi on Q_p trivial on Z_p and not on
/// p^{-1}Z_p; on an extension with different exponent d, trivial on p^{-d};
/// on C, psi(z) = exp(4 pi i re z); on F_q, psi(x) = exp(2 pi i Tr(x) / p).
struct AdditiveCharDesc {
  LocalFieldDesc field;

  static AdditiveCharDesc standard(const LocalFieldDesc& field) { return {field}; }
  /// Largest m with psi trivial on p^{-m}.
  int conductor_exponent() const;
  cplx operator()(const FiniteField& F, int x) const;
  cplx operator()(cplx z) const;
};

/// x -> |x|^s on p-adic fields and C; chi_j(g^k) = exp(2 pi i j k / (q-1))
/// on F_q^*, with chi(0) = 0.
struct QuasiCharacter {
  LocalFieldDesc field;
  cplx s = 1.0;
  int index = 0;

  static QuasiCharacter unramified(const LocalFieldDesc& field, cplx s);
  static QuasiCharacter finite(const LocalFieldDesc& field, int index);
  /// chi_0 = |.|
  static QuasiCharacter norm(const LocalFieldDesc& field) { return unramified(field, 1.0); }

  double real_part() const { return s.real(); }
  /// Value at an element of absolute value q^{-v} (p-adic) or |z|_C = r.
  cplx at_valuation(int v) const;
  cplx at_complex(cplx z) const;
  cplx at_finite(const FiniteField& F, int x) const;
};

/// Gamma factor q^{d(s-1/2)} (1 - q^{s-1}) / (1 - q^{-s}) of |.|^s on a
/// p-adic field with residue cardinality q and different exponent d.
cplx gamma_padic(long q, int d, cplx s);
cplx gamma_padic(const LocalFieldDesc& field, const QuasiCharacter& chi);
/// rho = Gamma / chi(-1); equal to Gamma for unramified chi.
cplx rho_padic(const LocalFieldDesc& field, const QuasiCharacter& chi);

/// Integral of psi(x)|x|^{s-1} dx summed shell by shell, with vol(O) = q^{-d/2}
/// and psi trivial on p^{-d}. Requires 0 < re s.
cplx gamma_via_integral(long q, int d, cplx s);
cplx gamma_via_integral(const LocalFieldDesc& field, const QuasiCharacter& chi);

/// Classical Gamma function (Lanczos approximation with reflection).
cplx classical_gamma(cplx z);
/// Gamma factor of |.|_C^s for psi(z) = exp(4 pi i re z).
cplx gamma_complex(cplx s);

/// Sum over F_q^* of chi(x) psi(x).
cplx gauss_sum(const FiniteField& F, int chi_index);
cplx gauss_sum(const FiniteField& F, const QuasiCharacter& chi, const AdditiveCharDesc& psi);

/// Extension invariants of a local field extension E/F.
struct ExtInvariants {
  int e = 1;
  int f = 1;
  int d = 0;
  int degree() const { return e * f; }
  bool operator==(const ExtInvariants&) const = default;
  auto operator<=>(const ExtInvariants&) const = default;
};

/// Gamma_E(chi o N_{E/F}) for unramified chi = |.|^s on the base:
/// chi o N = |.|_E^s, so this is gamma_padic with q_E = q^f and d_E = d.
cplx gamma_ext(const ExtInvariants& inv, const LocalFieldDesc& base, const QuasiCharacter& chi);

/// Gamma of |.|^s on the given backend (p-adic or complex).
cplx gamma_of(const LocalFieldDesc& field, cplx s);

}  // namespace lsel
