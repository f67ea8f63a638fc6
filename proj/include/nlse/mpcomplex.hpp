#pragma once

#include <mpfr.h>

#include <complex>

namespace nlse {

/// Complex scalar with a fixed mantissa width in bits, backed by MPFR.
/// Only the operations the dressing recursion needs are provided; results
/// carry the wider precision of their operands.
class MpComplex {
 public:
  explicit MpComplex(int bits);
  MpComplex(int bits, double re, double im);
  MpComplex(int bits, std::complex<double> z);
  MpComplex(const MpComplex& other);
  MpComplex(MpComplex&& other) noexcept;
  MpComplex& operator=(const MpComplex& other);
  MpComplex& operator=(MpComplex&& other) noexcept;
  ~MpComplex();

  int bits() const { return static_cast<int>(mpfr_get_prec(re_)); }
  std::complex<double> to_std() const;

  MpComplex& operator+=(const MpComplex& rhs);
  MpComplex& operator-=(const MpComplex& rhs);

  friend MpComplex operator-(const MpComplex& z);
  friend MpComplex operator+(const MpComplex& a, const MpComplex& b);
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b);
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b);
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b);

  friend MpComplex conj(const MpComplex& z);
  /// |z|^2 as a real-valued MpComplex.
  friend MpComplex squared_modulus(const MpComplex& z);
  /// sqrt of the (nonnegative) real part; imaginary part ignored.
  friend MpComplex sqrt_real(const MpComplex& z);
  /// exp(i z) for complex z.
  friend MpComplex exp_i(const MpComplex& z);
  friend bool is_finite(const MpComplex& z);
  /// Double-precision estimate of Im z (used only for branch decisions).
  friend double imag_approx(const MpComplex& z);

 private:
  mpfr_t re_, im_;
};

// The same free-function surface for the native scalar, so numerical kernels
// can be written once against either type.
inline std::complex<double> squared_modulus(std::complex<double> z) { return {std::norm(z), 0.0}; }
inline std::complex<double> sqrt_real(std::complex<double> z) { return {std::sqrt(z.real()), 0.0}; }
inline std::complex<double> exp_i(std::complex<double> z) {
  return std::exp(std::complex<double>(0.0, 1.0) * z);
}
inline bool is_finite(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}
inline double imag_approx(std::complex<double> z) { return z.imag(); }
inline std::complex<double> to_standard(std::complex<double> z) { return z; }
inline std::complex<double> to_standard(const MpComplex& z) { return z.to_std(); }

/// Factory for native binary64 scalars.
struct DoubleField {
  using C = std::complex<double>;
  C lift(std::complex<double> z) const { return z; }
  C lift(double x) const { return {x, 0.0}; }
  int bits() const { return 53; }
};

/// Factory for MPFR scalars of a chosen width.
struct MpField {
  int mantissa_bits;
  using C = MpComplex;
  C lift(std::complex<double> z) const { return MpComplex(mantissa_bits, z); }
  C lift(double x) const { return MpComplex(mantissa_bits, x, 0.0); }
  int bits() const { return mantissa_bits; }
};

}  // namespace nlse
