#include "nlse/mpcomplex.hpp"

#include <algorithm>

#include "nlse/errors.hpp"

namespace nlse {

namespace {
int checked_bits(int bits) {
  if (bits < 2) throw ValidationError("mantissa width must be at least 2 bits");
  return bits;
}
}  // namespace

MpComplex::MpComplex(int bits) {
  mpfr_init2(re_, checked_bits(bits));
  mpfr_init2(im_, bits);
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
}

MpComplex::MpComplex(int bits, double re, double im) {
  mpfr_init2(re_, checked_bits(bits));
  mpfr_init2(im_, bits);
  mpfr_set_d(re_, re, MPFR_RNDN);
  mpfr_set_d(im_, im, MPFR_RNDN);
}

MpComplex::MpComplex(int bits, std::complex<double> z) : MpComplex(bits, z.real(), z.imag()) {}

MpComplex::MpComplex(const MpComplex& other) {
  mpfr_init2(re_, mpfr_get_prec(other.re_));
  mpfr_init2(im_, mpfr_get_prec(other.im_));
  mpfr_set(re_, other.re_, MPFR_RNDN);
  mpfr_set(im_, other.im_, MPFR_RNDN);
}

MpComplex::MpComplex(MpComplex&& other) noexcept {
  mpfr_init2(re_, mpfr_get_prec(other.re_));
  mpfr_init2(im_, mpfr_get_prec(other.im_));
  mpfr_swap(re_, other.re_);
  mpfr_swap(im_, other.im_);
}

MpComplex& MpComplex::operator=(const MpComplex& other) {
  if (this != &other) {
    mpfr_set_prec(re_, mpfr_get_prec(other.re_));
    mpfr_set_prec(im_, mpfr_get_prec(other.im_));
    mpfr_set(re_, other.re_, MPFR_RNDN);
    mpfr_set(im_, other.im_, MPFR_RNDN);
  }
  return *this;
}

MpComplex& MpComplex::operator=(MpComplex&& other) noexcept {
  if (this != &other) {
    mpfr_swap(re_, other.re_);
    mpfr_swap(im_, other.im_);
  }
  return *this;
}

MpComplex::~MpComplex() {
  mpfr_clear(re_);
  mpfr_clear(im_);
}

std::complex<double> MpComplex::to_std() const {
  return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)};
}

namespace {
int join_bits(const mpfr_t a, const mpfr_t b) {
  return static_cast<int>(std::max(mpfr_get_prec(a), mpfr_get_prec(b)));
}
}  // namespace

MpComplex& MpComplex::operator+=(const MpComplex& rhs) {
  mpfr_add(re_, re_, rhs.re_, MPFR_RNDN);
  mpfr_add(im_, im_, rhs.im_, MPFR_RNDN);
  return *this;
}

MpComplex& MpComplex::operator-=(const MpComplex& rhs) {
  mpfr_sub(re_, re_, rhs.re_, MPFR_RNDN);
  mpfr_sub(im_, im_, rhs.im_, MPFR_RNDN);
  return *this;
}

MpComplex operator-(const MpComplex& z) {
  MpComplex r(z);
  mpfr_neg(r.re_, r.re_, MPFR_RNDN);
  mpfr_neg(r.im_, r.im_, MPFR_RNDN);
  return r;
}

MpComplex operator+(const MpComplex& a, const MpComplex& b) {
  MpComplex r(join_bits(a.re_, b.re_));
  mpfr_add(r.re_, a.re_, b.re_, MPFR_RNDN);
  mpfr_add(r.im_, a.im_, b.im_, MPFR_RNDN);
  return r;
}

MpComplex operator-(const MpComplex& a, const MpComplex& b) {
  MpComplex r(join_bits(a.re_, b.re_));
  mpfr_sub(r.re_, a.re_, b.re_, MPFR_RNDN);
  mpfr_sub(r.im_, a.im_, b.im_, MPFR_RNDN);
  return r;
}

MpComplex operator*(const MpComplex& a, const MpComplex& b) {
  MpComplex r(join_bits(a.re_, b.re_));
  // (ar + i ai)(br + i bi): fmms/fmma keep each part to one rounding.
  mpfr_fmms(r.re_, a.re_, b.re_, a.im_, b.im_, MPFR_RNDN);
  mpfr_fmma(r.im_, a.re_, b.im_, a.im_, b.re_, MPFR_RNDN);
  return r;
}

MpComplex operator/(const MpComplex& a, const MpComplex& b) {
  const int bits = join_bits(a.re_, b.re_);
  MpComplex r(bits);
  mpfr_t den;
  mpfr_init2(den, bits);
  mpfr_fmma(den, b.re_, b.re_, b.im_, b.im_, MPFR_RNDN);
  mpfr_fmma(r.re_, a.re_, b.re_, a.im_, b.im_, MPFR_RNDN);
  mpfr_fmms(r.im_, a.im_, b.re_, a.re_, b.im_, MPFR_RNDN);
  mpfr_div(r.re_, r.re_, den, MPFR_RNDN);
  mpfr_div(r.im_, r.im_, den, MPFR_RNDN);
  mpfr_clear(den);
  return r;
}

MpComplex conj(const MpComplex& z) {
  MpComplex r(z);
  mpfr_neg(r.im_, r.im_, MPFR_RNDN);
  return r;
}

MpComplex squared_modulus(const MpComplex& z) {
  MpComplex r(static_cast<int>(mpfr_get_prec(z.re_)));
  mpfr_fmma(r.re_, z.re_, z.re_, z.im_, z.im_, MPFR_RNDN);
  return r;
}

MpComplex sqrt_real(const MpComplex& z) {
  MpComplex r(static_cast<int>(mpfr_get_prec(z.re_)));
  mpfr_sqrt(r.re_, z.re_, MPFR_RNDN);
  return r;
}

MpComplex exp_i(const MpComplex& z) {
  // exp(i(a + ib)) = exp(-b) (cos a + i sin a)
  const int bits = static_cast<int>(mpfr_get_prec(z.re_));
  MpComplex r(bits);
  mpfr_t mag, s, c;
  mpfr_init2(mag, bits);
  mpfr_init2(s, bits);
  mpfr_init2(c, bits);
  mpfr_neg(mag, z.im_, MPFR_RNDN);
  mpfr_exp(mag, mag, MPFR_RNDN);
  mpfr_sin_cos(s, c, z.re_, MPFR_RNDN);
  mpfr_mul(r.re_, mag, c, MPFR_RNDN);
  mpfr_mul(r.im_, mag, s, MPFR_RNDN);
  mpfr_clear(mag);
  mpfr_clear(s);
  mpfr_clear(c);
  return r;
}

bool is_finite(const MpComplex& z) { return mpfr_number_p(z.re_) && mpfr_number_p(z.im_); }

double imag_approx(const MpComplex& z) { return mpfr_get_d(z.im_, MPFR_RNDN); }

}  // namespace nlse
