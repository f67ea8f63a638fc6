#pragma once

#include <complex>
#include <vector>

namespace nlse {

/// 2x2 complex matrix, entries (row, col): a=(0,0), b=(0,1), c=(1,0), d=(1,1).
struct Mat2 {
  std::complex<double> a{0, 0}, b{0, 0}, c{0, 0}, d{0, 0};

  static Mat2 identity() { return {{1, 0}, {0, 0}, {0, 0}, {1, 0}}; }

  std::complex<double> entry(int row, int col) const;
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  std::complex<double> det() const { return a * d - b * c; }
  Mat2 adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  double frob() const;
  double max_abs() const;
};

Mat2 operator*(std::complex<double> s, const Mat2& m);

/// Matrix-valued truncated Laurent expansion sum_{k=-M}^{M} A_k Z^k with the
/// unit circle as reference contour.
class LaurentSeries {
 public:
  explicit LaurentSeries(int truncation);

  int truncation() const { return trunc_; }
  Mat2& at(int k);
  const Mat2& at(int k) const;

  Mat2 eval(std::complex<double> Z) const;

  /// Largest coefficient norm with |k| in [M - M/8, M]: the under-resolution
  /// monitor.  A well-resolved solution has spectrally small entries there.
  double tail_max() const;

  /// Largest coefficient norm over the whole mode range; the natural scale
  /// against which the tail is judged.
  double max_frob() const;

  static LaurentSeries identity_series(int truncation);

 private:
  int trunc_;
  std::vector<Mat2> coef_;
};

/// Cauchy projectors in mode space.  cauchy_plus keeps modes k >= 0 (the
/// interior boundary-value part); cauchy_minus returns minus the strictly
/// negative modes (the exterior part).  Exact identities on coefficients:
/// plus - minus = id, plus(minus(.)) = 0, minus(minus(.)) = -minus(.).
LaurentSeries cauchy_plus(const LaurentSeries& h);
LaurentSeries cauchy_minus(const LaurentSeries& h);

}  // namespace nlse
