#include "nlse/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "nlse/errors.hpp"

namespace nlse {

std::complex<double> Mat2::entry(int row, int col) const {
  if (row == 0) return col == 0 ? a : b;
  return col == 0 ? c : d;
}

double Mat2::frob() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

double Mat2::max_abs() const {
  return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

Mat2 operator*(std::complex<double> s, const Mat2& m) {
  return {s * m.a, s * m.b, s * m.c, s * m.d};
}

LaurentSeries::LaurentSeries(int truncation) : trunc_(truncation) {
  if (truncation < 1) throw ValidationError("Laurent truncation must be positive");
  coef_.assign(static_cast<std::size_t>(2 * truncation + 1), Mat2{});
}

Mat2& LaurentSeries::at(int k) {
  if (k < -trunc_ || k > trunc_) throw ValidationError("Laurent mode index out of range");
  return coef_[static_cast<std::size_t>(k + trunc_)];
}

const Mat2& LaurentSeries::at(int k) const {
  if (k < -trunc_ || k > trunc_) throw ValidationError("Laurent mode index out of range");
  return coef_[static_cast<std::size_t>(k + trunc_)];
}

Mat2 LaurentSeries::eval(std::complex<double> Z) const {
  // Horner in Z for the analytic part, Horner in 1/Z for the principal part.
  Mat2 pos{};
  for (int k = trunc_; k >= 0; --k) pos = Z * pos + at(k);
  Mat2 neg{};
  const std::complex<double> w = 1.0 / Z;
  for (int k = -trunc_; k <= -1; ++k) neg = w * neg + at(k);
  return pos + w * neg;
}

double LaurentSeries::tail_max() const {
  const int lo = trunc_ - trunc_ / 8;
  double worst = 0;
  for (int k = lo; k <= trunc_; ++k)
    worst = std::max(worst, std::max(at(k).frob(), at(-k).frob()));
  return worst;
}

double LaurentSeries::max_frob() const {
  double worst = 0;
  for (const Mat2& m : coef_) worst = std::max(worst, m.frob());
  return worst;
}

LaurentSeries LaurentSeries::identity_series(int truncation) {
  LaurentSeries s(truncation);
  s.at(0) = Mat2::identity();
  return s;
}

LaurentSeries cauchy_plus(const LaurentSeries& h) {
  LaurentSeries out(h.truncation());
  for (int k = 0; k <= h.truncation(); ++k) out.at(k) = h.at(k);
  return out;
}

LaurentSeries cauchy_minus(const LaurentSeries& h) {
  LaurentSeries out(h.truncation());
  for (int k = -h.truncation(); k < 0; ++k)
    out.at(k) = std::complex<double>(-1.0, 0.0) * h.at(k);
  return out;
}

}  // namespace nlse
