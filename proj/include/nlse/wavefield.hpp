#pragma once

#include <complex>
#include <string>
#include <vector>

namespace nlse {

/// Which coordinate frame a field lives in: raw soliton coordinates, or one
/// of the rescaled frames whose amplitudes have been normalized by the
/// ensemble size.
struct FrameInfo {
  enum class Kind { physical, rescaled_piii, rescaled_pv };
  Kind kind = Kind::physical;
  int n = 0;            // ensemble size (rescaled frames only)
  double mu_mean = 0;   // amplitude-law mean (rescaled frames only)
  double zeta = 0;      // pole drift (pv frame only)

  const char* name() const;
};

/// Complex field samples on a tensor grid, t-major:
/// psi[it * x.size() + ix] = psi(x[ix], t[it]).
struct WaveField {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::complex<double>> psi;
  std::vector<double> mass;  // optional companion samples; empty when absent
  FrameInfo frame;

  std::size_t index(std::size_t it, std::size_t ix) const { return it * x.size() + ix; }
  std::complex<double> at(std::size_t it, std::size_t ix) const { return psi[index(it, ix)]; }
  void validate() const;
};

/// Uniform grid helper: count points from a to b inclusive.
std::vector<double> linspace(double a, double b, int count);

/// CSV with header x,t,re_psi,im_psi,abs_psi[,mass]; floats in shortest
/// round-trip decimal form.  A JSON sidecar <path>.meta.json records the
/// frame and grid metadata.
void write_wavefield_csv(const WaveField& field, const std::string& path);

}  // namespace nlse
