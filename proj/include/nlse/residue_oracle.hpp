#pragma once

#include <complex>

#include "nlse/spectral_data.hpp"

namespace nlse {

/// Result of the pole-expansion route to the field value: the potential,
/// its companion tail-mass value, a symmetry defect of the first-moment
/// matrix, and the reciprocal condition estimate of the linear system.
struct OracleResult {
  std::complex<double> psi{0, 0};
  std::complex<double> m{0, 0};  // imaginary part should vanish
  double symmetry_defect = 0;
  double rcond = 0;
};

/// Evaluate psi(x, t) by writing the pole ansatz for the meromorphic matrix
/// with residue conditions at each eigenvalue pair, eliminating to an n x n
/// complex linear system, and reading the field off the large-z moment.
/// Shares nothing with the dressing recursion beyond the spectral data, so
/// the two routes cross-validate each other.  Uses norming constants from
/// the data (or the dictionary when only p is stored); practical at
/// binary64 for small ensembles.
OracleResult residue_oracle_evaluate(const SpectralData& data, double x, double t);

}  // namespace nlse
