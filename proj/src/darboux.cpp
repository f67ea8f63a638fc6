#include "nlse/darboux.hpp"

#include <cmath>

#include "nlse/errors.hpp"
#include "nlse/mpcomplex.hpp"

namespace nlse {

PrecisionPolicy PrecisionPolicy::fixed_bits(int mantissa_bits) {
  if (mantissa_bits < 53) throw ValidationError("mantissa width below 53 bits");
  return {Mode::fixed, mantissa_bits, mantissa_bits};
}

PrecisionPolicy PrecisionPolicy::escalating(int max_mantissa_bits) {
  if (max_mantissa_bits < 53) throw ValidationError("mantissa width below 53 bits");
  return {Mode::escalate, 53, max_mantissa_bits};
}

std::vector<int> precision_ladder(int max_bits) {
  if (max_bits < 53) throw ValidationError("mantissa width below 53 bits");
  std::vector<int> rungs;
  for (int b : {53, 128, 256, 512})
    if (b <= max_bits) rungs.push_back(b);
  if (rungs.back() != max_bits) rungs.push_back(max_bits);
  return rungs;
}

namespace {

/// One full dressing pass at a point.  The seed spinor is the conjugated
/// free solution applied to (1, p_n); it is rescaled by whichever phase
/// factor keeps both components at modulus <= max(1, |p|), so no exp ever
/// overflows.  Each chained vector is renormalized to unit length: the
/// projector in the dressing factor and the field update are scale
/// invariant, and unit norm keeps the chain inside the representable range
/// at any precision.
template <class F>
DressingState dress_point_impl(const F& field, const SpectralData& data, double x, double t,
                               bool keep_state) {
  using C = typename F::C;
  const int N = data.n();
  std::vector<C> q1, q2;
  q1.reserve(static_cast<std::size_t>(N));
  q2.reserve(static_cast<std::size_t>(N));
  const C cx = field.lift(x);
  const C ct = field.lift(t);
  C psi = field.lift(0.0);

  DressingState state;
  if (keep_state) state.q.reserve(static_cast<std::size_t>(N));

  for (int n = 0; n < N; ++n) {
    const std::complex<double> lam = data.lambda[static_cast<std::size_t>(n)];
    const C lamn = field.lift(lam);
    // theta(lambda_n) = lambda_n x + lambda_n^2 t; the conjugated free
    // solution at conj(lambda_n) has components (e^{i theta}, p e^{-i theta}).
    const C th = lamn * cx + lamn * lamn * ct;
    C v1 = field.lift(1.0), v2 = field.lift(1.0);
    const C p = field.lift(data.p[static_cast<std::size_t>(n)]);
    if (imag_approx(th) >= 0) {
      v1 = exp_i(th + th);  // modulus e^{-2 Im theta} <= 1
      v2 = p;
    } else {
      v2 = p * exp_i(-(th + th));
    }

    // The whole spinor is the conjugate of the chained free solution, so each
    // factor is the conjugated dressing matrix
    //   I + (conj lambda_j - lambda_j)/(lambda_n - conj lambda_j) q_j q_j^dag,
    // acting through the Hermitian inner product <q_j, v>.
    for (int j = 0; j < n; ++j) {
      const std::complex<double> lamj = data.lambda[static_cast<std::size_t>(j)];
      const C cfac = field.lift(std::complex<double>(0.0, -2.0 * lamj.imag())) /
                     (lamn - field.lift(std::conj(lamj)));
      const C s = conj(q1[static_cast<std::size_t>(j)]) * v1 +
                  conj(q2[static_cast<std::size_t>(j)]) * v2;
      v1 += cfac * s * q1[static_cast<std::size_t>(j)];
      v2 += cfac * s * q2[static_cast<std::size_t>(j)];
    }

    const C nrm = squared_modulus(v1) + squared_modulus(v2);
    const C inv = field.lift(1.0) / sqrt_real(nrm);
    v1 = v1 * inv;
    v2 = v2 * inv;
    if (!is_finite(v1) || !is_finite(v2))
      throw NumericalError("non-finite dressing spinor at step " + std::to_string(n + 1) + " of " +
                           std::to_string(N));

    // 2i(lambda_n - conj lambda_n) = -4 Im lambda_n, and |q| = 1.
    psi += field.lift(-4.0 * lam.imag()) * conj(v1) * v2;

    if (keep_state)
      state.q.push_back({to_standard(v1), to_standard(v2)});
    q1.push_back(std::move(v1));
    q2.push_back(std::move(v2));
  }
  if (!is_finite(psi)) throw NumericalError("non-finite dressed field value");
  state.psi = to_standard(psi);
  return state;
}

std::complex<double> evaluate_at_bits(const SpectralData& data, double x, double t, int bits) {
  if (bits == 53) return dress_point_impl(DoubleField{}, data, x, t, false).psi;
  return dress_point_impl(MpField{bits}, data, x, t, false).psi;
}

}  // namespace

std::array<std::complex<double>, 2> chi_apply(const std::array<std::complex<double>, 2>& q,
                                              std::complex<double> lambda_j,
                                              std::complex<double> w,
                                              const std::array<std::complex<double>, 2>& v) {
  const std::complex<double> nrm(std::norm(q[0]) + std::norm(q[1]), 0.0);
  const std::complex<double> cfac =
      (lambda_j - std::conj(lambda_j)) / (w - lambda_j) * (q[0] * v[0] + q[1] * v[1]) / nrm;
  return {v[0] + cfac * std::conj(q[0]), v[1] + cfac * std::conj(q[1])};
}

std::complex<double> darboux_evaluate(const SpectralData& data, double x, double t,
                                      PrecisionPolicy policy) {
  data.validate();
  if (policy.mode == PrecisionPolicy::Mode::fixed) {
    if (policy.bits < 53) throw ValidationError("mantissa width below 53 bits");
    return evaluate_at_bits(data, x, t, policy.bits);
  }
  for (int bits : precision_ladder(policy.max_bits)) {
    try {
      return evaluate_at_bits(data, x, t, bits);
    } catch (const NumericalError&) {
      // escalate to the next rung
    }
  }
  throw PrecisionExhaustedError("dressing chain non-finite even at " +
                                std::to_string(policy.max_bits) + " mantissa bits");
}

DressingState dress_point(const SpectralData& data, double x, double t) {
  data.validate();
  return dress_point_impl(DoubleField{}, data, x, t, true);
}

double extremal_peak(const SpectralData& data) {
  double s = 0;
  for (const auto& lam : data.lambda) s += lam.imag();
  return 2.0 * s;
}

int calibrate_bits(const SpectralData& data, double rel_tol, int max_bits) {
  data.validate();
  const double peak = extremal_peak(data);
  for (int bits : precision_ladder(max_bits)) {
    try {
      const double got = std::abs(evaluate_at_bits(data, 0.0, 0.0, bits));
      if (std::abs(got - peak) <= rel_tol * peak) return bits;
    } catch (const NumericalError&) {
      // fall through to the next rung
    }
  }
  throw PrecisionExhaustedError("peak identity unmet at " + std::to_string(max_bits) +
                                " mantissa bits (n = " + std::to_string(data.n()) + ")");
}

WaveField evaluate_field(const SpectralData& data, const std::vector<double>& xs,
                         const std::vector<double>& ts, PrecisionPolicy policy, Exec exec) {
  data.validate();
  WaveField field;
  field.x = xs;
  field.t = ts;
  field.psi.assign(xs.size() * ts.size(), {0, 0});
  field.validate();
  parallel_for(exec, field.psi.size(), [&](std::size_t idx) {
    const std::size_t it = idx / xs.size();
    const std::size_t ix = idx % xs.size();
    field.psi[idx] = darboux_evaluate(data, xs[ix], ts[it], policy);
  });
  return field;
}

WaveField evaluate_field_serial(const SpectralData& data, const std::vector<double>& xs,
                                const std::vector<double>& ts, PrecisionPolicy policy) {
  return evaluate_field(data, xs, ts, policy, Exec::serial);
}

}  // namespace nlse
