#ifndef CMACC_SPECTRAL_HPP
#define CMACC_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "cmacc/channel_model.hpp"
#include "cmacc/numerics.hpp"

namespace cmacc {

using RealVec = std::vector<double>;
using ComplexVec = std::vector<std::complex<double>>;

// The n-block circular channel after DFT decomposition: one scalar compound
// MAC per frequency omega_k = 2*pi*k/n. Gains are conjugate-symmetric in k,
// noise samples are symmetric and nonnegative.
struct SubchannelSet {
  int n = 0;
  ComplexVec h11, h12, h21, h22;  // per-k complex link gains
  RealVec noise1, noise2;         // per-k noise spectrum samples

  double omega(int k) const { return kTwoPi * k / n; }
};

// (h_0, ..., h_m, 0, ..., 0) of length n. Throws BlockTooShort if n <= m.
RealVec extend_impulse_response(const ImpulseResponse& h, int n);

// Unnormalized forward DFT of a real block. For real input the output is
// bitwise conjugate-symmetric: X[k] == conj(X[n-k]).
ComplexVec dft(const RealVec& x);

// Inverse with 1/n normalization; returns the real part.
RealVec idft(const ComplexVec& x);

// c_k = sum_t a_t b_{(k-t) mod n}. Throws LengthMismatch.
RealVec circular_convolve(const RealVec& a, const RealVec& b);

// One period of the two-sided autocorrelation folded modulo n.
RealVec fold_autocorrelation(const NoiseModel& noise, int n);

// Eigenvalues of the periodized noise covariance (DFT of the folded
// autocorrelation). Values below -1e-12 throw IndefinitePeriodization;
// round-off negatives clamp to zero.
RealVec periodize_autocorrelation(const NoiseModel& noise, int n);

// Full decomposition of a validated spec into n parallel sub-channels.
SubchannelSet decompose(const ChannelSpec& spec, int n);

}  // namespace cmacc

#endif  // CMACC_SPECTRAL_HPP
