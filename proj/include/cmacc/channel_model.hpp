#ifndef CMACC_CHANNEL_MODEL_HPP
#define CMACC_CHANNEL_MODEL_HPP

#include <complex>
#include <vector>

namespace cmacc {

// FIR link filter h_0..h_m.
struct ImpulseResponse {
  std::vector<double> taps;

  int memory() const { return static_cast<int>(taps.size()) - 1; }
};

// Stationary Gaussian noise given by its autocorrelation R[0..t_max-1]
// (two-sided by R[-t] = R[t]).
struct NoiseModel {
  std::vector<double> autocorr;

  int support() const { return static_cast<int>(autocorr.size()); }
};

// The two-user linear Gaussian compound MAC with common message: four FIR
// links (h_pq carries sender p into receiver q), one noise process per
// receiver, and the two average power budgets.
struct ChannelSpec {
  ImpulseResponse h11, h12, h21, h22;
  NoiseModel noise1, noise2;
  double p1 = 0.0;
  double p2 = 0.0;

  // Common memory after validation (all four filters padded to equal length).
  int memory() const { return h11.memory(); }
};

// H(omega) = sum_t h_t e^{-j omega t}; 2*pi-periodic.
std::complex<double> transfer_function(const ImpulseResponse& h, double omega);

// N(omega) = sum over |t| < t_max of R[|t|] e^{-j omega t}, a real even
// function. Round-off negatives above -1e-12 clamp to zero.
double noise_psd(const NoiseModel& noise, double omega);

// Returns a copy with all four impulse responses zero-padded to the common
// memory max(individual memories, t_max - 1), after checking taps are finite,
// budgets nonnegative, and both noise PSDs nonnegative on a dense grid.
ChannelSpec validate_spec(const ChannelSpec& spec);

}  // namespace cmacc

#endif  // CMACC_CHANNEL_MODEL_HPP
