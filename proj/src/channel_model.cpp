#include "cmacc/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmacc/errors.hpp"
#include "cmacc/numerics.hpp"

namespace cmacc {

namespace {

constexpr int kPsdGridPoints = 4096;
constexpr double kPsdTolerance = 1e-12;

// Unclamped PSD value; validation needs the raw sign.
double raw_psd(const NoiseModel& noise, double omega) {
  double v = noise.autocorr.empty() ? 0.0 : noise.autocorr[0];
  for (std::size_t t = 1; t < noise.autocorr.size(); ++t) {
    v += 2.0 * noise.autocorr[t] * std::cos(omega * static_cast<double>(t));
  }
  return v;
}

void check_taps(const ImpulseResponse& h, const std::string& name) {
  if (h.taps.empty()) {
    throw InvalidTaps(name + ": impulse response must have at least one tap");
  }
  for (double tap : h.taps) {
    if (!std::isfinite(tap)) {
      throw InvalidTaps(name + ": non-finite tap");
    }
  }
}

void check_noise(const NoiseModel& noise, const std::string& name) {
  if (noise.autocorr.empty()) {
    throw InvalidNoise(name + ": empty autocorrelation");
  }
  for (double r : noise.autocorr) {
    if (!std::isfinite(r)) {
      throw InvalidNoise(name + ": non-finite autocorrelation value");
    }
  }
  if (noise.autocorr[0] <= 0.0) {
    throw InvalidNoise(name + ": R[0] must be positive");
  }
  for (int j = 0; j < kPsdGridPoints; ++j) {
    const double omega = kTwoPi * j / kPsdGridPoints;
    if (raw_psd(noise, omega) < -kPsdTolerance) {
      throw InvalidNoise(name + ": power spectral density is negative at omega=" +
                         std::to_string(omega));
    }
  }
}

ImpulseResponse padded(const ImpulseResponse& h, int memory) {
  ImpulseResponse out = h;
  out.taps.resize(static_cast<std::size_t>(memory) + 1, 0.0);
  return out;
}

}  // namespace

std::complex<double> transfer_function(const ImpulseResponse& h, double omega) {
  std::complex<double> sum = 0.0;
  for (std::size_t t = 0; t < h.taps.size(); ++t) {
    sum += h.taps[t] * std::polar(1.0, -omega * static_cast<double>(t));
  }
  return sum;
}

double noise_psd(const NoiseModel& noise, double omega) {
  const double v = raw_psd(noise, omega);
  if (v < 0.0 && v >= -1e-12) return 0.0;
  return v;
}

ChannelSpec validate_spec(const ChannelSpec& spec) {
  check_taps(spec.h11, "h11");
  check_taps(spec.h12, "h12");
  check_taps(spec.h21, "h21");
  check_taps(spec.h22, "h22");
  check_noise(spec.noise1, "noise1");
  check_noise(spec.noise2, "noise2");
  if (!std::isfinite(spec.p1) || spec.p1 < 0.0) {
    throw InvalidPower("p1: power budget must be a nonnegative finite number");
  }
  if (!std::isfinite(spec.p2) || spec.p2 < 0.0) {
    throw InvalidPower("p2: power budget must be a nonnegative finite number");
  }

  int m = std::max({spec.h11.memory(), spec.h12.memory(), spec.h21.memory(),
                    spec.h22.memory(), spec.noise1.support() - 1,
                    spec.noise2.support() - 1});

  ChannelSpec out = spec;
  out.h11 = padded(spec.h11, m);
  out.h12 = padded(spec.h12, m);
  out.h21 = padded(spec.h21, m);
  out.h22 = padded(spec.h22, m);
  return out;
}

}  // namespace cmacc
