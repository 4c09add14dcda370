#include "cmacc/spectral.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "cmacc/errors.hpp"

namespace cmacc {

namespace {

// Roots w[j] = e^{-i 2 pi j / n}. The upper half is mirrored from the lower
// half so that w[n-j] == conj(w[j]) holds bitwise; DFTs of real blocks are
// then conjugate-symmetric exactly, not just to round-off.
ComplexVec unit_roots(int n) {
  ComplexVec w(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int j = 0; j <= half; ++j) {
    const double theta = kTwoPi * j / n;
    w[j] = {std::cos(theta), -std::sin(theta)};
  }
  w[0] = {1.0, 0.0};
  if (n % 2 == 0) w[half] = {-1.0, 0.0};
  for (int j = 1; j < (n + 1) / 2; ++j) {
    w[n - j] = std::conj(w[j]);
  }
  return w;
}

}  // namespace

RealVec extend_impulse_response(const ImpulseResponse& h, int n) {
  const int m = h.memory();
  if (n <= m) {
    throw BlockTooShort("block length " + std::to_string(n) +
                        " must exceed filter memory " + std::to_string(m));
  }
  RealVec out(static_cast<std::size_t>(n), 0.0);
  for (std::size_t t = 0; t < h.taps.size(); ++t) out[t] = h.taps[t];
  return out;
}

ComplexVec dft(const RealVec& x) {
  const int n = static_cast<int>(x.size());
  const ComplexVec w = unit_roots(n);
  ComplexVec out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::complex<double> sum = 0.0;
    for (int t = 0; t < n; ++t) {
      sum += x[t] * w[static_cast<std::size_t>(k) * t % n];
    }
    out[k] = sum;
  }
  return out;
}

RealVec idft(const ComplexVec& x) {
  const int n = static_cast<int>(x.size());
  const ComplexVec w = unit_roots(n);
  RealVec out(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    std::complex<double> sum = 0.0;
    for (int k = 0; k < n; ++k) {
      sum += x[k] * std::conj(w[static_cast<std::size_t>(k) * t % n]);
    }
    out[t] = sum.real() / n;
  }
  return out;
}

RealVec circular_convolve(const RealVec& a, const RealVec& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("circular convolution needs equal lengths, got " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  const int n = static_cast<int>(a.size());
  RealVec out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int t = 0; t < n; ++t) {
      sum += a[t] * b[((k - t) % n + n) % n];
    }
    out[k] = sum;
  }
  return out;
}

RealVec fold_autocorrelation(const NoiseModel& noise, int n) {
  RealVec folded(static_cast<std::size_t>(n), 0.0);
  const int tmax = noise.support();
  for (int s = -(tmax - 1); s <= tmax - 1; ++s) {
    const int idx = ((s % n) + n) % n;
    folded[idx] += noise.autocorr[static_cast<std::size_t>(std::abs(s))];
  }
  return folded;
}

RealVec periodize_autocorrelation(const NoiseModel& noise, int n) {
  const ComplexVec spectrum = dft(fold_autocorrelation(noise, n));
  RealVec eig(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double v = spectrum[k].real();
    if (v < -1e-12) {
      throw IndefinitePeriodization(
          "periodized noise covariance has negative eigenvalue " +
          std::to_string(v) + " at k=" + std::to_string(k) +
          " (n=" + std::to_string(n) + ")");
    }
    eig[k] = v < 0.0 ? 0.0 : v;
  }
  return eig;
}

SubchannelSet decompose(const ChannelSpec& spec, int n) {
  SubchannelSet sub;
  sub.n = n;
  sub.h11 = dft(extend_impulse_response(spec.h11, n));
  sub.h12 = dft(extend_impulse_response(spec.h12, n));
  sub.h21 = dft(extend_impulse_response(spec.h21, n));
  sub.h22 = dft(extend_impulse_response(spec.h22, n));
  sub.noise1 = periodize_autocorrelation(spec.noise1, n);
  sub.noise2 = periodize_autocorrelation(spec.noise2, n);
  return sub;
}

}  // namespace cmacc
