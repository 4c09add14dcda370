#include "cmacc/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cmacc/errors.hpp"

namespace cmacc {

namespace {

double ldlt_logdet(const Eigen::MatrixXd& m) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  double logdet = 0.0;
  const auto d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) <= 0.0) {
      throw NumericError("covariance matrix is not positive definite");
    }
    logdet += std::log(d(i));
  }
  return logdet;
}

// Circulant with the given real, mirror-symmetric eigenvalue profile.
CirculantMatrix circulant_from_eigenvalues(const RealVec& profile) {
  ComplexVec spectrum(profile.size());
  for (std::size_t k = 0; k < profile.size(); ++k) spectrum[k] = profile[k];
  return CirculantMatrix{idft(spectrum)};
}

}  // namespace

Eigen::MatrixXd CirculantMatrix::dense() const {
  const int n = size();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = first_column[((i - j) % n + n) % n];
    }
  }
  return m;
}

ComplexVec CirculantMatrix::eigenvalues() const {
  return dft(first_column);
}

ChannelMatrices build_channel_matrices(const ChannelSpec& spec, int n) {
  ChannelMatrices m;
  m.c11 = CirculantMatrix{extend_impulse_response(spec.h11, n)};
  m.c12 = CirculantMatrix{extend_impulse_response(spec.h12, n)};
  m.c21 = CirculantMatrix{extend_impulse_response(spec.h21, n)};
  m.c22 = CirculantMatrix{extend_impulse_response(spec.h22, n)};
  m.noise1 = CirculantMatrix{fold_autocorrelation(spec.noise1, n)};
  m.noise2 = CirculantMatrix{fold_autocorrelation(spec.noise2, n)};
  return m;
}

RateBounds gaussian_mi_terms(const ChannelSpec& spec, int n, const Allocation& alloc) {
  if (alloc.n != n) {
    throw DimensionMismatch("allocation n=" + std::to_string(alloc.n) +
                            " does not match block length " + std::to_string(n));
  }
  const ChannelMatrices mats = build_channel_matrices(spec, n);

  const Eigen::MatrixXd sz1 = mats.noise1.dense();
  const Eigen::MatrixXd sz2 = mats.noise2.dense();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(sz1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(sz2, Eigen::EigenvaluesOnly);
    if (es1.eigenvalues().minCoeff() < 1e-12 || es2.eigenvalues().minCoeff() < 1e-12) {
      throw SingularNoise("noise covariance has an eigenvalue below 1e-12");
    }
  }

  // Input covariances from the per-frequency common/private split:
  // full power P_q, cross sqrt(a1 a2 P1 P2); conditioning on the common part
  // replaces P_q by (1-a_q) P_q and removes the cross block.
  RealVec prof1(n), prof2(n), prof_cross(n), prof1_cond(n), prof2_cond(n);
  for (int k = 0; k < n; ++k) {
    prof1[k] = alloc.p1[k];
    prof2[k] = alloc.p2[k];
    prof_cross[k] = std::sqrt(alloc.a1[k] * alloc.a2[k] * alloc.p1[k] * alloc.p2[k]);
    prof1_cond[k] = (1.0 - alloc.a1[k]) * alloc.p1[k];
    prof2_cond[k] = (1.0 - alloc.a2[k]) * alloc.p2[k];
  }
  const Eigen::MatrixXd s1 = circulant_from_eigenvalues(prof1).dense();
  const Eigen::MatrixXd s2 = circulant_from_eigenvalues(prof2).dense();
  const Eigen::MatrixXd s12 = circulant_from_eigenvalues(prof_cross).dense();
  const Eigen::MatrixXd s1c = circulant_from_eigenvalues(prof1_cond).dense();
  const Eigen::MatrixXd s2c = circulant_from_eigenvalues(prof2_cond).dense();

  Eigen::MatrixXd stacked(2 * n, 2 * n);
  stacked << s1, s12, s12.transpose(), s2;
  if (!psd_check(stacked)) {
    throw InvalidAllocation("joint input covariance is not positive semidefinite");
  }

  const Eigen::MatrixXd c11 = mats.c11.dense();
  const Eigen::MatrixXd c12 = mats.c12.dense();
  const Eigen::MatrixXd c21 = mats.c21.dense();
  const Eigen::MatrixXd c22 = mats.c22.dense();

  const double logdet_z1 = ldlt_logdet(sz1);
  const double logdet_z2 = ldlt_logdet(sz2);
  const double scale = 1.0 / (2.0 * n * std::numbers::ln2);
  const auto term = [&](const Eigen::MatrixXd& signal, const Eigen::MatrixXd& sz,
                        double logdet_z) {
    // Symmetrize against accumulation round-off before factorizing.
    const Eigen::MatrixXd total = sz + 0.5 * (signal + signal.transpose());
    return (ldlt_logdet(total) - logdet_z) * scale;
  };

  RateBounds b;
  b.t[0] = term(c11 * s1c * c11.transpose(), sz1, logdet_z1);
  b.t[1] = term(c12 * s1c * c12.transpose(), sz2, logdet_z2);
  b.t[2] = term(c21 * s2c * c21.transpose(), sz1, logdet_z1);
  b.t[3] = term(c22 * s2c * c22.transpose(), sz2, logdet_z2);
  b.t[4] = term(c11 * s1c * c11.transpose() + c21 * s2c * c21.transpose(), sz1,
                logdet_z1);
  b.t[5] = term(c12 * s1c * c12.transpose() + c22 * s2c * c22.transpose(), sz2,
                logdet_z2);
  b.t[6] = term(c11 * s1 * c11.transpose() + c21 * s2 * c21.transpose() +
                    c11 * s12 * c21.transpose() + c21 * s12.transpose() * c11.transpose(),
                sz1, logdet_z1);
  b.t[7] = term(c12 * s1 * c12.transpose() + c22 * s2 * c22.transpose() +
                    c12 * s12 * c22.transpose() + c22 * s12.transpose() * c12.transpose(),
                sz2, logdet_z2);
  for (int j = 0; j < 4; ++j) {
    b.binding[j] = b.t[2 * j] <= b.t[2 * j + 1] ? 1 : 2;
  }
  return b;
}

bool psd_check(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-9;
}

}  // namespace cmacc
