#ifndef CMACC_ORACLE_HPP
#define CMACC_ORACLE_HPP

#include <Eigen/Dense>

#include "cmacc/rate_region.hpp"

namespace cmacc {

// Circulant operator generated by its first column: A(i,j) = c[(i-j) mod n].
// Eigenvalues are the DFT of the first column.
struct CirculantMatrix {
  RealVec first_column;

  int size() const { return static_cast<int>(first_column.size()); }
  Eigen::MatrixXd dense() const;
  ComplexVec eigenvalues() const;
};

// The n-block channel in matrix form: four link operators plus the two noise
// covariances (circulants of the folded autocorrelations).
struct ChannelMatrices {
  CirculantMatrix c11, c12, c21, c22;
  CirculantMatrix noise1, noise2;
};

ChannelMatrices build_channel_matrices(const ChannelSpec& spec, int n);

// Independent evaluation of the eight mutual-information terms: builds the
// explicit n x n Gaussian covariances induced by the common/private input
// split and evaluates each term as a log-determinant ratio via dense
// symmetric factorization. Intended for n <= 128; the closed form scales
// instead.
RateBounds gaussian_mi_terms(const ChannelSpec& spec, int n, const Allocation& alloc);

// Minimum eigenvalue >= -1e-9. Input must be symmetric.
bool psd_check(const Eigen::MatrixXd& m);

}  // namespace cmacc

#endif  // CMACC_ORACLE_HPP
