#pragma once

#include <Eigen/Dense>

namespace cvbs {

// Quadrature convention: x = a + a^dag, p = -i(a - a^dag), interleaved
// ordering (x1, p1, ..., xm, pm). Vacuum variance is 1 in every quadrature,
// so the vacuum covariance matrix is the identity.

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalityTol = 1e-9;
inline constexpr double kSymplecticTol = 1e-12;

// The symplectic form Omega for `modes` modes: a block diagonal of
// [[0, 1], [-1, 0]] per mode, matching the interleaved ordering.
Eigen::MatrixXd symplectic_form(int modes);

// Real symmetric 2m x 2m quadrature covariance matrix. Construction rejects
// non-square, odd-dimensional and asymmetric input; entries are stored
// explicitly symmetrized.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Eigen::MatrixXd& entries);

  static CovarianceMatrix vacuum(int modes);

  int modes() const { return modes_; }
  int dim() const { return 2 * modes_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int row, int col) const { return entries_(row, col); }

 private:
  int modes_;
  Eigen::MatrixXd entries_;
};

// Smallest eigenvalue of the Hermitian matrix Sigma + i * Omega. Physical
// states have this >= 0 up to numerical tolerance.
double min_heisenberg_eigenvalue(const CovarianceMatrix& sigma);

bool is_physical(const CovarianceMatrix& sigma, double tol = kPhysicalityTol);

// det(Sigma). Pure Gaussian states have determinant exactly 1.
double determinant(const CovarianceMatrix& sigma);

bool is_pure(const CovarianceMatrix& sigma, double tol = 1e-9);

// Zero-mean Gaussian state. The mean vector is pinned to zero throughout the
// library; only covariances evolve.
struct GaussianState {
  CovarianceMatrix cov;

  int modes() const { return cov.modes(); }
  Eigen::VectorXd mean() const { return Eigen::VectorXd::Zero(cov.dim()); }
};

GaussianState vacuum_state(int modes);

// Total mean photon number, tr(Sigma - I) / 4.
double mean_photon_number(const GaussianState& state);

// Smallest quadrature variance, the minimum eigenvalue of Sigma. This is the
// constant b in the multiplicative confidence band; Sigma >= b * I holds by
// construction of the eigenvalue.
double min_quadrature_variance(const GaussianState& state);

}  // namespace cvbs
