#include "cvbs/covariance.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "cvbs/error.hpp"

namespace cvbs {

Eigen::MatrixXd symplectic_form(int modes) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CovarianceMatrix::CovarianceMatrix(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols()) {
    throw ValidationError("covariance matrix must be square");
  }
  if (entries.rows() == 0 || entries.rows() % 2 != 0) {
    throw ValidationError("covariance matrix dimension must be a positive even number");
  }
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    throw ValidationError("covariance matrix is not symmetric, max asymmetry " +
                          std::to_string(asym));
  }
  modes_ = static_cast<int>(entries.rows()) / 2;
  entries_ = 0.5 * (entries + entries.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

double min_heisenberg_eigenvalue(const CovarianceMatrix& sigma) {
  Eigen::MatrixXcd h = sigma.entries().cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * symplectic_form(sigma.modes());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigenvalue computation failed on Sigma + i*Omega");
  }
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const CovarianceMatrix& sigma, double tol) {
  return min_heisenberg_eigenvalue(sigma) >= -tol;
}

double determinant(const CovarianceMatrix& sigma) {
  return sigma.entries().determinant();
}

bool is_pure(const CovarianceMatrix& sigma, double tol) {
  return std::abs(determinant(sigma) - 1.0) <= tol;
}

GaussianState vacuum_state(int modes) {
  return GaussianState{CovarianceMatrix::vacuum(modes)};
}

double mean_photon_number(const GaussianState& state) {
  return (state.cov.entries().trace() - state.cov.dim()) / 4.0;
}

double min_quadrature_variance(const GaussianState& state) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(state.cov.entries());
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigenvalue computation failed on Sigma");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace cvbs
