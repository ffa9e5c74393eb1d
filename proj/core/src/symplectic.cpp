#include "cvbs/symplectic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cvbs/error.hpp"

namespace cvbs {

namespace {

void check_mode_index(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.modes()) {
    throw ValidationError("mode index " + std::to_string(mode) + " out of range for " +
                          std::to_string(state.modes()) + " modes");
  }
}

// Applies the local symplectic `block` on the quadrature coordinates `coords`
// of a copy of Sigma and returns the result. Equivalent to conjugating by the
// full matrix that is identity elsewhere.
Eigen::MatrixXd conjugate_local(const Eigen::MatrixXd& sigma,
                                const std::vector<int>& coords,
                                const Eigen::MatrixXd& block) {
  const int n = static_cast<int>(coords.size());
  Eigen::MatrixXd result = sigma;
  Eigen::MatrixXd rows(n, sigma.cols());
  for (int r = 0; r < n; ++r) rows.row(r) = result.row(coords[r]);
  rows = block * rows;
  for (int r = 0; r < n; ++r) result.row(coords[r]) = rows.row(r);
  Eigen::MatrixXd cols(sigma.rows(), n);
  for (int c = 0; c < n; ++c) cols.col(c) = result.col(coords[c]);
  cols = cols * block.transpose();
  for (int c = 0; c < n; ++c) result.col(coords[c]) = cols.col(c);
  return result;
}

GaussianState with_cov(Eigen::MatrixXd sigma) {
  sigma = 0.5 * (sigma + sigma.transpose().eval());
  return GaussianState{CovarianceMatrix(sigma)};
}

}  // namespace

SymplecticTransform::SymplecticTransform(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0 || entries.rows() % 2 != 0) {
    throw ValidationError("symplectic matrix dimension must be a positive even number");
  }
  const double residual = symplectic_residual(entries);
  if (residual > kSymplecticTol) {
    throw ValidationError("matrix is not symplectic, residual " + std::to_string(residual));
  }
  modes_ = static_cast<int>(entries.rows()) / 2;
  entries_ = entries;
}

SymplecticTransform SymplecticTransform::identity(int modes) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  return SymplecticTransform(Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

double symplectic_residual(const Eigen::MatrixXd& s) {
  const int modes = static_cast<int>(s.rows()) / 2;
  const Eigen::MatrixXd omega = symplectic_form(modes);
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s) {
  if (s.modes() != state.modes()) {
    throw ValidationError("symplectic transform acts on " + std::to_string(s.modes()) +
                          " modes, state has " + std::to_string(state.modes()));
  }
  Eigen::MatrixXd sigma = s.entries() * state.cov.entries() * s.entries().transpose();
  return with_cov(std::move(sigma));
}

GaussianState squeeze_single(const GaussianState& state, int mode, double r) {
  check_mode_index(state, mode);
  Eigen::Matrix2d block;
  block << std::exp(-r), 0.0, 0.0, std::exp(r);
  return with_cov(conjugate_local(state.cov.entries(), {2 * mode, 2 * mode + 1}, block));
}

GaussianState two_mode_squeeze(const GaussianState& state, int mode_a, int mode_b, double r) {
  check_mode_index(state, mode_a);
  check_mode_index(state, mode_b);
  if (mode_a == mode_b) throw ValidationError("two-mode squeezer needs two distinct modes");
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  Eigen::Matrix4d block;
  block << ch, 0.0, sh, 0.0,
           0.0, ch, 0.0, -sh,
           sh, 0.0, ch, 0.0,
           0.0, -sh, 0.0, ch;
  const std::vector<int> coords = {2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1};
  return with_cov(conjugate_local(state.cov.entries(), coords, block));
}

namespace {

// 2 x 2 complex beamsplitter matrix on the mode operators, phase on the
// first mode applied before mixing.
Eigen::Matrix2cd beamsplitter_mode_matrix(double theta, double phi) {
  const std::complex<double> pre = std::exp(std::complex<double>(0.0, phi));
  Eigen::Matrix2cd mix;
  mix << std::cos(theta), std::sin(theta),
         std::sin(theta), -std::cos(theta);
  Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
  phase(0, 0) = pre;
  return mix * phase;
}

// Expands an n x n mode-operator matrix to its 2n x 2n quadrature form.
Eigen::MatrixXd mode_matrix_to_quadrature(const Eigen::MatrixXcd& u) {
  const int n = static_cast<int>(u.rows());
  Eigen::MatrixXd s(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double re = u(j, k).real();
      const double im = u(j, k).imag();
      s(2 * j, 2 * k) = re;
      s(2 * j, 2 * k + 1) = -im;
      s(2 * j + 1, 2 * k) = im;
      s(2 * j + 1, 2 * k + 1) = re;
    }
  }
  return s;
}

}  // namespace

GaussianState beamsplitter(const GaussianState& state, int mode_a, int mode_b,
                           double theta, double phi) {
  check_mode_index(state, mode_a);
  check_mode_index(state, mode_b);
  if (mode_a == mode_b) throw ValidationError("beamsplitter needs two distinct modes");
  const Eigen::MatrixXd block = mode_matrix_to_quadrature(beamsplitter_mode_matrix(theta, phi));
  const std::vector<int> coords = {2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1};
  return with_cov(conjugate_local(state.cov.entries(), coords, block));
}

GaussianState phase_shift(const GaussianState& state, int mode, double phi) {
  check_mode_index(state, mode);
  Eigen::Matrix2d block;
  block << std::cos(phi), -std::sin(phi),
           std::sin(phi), std::cos(phi);
  return with_cov(conjugate_local(state.cov.entries(), {2 * mode, 2 * mode + 1}, block));
}

SymplecticTransform unitary_to_symplectic(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw ValidationError("mode unitary must be square and non-empty");
  }
  const double residual =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    throw ValidationError("matrix is not unitary, residual " + std::to_string(residual));
  }
  return SymplecticTransform(mode_matrix_to_quadrature(u));
}

GaussianState apply_uniform_loss(const GaussianState& state, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ValidationError("loss transmissivity must lie in [0, 1]");
  }
  Eigen::MatrixXd sigma = eta * state.cov.entries();
  sigma += (1.0 - eta) * Eigen::MatrixXd::Identity(state.cov.dim(), state.cov.dim());
  return with_cov(std::move(sigma));
}

}  // namespace cvbs
