#pragma once

#include <Eigen/Dense>

#include "cvbs/covariance.hpp"

namespace cvbs {

// Real symplectic matrix acting on interleaved quadratures. Construction
// verifies S * Omega * S^T = Omega entrywise to kSymplecticTol.
class SymplecticTransform {
 public:
  explicit SymplecticTransform(const Eigen::MatrixXd& entries);

  static SymplecticTransform identity(int modes);

  int modes() const { return modes_; }
  int dim() const { return 2 * modes_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  int modes_;
  Eigen::MatrixXd entries_;
};

// Max-norm residual of the symplectic condition, max |S Omega S^T - Omega|.
double symplectic_residual(const Eigen::MatrixXd& s);

// Sigma -> S Sigma S^T.
GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s);

// Single-mode squeezer with gain r: x -> exp(-r) x, p -> exp(r) p.
// Positive r squeezes the x quadrature below vacuum.
GaussianState squeeze_single(const GaussianState& state, int mode, double r);

// Two-mode squeezer with gain r on the given pair of modes.
GaussianState two_mode_squeeze(const GaussianState& state, int mode_a, int mode_b, double r);

// Beamsplitter with mixing angle theta and a phase phi applied to mode_a
// before mixing. theta = pi/4, phi = 0 gives the balanced splitter
// [[1, 1], [1, -1]] / sqrt(2) on the mode operators.
GaussianState beamsplitter(const GaussianState& state, int mode_a, int mode_b,
                           double theta, double phi);

// Phase shifter, a -> exp(i phi) a on one mode.
GaussianState phase_shift(const GaussianState& state, int mode, double phi);

// Embeds an m x m mode unitary U (a -> U a) as a 2m x 2m symplectic matrix:
// per entry, the 2 x 2 block [[Re U_jk, -Im U_jk], [Im U_jk, Re U_jk]].
// Rejects input whose unitarity residual max |U^dag U - I| exceeds 1e-10.
SymplecticTransform unitary_to_symplectic(const Eigen::MatrixXcd& u);

// Uniform photon loss with transmissivity eta on every mode:
// Sigma -> eta * Sigma + (1 - eta) * I. Requires 0 <= eta <= 1.
GaussianState apply_uniform_loss(const GaussianState& state, double eta);

}  // namespace cvbs
