#pragma once

#include <Eigen/Dense>

#include "cvbs/covariance.hpp"

namespace cvbs {

// Scattershot source bank: m two-mode squeezers, one half of each pair kept
// as a herald, the other half sent through an m x m unitary. Modes 0..m-1
// are the heralds, modes m..2m-1 the signals.
struct ScattershotArrangement {
  int sources = 0;
  double chi = 0.0;
  Eigen::MatrixXcd unitary;
  GaussianState state;
};

// Builds the 2m-mode Gaussian state of the arrangement. Each pair is squeezed
// with gain r = artanh(chi), then the signal group passes through `unitary`.
// Requires 0 < chi < 1 and a unitary matching the source count.
ScattershotArrangement build_scattershot_state(int sources, double chi,
                                               const Eigen::MatrixXcd& unitary);

}  // namespace cvbs
