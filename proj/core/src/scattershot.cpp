#include "cvbs/scattershot.hpp"

#include <cmath>
#include <string>

#include "cvbs/error.hpp"
#include "cvbs/symplectic.hpp"

namespace cvbs {

ScattershotArrangement build_scattershot_state(int sources, double chi,
                                               const Eigen::MatrixXcd& unitary) {
  if (sources < 1) throw ValidationError("source count must be >= 1");
  if (!(chi > 0.0 && chi < 1.0)) {
    throw ValidationError("squeezing parameter chi must lie strictly inside (0, 1)");
  }
  if (unitary.rows() != sources || unitary.cols() != sources) {
    throw ValidationError("unitary must be " + std::to_string(sources) + " x " +
                          std::to_string(sources));
  }
  const double r = std::atanh(chi);
  GaussianState state = vacuum_state(2 * sources);
  for (int k = 0; k < sources; ++k) {
    state = two_mode_squeeze(state, k, sources + k, r);
  }
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(2 * sources, 2 * sources);
  full.block(sources, sources, sources, sources) = unitary;
  state = apply_symplectic(state, unitary_to_symplectic(full));
  return ScattershotArrangement{sources, chi, unitary, std::move(state)};
}

}  // namespace cvbs
