#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cvbs/covariance.hpp"

namespace cvbs {

// Covariance of the ideal dual-homodyne outcome distribution, (Sigma + I)/2.
// Every mode is split against vacuum and both quadratures are read out, which
// adds half a unit of vacuum noise to each diagonal.
Eigen::MatrixXd dual_homodyne_covariance(const GaussianState& state);

// Same covariance computed through the physical arrangement: each mode is
// mixed with a vacuum ancilla on a balanced beamsplitter, X is read on one
// output arm and P on the other. Cross-check for the closed form above.
Eigen::MatrixXd dual_homodyne_covariance_by_splitting(const GaussianState& state);

// K i.i.d. dual-homodyne outcome vectors (x1, p1, ..., xm, pm), drawn from
// the zero-mean Gaussian with covariance (Sigma + I)/2 via a spectral
// factorization. Deterministic per seed.
//
// Sigma and (Sigma + I)/2 must both be positive semidefinite; eigenvalues of
// the sampling covariance in [-1e-12, 0) are clipped to 0 so that finite-K
// covariance estimates, which are PSD by construction but may be mildly
// quantum-unphysical, remain sampleable.
std::vector<Eigen::VectorXd> draw_dual_homodyne_samples(const GaussianState& state,
                                                        long count, std::uint64_t seed);

// xi = s s^T.
Eigen::MatrixXd outer_product_sample(const Eigen::VectorXd& s);

// Running sum of outer-product sample matrices. Merging accumulators is
// associative and commutative, so samples may be accumulated concurrently in
// any partition and combined afterwards.
class SampleMatrixAccumulator {
 public:
  explicit SampleMatrixAccumulator(int modes);

  void add(const Eigen::VectorXd& sample);
  void merge(const SampleMatrixAccumulator& other);

  int modes() const { return modes_; }
  long count() const { return count_; }
  const Eigen::MatrixXd& sum() const { return sum_; }

  // xi_bar = sum / K. Throws on an empty accumulator.
  Eigen::MatrixXd average() const;

 private:
  int modes_;
  long count_ = 0;
  Eigen::MatrixXd sum_;
};

Eigen::MatrixXd sample_average(const SampleMatrixAccumulator& accumulator);

// Covariance estimate reconstructed from a sample average.
struct CovarianceEstimate {
  CovarianceMatrix sigma;
  bool physical = false;
  double min_heisenberg_eigenvalue = 0.0;
};

// Sigma_hat = 2 * xi_bar - I, symmetrized. Finite-sample estimates may be
// mildly unphysical; the estimate is flagged, never silently projected.
CovarianceEstimate reconstruct_covariance(const Eigen::MatrixXd& sample_average);

}  // namespace cvbs
