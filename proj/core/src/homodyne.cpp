#include "cvbs/homodyne.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cvbs/error.hpp"
#include "cvbs/rng.hpp"
#include "cvbs/symplectic.hpp"

namespace cvbs {

namespace {

constexpr double kClipTol = 1e-12;

void check_psd(const Eigen::MatrixXd& matrix, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (min_eig < -kClipTol * scale) {
    throw ValidationError(std::string(what) + " has negative eigenvalue " +
                          std::to_string(min_eig));
  }
}

}  // namespace

Eigen::MatrixXd dual_homodyne_covariance(const GaussianState& state) {
  const int d = state.cov.dim();
  return 0.5 * (state.cov.entries() + Eigen::MatrixXd::Identity(d, d));
}

Eigen::MatrixXd dual_homodyne_covariance_by_splitting(const GaussianState& state) {
  const int m = state.modes();
  // Embed the state in 2m modes, signal modes first, one vacuum ancilla per
  // signal mode, then mix each pair on a balanced beamsplitter.
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(4 * m, 4 * m);
  big.topLeftCorner(2 * m, 2 * m) = state.cov.entries();
  GaussianState extended{CovarianceMatrix(big)};
  for (int k = 0; k < m; ++k) {
    extended = beamsplitter(extended, k, m + k, 3.14159265358979323846 / 4.0, 0.0);
  }
  // Measured vector: x on the first arm of each pair, p on the second arm.
  const Eigen::MatrixXd& sigma = extended.cov.entries();
  Eigen::MatrixXd result(2 * m, 2 * m);
  std::vector<int> coords(2 * m);
  for (int k = 0; k < m; ++k) {
    coords[2 * k] = 2 * k;                 // x of arm A (mode k)
    coords[2 * k + 1] = 2 * (m + k) + 1;   // p of arm B (mode m+k)
  }
  for (int r = 0; r < 2 * m; ++r) {
    for (int c = 0; c < 2 * m; ++c) {
      result(r, c) = sigma(coords[r], coords[c]);
    }
  }
  return result;
}

std::vector<Eigen::VectorXd> draw_dual_homodyne_samples(const GaussianState& state,
                                                        long count, std::uint64_t seed) {
  if (count < 1) throw ValidationError("sample count K must be >= 1");
  check_psd(state.cov.entries(), "state covariance");
  const Eigen::MatrixXd sampling_cov = dual_homodyne_covariance(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sampling_cov);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigenvalue factorization of the sampling covariance failed");
  }
  const double scale = std::max(1.0, sampling_cov.cwiseAbs().maxCoeff());
  Eigen::VectorXd eigs = solver.eigenvalues();
  for (int k = 0; k < eigs.size(); ++k) {
    if (eigs[k] < 0.0) {
      if (eigs[k] < -kClipTol * scale) {
        throw ValidationError("sampling covariance has negative eigenvalue " +
                              std::to_string(eigs[k]) + ", state rejected as unphysical");
      }
      eigs[k] = 0.0;
    }
  }
  const Eigen::MatrixXd factor =
      solver.eigenvectors() * eigs.cwiseSqrt().asDiagonal();
  const int d = state.cov.dim();
  Rng rng(seed);
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<std::size_t>(count));
  Eigen::VectorXd z(d);
  for (long i = 0; i < count; ++i) {
    for (int k = 0; k < d; ++k) z[k] = rng.gaussian();
    samples.push_back(factor * z);
  }
  return samples;
}

Eigen::MatrixXd outer_product_sample(const Eigen::VectorXd& s) {
  if (s.size() == 0 || s.size() % 2 != 0) {
    throw ValidationError("sample vector length must be a positive even number");
  }
  return s * s.transpose();
}

SampleMatrixAccumulator::SampleMatrixAccumulator(int modes) : modes_(modes) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  sum_ = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
}

void SampleMatrixAccumulator::add(const Eigen::VectorXd& sample) {
  if (sample.size() != 2 * modes_) {
    throw ValidationError("sample vector length " + std::to_string(sample.size()) +
                          " does not match " + std::to_string(modes_) + " modes");
  }
  sum_.noalias() += sample * sample.transpose();
  ++count_;
}

void SampleMatrixAccumulator::merge(const SampleMatrixAccumulator& other) {
  if (other.modes_ != modes_) {
    throw ValidationError("cannot merge accumulators with different mode counts");
  }
  sum_ += other.sum_;
  count_ += other.count_;
}

Eigen::MatrixXd SampleMatrixAccumulator::average() const {
  if (count_ == 0) throw ValidationError("sample average requires K >= 1");
  return sum_ / static_cast<double>(count_);
}

Eigen::MatrixXd sample_average(const SampleMatrixAccumulator& accumulator) {
  return accumulator.average();
}

CovarianceEstimate reconstruct_covariance(const Eigen::MatrixXd& sample_average) {
  if (sample_average.rows() != sample_average.cols() || sample_average.rows() == 0 ||
      sample_average.rows() % 2 != 0) {
    throw ValidationError("sample average must be square with positive even dimension");
  }
  const int d = static_cast<int>(sample_average.rows());
  Eigen::MatrixXd sigma = 2.0 * sample_average - Eigen::MatrixXd::Identity(d, d);
  sigma = 0.5 * (sigma + sigma.transpose().eval());
  CovarianceMatrix cov(sigma);
  const double min_heis = min_heisenberg_eigenvalue(cov);
  return CovarianceEstimate{std::move(cov), min_heis >= -kPhysicalityTol, min_heis};
}

}  // namespace cvbs
