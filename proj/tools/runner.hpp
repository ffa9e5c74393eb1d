#pragma once

#include <filesystem>

#include <Eigen/Dense>

#include "config.hpp"
#include "cvbs/covariance.hpp"

namespace cvbs::harness {

// Output file names, one set per experiment directory.
inline constexpr const char* kUnitaryFile = "unitary.csv";
inline constexpr const char* kSigmaTargetFile = "sigma_target.txt";
inline constexpr const char* kSigmaTruthFile = "sigma_truth.txt";
inline constexpr const char* kSigmaEstimateFile = "sigma_est.txt";
inline constexpr const char* kSamplesFile = "samples.csv";
inline constexpr const char* kChernoffFile = "chernoff.json";
inline constexpr const char* kVerificationFile = "verification.json";
inline constexpr const char* kDistributionFile = "distribution.csv";
inline constexpr const char* kFockSamplesFile = "fock_samples.csv";
inline constexpr const char* kTvdFile = "tvd.json";
inline constexpr const char* kOracleCheckFile = "oracle_check.json";

// The simulated instance: the signal-group unitary, the ideal pure state and
// the post-loss truth the measurements see.
struct InstanceStates {
  Eigen::MatrixXcd unitary;
  GaussianState target;
  GaussianState truth;
};

InstanceStates build_instance(const ExperimentConfig& config);

// Stage entry points. Each validates the config, writes its files into
// `out_dir` and returns a process exit code: 0 for success, 1 for a failed
// verification verdict. Contract violations and guard refusals are thrown as
// ValidationError and GuardError.
int run_characterize(const ExperimentConfig& config, const std::filesystem::path& out_dir);
int run_verify(const ExperimentConfig& config, const std::filesystem::path& out_dir);
int run_sample(const ExperimentConfig& config, const std::filesystem::path& out_dir);
int run_oracle_check(const ExperimentConfig& config, const std::filesystem::path& out_dir);
int run_all(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}  // namespace cvbs::harness
