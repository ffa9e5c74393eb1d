#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cvbs::harness {

// One experiment instance. `modes` counts sources: the simulated state has
// `modes` modes for squeezed input and 2*modes for scattershot (heralds plus
// signals). The unitary always acts on the signal group.
struct ExperimentConfig {
  int modes = 1;
  std::string input = "squeezed";    // squeezed | scattershot
  std::vector<double> squeezing = {0.5};
  double chi = 1.0 / 3.0;
  std::string unitary = "identity";  // identity | haar | program:<path> | csv:<path>
  std::optional<std::uint64_t> haar_seed;
  double loss_eta = 1.0;
  long homodyne_samples = 10000;
  double chernoff_eta = 0.2;
  double chernoff_delta = 0.01;
  double epsilon = 0.05;
  int cutoff = -1;                   // -1 stands for auto
  long fock_samples = 100000;
  double budget_calibration = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Defaults overlaid with the key=value assignments in `path`. Unknown keys
// are rejected.
ExperimentConfig load_config_file(const std::filesystem::path& path);

// Canonical key=value form of the experiment-defining fields, sorted by key,
// 17-significant-digit numbers. The haar seed is resolved (explicit or
// derived from the master seed) and file-based unitaries contribute a hash of
// their content, so equal serializations mean equal experiments.
std::string canonical_serialization(const ExperimentConfig& config);

// FNV-1a hex digest of the canonical serialization. Stamped into every
// output file; stages refuse to combine files with mismatched hashes.
std::string config_hash(const ExperimentConfig& config);

// Resolved haar seed: the explicit one if set, else derived from the master
// seed on the haar stream.
std::uint64_t resolved_haar_seed(const ExperimentConfig& config);

}  // namespace cvbs::harness
