#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvbs {

// One instruction of a fiber-loop interferometer program. Time bins are
// 0-based in the API; the text format uses 1-based bins.
struct LoopGate {
  enum class Kind { Beamsplitter, Phase };

  Kind kind = Kind::Phase;
  int bin_a = 0;
  int bin_b = 0;      // beamsplitter only
  double theta = 0.0; // beamsplitter mixing angle
  double phi = 0.0;   // beamsplitter pre-phase on bin_a, or the phase angle
};

// A validated gate sequence on a register of time bins. Beamsplitters may
// couple only adjacent bins, |bin_a - bin_b| = 1, which is the coupling a
// single fiber loop of one bin delay can realize.
class LoopProgram {
 public:
  LoopProgram(int bins, std::vector<LoopGate> gates);

  // Text format, one gate per line, 1-based bins, '#' starts a comment:
  //   BS <bin_a> <bin_b> <theta> <phi>
  //   PHASE <bin> <phi>
  // The bin count is not part of the format and must be supplied.
  static LoopProgram parse(std::istream& input, int bins);
  static LoopProgram load(const std::filesystem::path& path, int bins);
  std::string serialize() const;

  int bins() const { return bins_; }
  const std::vector<LoopGate>& gates() const { return gates_; }

 private:
  int bins_;
  std::vector<LoopGate> gates_;
};

// The m x m mode unitary realized by a gate sequence, gates applied in
// program order: U = G_n ... G_2 G_1.
struct CompiledInterferometer {
  Eigen::MatrixXcd unitary;
};

CompiledInterferometer compile_loop_program(const LoopProgram& program);

// Haar-distributed random unitary via complex Ginibre QR with the phase
// convention fixed by the R diagonal. Deterministic per seed.
CompiledInterferometer haar_random_unitary(int modes, std::uint64_t seed);

}  // namespace cvbs
