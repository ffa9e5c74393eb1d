#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cvbs/fock.hpp"

namespace cvbs {

// Brute-force reference path for Fock probabilities, independent of the
// hafnian formula: exact closed-form source amplitudes in a truncated Fock
// space, passive evolution by permanent-based transition amplitudes. Desk
// scale only.

struct OracleSqueezer {
  int mode = 0;
  double r = 0.0;
};

struct OracleTwoModeSqueezer {
  int mode_a = 0;
  int mode_b = 0;
  double r = 0.0;
};

// Source bank plus one passive unitary. Squeezers must act on pairwise
// disjoint modes starting from vacuum; untouched modes stay vacuum. An empty
// unitary means identity.
struct OracleCircuit {
  int modes = 0;
  std::vector<OracleSqueezer> squeezers;
  std::vector<OracleTwoModeSqueezer> pair_squeezers;
  Eigen::MatrixXcd unitary;
};

inline constexpr int kOracleMaxModes = 4;
inline constexpr int kOracleMaxCutoff = 8;

// State vector over all occupations with total photons <= cutoff. Amplitudes
// of retained components are exact: the sources have closed-form expansions
// and passive evolution conserves total photon number, so truncation only
// discards mass beyond the cutoff and never perturbs what is kept.
class TruncatedFockState {
 public:
  TruncatedFockState(int modes, int cutoff, std::vector<FockOutcome> basis,
                     Eigen::VectorXcd amplitudes);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  const std::vector<FockOutcome>& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  std::complex<double> amplitude(const FockOutcome& outcome) const;

  // Sum of |amplitude|^2 over the basis; 1 minus this is the mass discarded
  // beyond the cutoff.
  double captured_mass() const;

 private:
  int modes_;
  int cutoff_;
  std::vector<FockOutcome> basis_;
  std::map<FockOutcome, int> index_;
  Eigen::VectorXcd amplitudes_;
};

TruncatedFockState build_oracle_state(const OracleCircuit& circuit, int cutoff);

struct OracleEvaluation {
  double probability = 0.0;
  double truncation_deficit = 0.0;
};

// Squared amplitude of `outcome` plus the truncation deficit of the state.
// Retained amplitudes are exact, so the deficit is diagnostic and does not
// perturb the reported probability. Refuses desk-scale violations
// (modes > 4, cutoff > 8) and outcomes beyond the cutoff.
OracleEvaluation oracle_probability_detailed(const OracleCircuit& circuit,
                                             const FockOutcome& outcome, int cutoff);
double oracle_probability(const OracleCircuit& circuit, const FockOutcome& outcome,
                          int cutoff);

// Permanent by Ryser's inclusion-exclusion with Gray-code updates. Exposed
// for direct testing; the oracle uses it for transition amplitudes.
std::complex<double> permanent(const Eigen::MatrixXcd& matrix);

}  // namespace cvbs
