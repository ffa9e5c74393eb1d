#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cvbs/covariance.hpp"

namespace cvbs {

// Photon counts per mode.
using FockOutcome = std::vector<int>;

// Probabilities for every outcome with total photons <= cutoff, in
// lexicographic outcome order. `mass` is the sum of retained probabilities;
// the residual 1 - mass lives beyond the cutoff.
struct OutcomeDistribution {
  int cutoff = 0;
  std::map<FockOutcome, double> probabilities;
  double mass = 0.0;
};

// Scattershot photon statistics parameters: n detected photons out of m
// sources with per-source squeezing parameter chi.
struct ScattershotParams {
  int detected = 0;
  int sources = 0;
  double chi = 0.0;
};

// All occupation vectors over `modes` modes with total <= cutoff, in
// lexicographic order.
std::vector<FockOutcome> enumerate_outcomes(int modes, int cutoff);

// Fock probabilities of one Gaussian state. The constructor performs the
// state-dependent linear algebra once; probability() then costs one hafnian
// of a matrix of side twice the total photon number.
class FockProbabilityEvaluator {
 public:
  explicit FockProbabilityEvaluator(const GaussianState& state);

  int modes() const { return modes_; }

  double probability(const FockOutcome& outcome) const;

 private:
  int modes_;
  double sqrt_det_q_;
  Eigen::MatrixXcd reduced_kernel_;
};

// Pr(outcome) for a zero-mean Gaussian state, by the hafnian formula.
double outcome_probability(const GaussianState& state, const FockOutcome& outcome);

// Probabilities of all outcomes with total photons <= cutoff.
OutcomeDistribution enumerate_distribution(const GaussianState& state, int cutoff);

// Smallest cutoff whose estimated captured mass reaches `target_mass`. The
// estimate models each mode as thermal with the state's per-mode mean photon
// number; it guides enumeration and is not a guarantee. Throws GuardError
// when no cutoff up to `hard_cap` reaches the target.
int default_cutoff(const GaussianState& state, double target_mass = 0.999, int hard_cap = 16);

// N i.i.d. Fock outcomes by inverse CDF over the enumerated distribution,
// renormalized by its captured mass. Deterministic per seed. Refuses when the
// captured mass at `cutoff` is below 0.999.
std::vector<FockOutcome> sample_fock(const GaussianState& state, long count, int cutoff,
                                     std::uint64_t seed);
std::vector<FockOutcome> sample_fock(const OutcomeDistribution& distribution, long count,
                                     std::uint64_t seed);

// P(n) = C(m, n) chi^(2n) (1 - chi^2)^m: probability that n of the m
// scattershot sources herald a photon.
double scattershot_success_probability(const ScattershotParams& params);
double scattershot_success_probability(int detected, int sources, double chi);

// chi maximizing the scattershot success probability, sqrt(n / (m + n)).
double optimal_chi(int detected, int sources);

// Squeezing strength conversions: r = artanh(chi), dB = 10 log10(e^(2r)).
double chi_to_db(double chi);
double db_to_chi(double db);

}  // namespace cvbs
