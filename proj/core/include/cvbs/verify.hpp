#pragma once

#include <string>

#include "cvbs/covariance.hpp"
#include "cvbs/fock.hpp"

namespace cvbs {

// Fidelity between a pure Gaussian target and an arbitrary zero-mean Gaussian
// state with covariance Sigma_est: F = 2^m / sqrt(det(Sigma_target + Sigma_est)).
// For a pure target this equals <psi_target| rho_est |psi_target>. The target
// must satisfy det(Sigma_target) = 1 to 1e-6.
double gaussian_fidelity_pure_target(const CovarianceMatrix& sigma_target,
                                     const CovarianceMatrix& sigma_est);

// Two companions of the fidelity: the certified quantity 1 - F and the
// Fuchs-van de Graaf trace-distance upper bound sqrt(1 - F).
struct TraceDistanceBound {
  double one_minus_f = 0.0;
  double fvdg = 0.0;
};

TraceDistanceBound trace_distance_bound(double fidelity);

// Total variation distance between two truncated outcome distributions over
// the union of their supports, with the off-cutoff mass difference bounded
// separately: the true TVD lies in [within_cutoff, total()].
struct TotalVariationResult {
  double within_cutoff = 0.0;
  double residual_bound = 0.0;

  double total() const { return within_cutoff + residual_bound; }
};

TotalVariationResult total_variation(const OutcomeDistribution& p,
                                     const OutcomeDistribution& q);

// Verification sample budget: ceil(calibration * m^4). The quartic scaling is
// the continuous-variable protocol's cost; the constant is configuration.
long verification_sample_budget(int modes, double calibration = 1.0);

// Nearest physical covariance by iterated eigenvalue flooring of
// Sigma + i*Omega at zero, with the Frobenius size of the change reported.
struct PhysicalityProjection {
  CovarianceMatrix sigma;
  double frobenius_perturbation = 0.0;
};

PhysicalityProjection project_to_physical(const CovarianceMatrix& sigma);

struct VerificationReport {
  double fidelity = 0.0;
  double one_minus_f = 0.0;
  double fvdg_bound = 0.0;
  double epsilon = 0.0;
  bool pass = false;
  long sample_budget = 0;
  double projection_perturbation = 0.0;
};

// Certifies an estimate against a pure target: projects a mildly unphysical
// estimate, computes the fidelity and bounds, and renders the verdict,
// which is exactly (1 - F < epsilon).
VerificationReport certify(const CovarianceMatrix& sigma_target,
                           const CovarianceMatrix& sigma_est, double epsilon,
                           double budget_calibration = 1.0);

// Flat JSON object with keys fidelity, one_minus_F, fvdg_bound, epsilon,
// pass, sample_budget, projection_perturbation.
std::string to_json(const VerificationReport& report);

}  // namespace cvbs
