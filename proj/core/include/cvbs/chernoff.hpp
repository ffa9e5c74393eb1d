#pragma once

#include <string>

#include "cvbs/covariance.hpp"

namespace cvbs {

// Failure probability of the operator Chernoff certificate after K samples
// on m modes with deviation parameter eta: 8m * exp(-K eta^2 / (8 ln 2)).
// The success guarantee is the complement. Requires 0 < eta < 1/2.
double chernoff_failure_bound(int modes, long samples, double eta);

// Smallest K with chernoff_failure_bound(m, K, eta) <= delta. The closed form
// is ceil((8 ln 2 / eta^2) * ln(8m / delta)); the result is adjusted so the
// inversion is exact: bound(K) <= delta < bound(K - 1).
long required_sample_count(int modes, double eta, double delta);

// Outcome of the multiplicative confidence-band test.
struct ChernoffReport {
  int m = 0;
  long K = 0;
  double eta = 0.0;
  double b = 0.0;
  double failure_bound = 0.0;
  bool band_ok = false;
};

// Checks (1 - eta(1 + 1/b)) Sigma <= Sigma_hat <= (1 + eta(1 + 1/b)) Sigma in
// the operator order, where b is a floor with Sigma >= b I. Containment is
// decided by the extreme eigenvalues of the two difference matrices with
// tolerance 1e-10. `samples` only fills the K field of the report; pass the
// count that produced Sigma_hat, or 0 when unknown.
ChernoffReport multiplicative_band_check(const CovarianceMatrix& sigma_true,
                                         const CovarianceMatrix& sigma_hat,
                                         double eta, double b, long samples = 0);

// Flat JSON object with keys m, K, eta, b, failure_bound, band_ok.
std::string to_json(const ChernoffReport& report);

}  // namespace cvbs
