#include "cvbs/chernoff.hpp"

#include <cmath>
#include <sstream>

#include "cvbs/error.hpp"

namespace cvbs {

namespace {

constexpr double kBandTol = 1e-10;
constexpr double kLn2 = 0.6931471805599453;

void check_eta(double eta) {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw ValidationError("deviation parameter eta must lie strictly inside (0, 1/2)");
  }
}

}  // namespace

double chernoff_failure_bound(int modes, long samples, double eta) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  if (samples < 0) throw ValidationError("sample count must be >= 0");
  check_eta(eta);
  const double exponent = -static_cast<double>(samples) * eta * eta / (8.0 * kLn2);
  return 8.0 * static_cast<double>(modes) * std::exp(exponent);
}

long required_sample_count(int modes, double eta, double delta) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  check_eta(eta);
  if (!(delta > 0.0)) throw ValidationError("target failure probability must be > 0");
  if (delta >= 8.0 * static_cast<double>(modes)) return 0;
  const double k_real = (8.0 * kLn2 / (eta * eta)) * std::log(8.0 * modes / delta);
  long k = static_cast<long>(std::ceil(k_real));
  if (k < 0) k = 0;
  // Pin the exact inversion against rounding in the closed form.
  while (k > 0 && chernoff_failure_bound(modes, k - 1, eta) <= delta) --k;
  while (chernoff_failure_bound(modes, k, eta) > delta) ++k;
  return k;
}

ChernoffReport multiplicative_band_check(const CovarianceMatrix& sigma_true,
                                         const CovarianceMatrix& sigma_hat,
                                         double eta, double b, long samples) {
  check_eta(eta);
  if (!(b > 0.0)) throw ValidationError("squeezing floor b must be > 0");
  if (sigma_true.dim() != sigma_hat.dim()) {
    throw ValidationError("covariance matrices must have matching dimension");
  }
  const double width = eta * (1.0 + 1.0 / b);
  const Eigen::MatrixXd& t = sigma_true.entries();
  const Eigen::MatrixXd& h = sigma_hat.entries();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lower(h - (1.0 - width) * t,
                                                       Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> upper((1.0 + width) * t - h,
                                                       Eigen::EigenvaluesOnly);
  const bool ok = lower.eigenvalues().minCoeff() >= -kBandTol &&
                  upper.eigenvalues().minCoeff() >= -kBandTol;
  ChernoffReport report;
  report.m = sigma_true.modes();
  report.K = samples;
  report.eta = eta;
  report.b = b;
  report.failure_bound = samples > 0 ? chernoff_failure_bound(report.m, samples, eta)
                                     : 8.0 * static_cast<double>(report.m);
  report.band_ok = ok;
  return report;
}

std::string to_json(const ChernoffReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "{\n"
      << "  \"m\": " << report.m << ",\n"
      << "  \"K\": " << report.K << ",\n"
      << "  \"eta\": " << report.eta << ",\n"
      << "  \"b\": " << report.b << ",\n"
      << "  \"failure_bound\": " << report.failure_bound << ",\n"
      << "  \"band_ok\": " << (report.band_ok ? "true" : "false") << "\n"
      << "}\n";
  return out.str();
}

}  // namespace cvbs
