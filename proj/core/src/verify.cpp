#include "cvbs/verify.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "cvbs/error.hpp"

namespace cvbs {

double gaussian_fidelity_pure_target(const CovarianceMatrix& sigma_target,
                                     const CovarianceMatrix& sigma_est) {
  if (sigma_target.dim() != sigma_est.dim()) {
    throw ValidationError("covariance matrices must have matching dimension");
  }
  const double target_det = determinant(sigma_target);
  if (std::abs(target_det - 1.0) > 1e-6) {
    throw ValidationError("target state is not pure, det Sigma = " +
                          std::to_string(target_det));
  }
  const Eigen::MatrixXd sum = sigma_target.entries() + sigma_est.entries();
  const double det = sum.determinant();
  if (!(det > 0.0)) {
    throw ValidationError("covariance sum has non-positive determinant");
  }
  const int m = sigma_target.modes();
  return std::pow(2.0, m) / std::sqrt(det);
}

TraceDistanceBound trace_distance_bound(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0 + 1e-9)) {
    throw ValidationError("fidelity must lie in [0, 1]");
  }
  const double one_minus_f = 1.0 - fidelity;
  return TraceDistanceBound{one_minus_f, std::sqrt(std::max(one_minus_f, 0.0))};
}

TotalVariationResult total_variation(const OutcomeDistribution& p,
                                     const OutcomeDistribution& q) {
  if (!p.probabilities.empty() && !q.probabilities.empty() &&
      p.probabilities.begin()->first.size() != q.probabilities.begin()->first.size()) {
    throw ValidationError("distributions have different mode counts");
  }
  double sum = 0.0;
  auto ip = p.probabilities.begin();
  auto iq = q.probabilities.begin();
  while (ip != p.probabilities.end() || iq != q.probabilities.end()) {
    if (iq == q.probabilities.end() ||
        (ip != p.probabilities.end() && ip->first < iq->first)) {
      sum += ip->second;
      ++ip;
    } else if (ip == p.probabilities.end() || iq->first < ip->first) {
      sum += iq->second;
      ++iq;
    } else {
      sum += std::abs(ip->second - iq->second);
      ++ip;
      ++iq;
    }
  }
  TotalVariationResult result;
  result.within_cutoff = 0.5 * sum;
  result.residual_bound = 0.5 * std::abs(p.mass - q.mass);
  return result;
}

long verification_sample_budget(int modes, double calibration) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  if (!(calibration > 0.0)) throw ValidationError("calibration constant must be > 0");
  const double m = static_cast<double>(modes);
  return static_cast<long>(std::ceil(calibration * m * m * m * m));
}

PhysicalityProjection project_to_physical(const CovarianceMatrix& sigma) {
  const Eigen::MatrixXd original = sigma.entries();
  Eigen::MatrixXd current = original;
  const Eigen::MatrixXcd omega_term =
      std::complex<double>(0.0, 1.0) * symplectic_form(sigma.modes());
  for (int pass = 0; pass < 100; ++pass) {
    Eigen::MatrixXcd h = current.cast<std::complex<double>>() + omega_term;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
      throw ValidationError("eigenvalue computation failed during projection");
    }
    if (solver.eigenvalues().minCoeff() >= -1e-12) break;
    Eigen::VectorXd floored = solver.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd rebuilt = solver.eigenvectors() *
                                     floored.asDiagonal() *
                                     solver.eigenvectors().adjoint();
    // Sigma = Re(H): the floored Hermitian part keeps i*Omega intact because
    // Re removes exactly the antisymmetric imaginary part.
    Eigen::MatrixXd next = rebuilt.real();
    current = 0.5 * (next + next.transpose().eval());
  }
  CovarianceMatrix projected{current};
  if (min_heisenberg_eigenvalue(projected) < -1e-9) {
    throw GuardError("physicality projection did not converge");
  }
  const double perturbation = (current - original).norm();
  return PhysicalityProjection{std::move(projected), perturbation};
}

VerificationReport certify(const CovarianceMatrix& sigma_target,
                           const CovarianceMatrix& sigma_est, double epsilon,
                           double budget_calibration) {
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be >= 0");
  VerificationReport report;
  report.epsilon = epsilon;
  report.projection_perturbation = 0.0;

  const CovarianceMatrix* estimate = &sigma_est;
  PhysicalityProjection projection{sigma_est, 0.0};
  if (min_heisenberg_eigenvalue(sigma_est) < -kPhysicalityTol) {
    projection = project_to_physical(sigma_est);
    estimate = &projection.sigma;
    report.projection_perturbation = projection.frobenius_perturbation;
  }

  report.fidelity = gaussian_fidelity_pure_target(sigma_target, *estimate);
  const TraceDistanceBound bound = trace_distance_bound(std::min(report.fidelity, 1.0));
  report.one_minus_f = 1.0 - report.fidelity;
  report.fvdg_bound = bound.fvdg;
  report.pass = report.one_minus_f < epsilon;
  report.sample_budget = verification_sample_budget(sigma_target.modes(), budget_calibration);
  return report;
}

std::string to_json(const VerificationReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "{\n"
      << "  \"fidelity\": " << report.fidelity << ",\n"
      << "  \"one_minus_F\": " << report.one_minus_f << ",\n"
      << "  \"fvdg_bound\": " << report.fvdg_bound << ",\n"
      << "  \"epsilon\": " << report.epsilon << ",\n"
      << "  \"pass\": " << (report.pass ? "true" : "false") << ",\n"
      << "  \"sample_budget\": " << report.sample_budget << ",\n"
      << "  \"projection_perturbation\": " << report.projection_perturbation << "\n"
      << "}\n";
  return out.str();
}

}  // namespace cvbs
