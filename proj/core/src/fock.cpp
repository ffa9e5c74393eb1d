#include "cvbs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cvbs/error.hpp"
#include "cvbs/hafnian.hpp"
#include "cvbs/rng.hpp"

namespace cvbs {

namespace {

using Complex = std::complex<double>;

double factorial(int n) {
  double result = 1.0;
  for (int k = 2; k <= n; ++k) result *= static_cast<double>(k);
  return result;
}

void append_outcomes(int modes, int budget, FockOutcome& prefix,
                     std::vector<FockOutcome>& out) {
  if (static_cast<int>(prefix.size()) == modes) {
    out.push_back(prefix);
    return;
  }
  for (int n = 0; n <= budget; ++n) {
    prefix.push_back(n);
    append_outcomes(modes, budget - n, prefix, out);
    prefix.pop_back();
  }
}

void check_outcome(const FockOutcome& outcome, int modes) {
  if (static_cast<int>(outcome.size()) != modes) {
    throw ValidationError("outcome has " + std::to_string(outcome.size()) +
                          " modes, state has " + std::to_string(modes));
  }
  for (int n : outcome) {
    if (n < 0) throw ValidationError("photon counts must be non-negative");
  }
}

}  // namespace

std::vector<FockOutcome> enumerate_outcomes(int modes, int cutoff) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  if (cutoff < 0) throw ValidationError("cutoff must be >= 0");
  std::vector<FockOutcome> out;
  FockOutcome prefix;
  prefix.reserve(static_cast<std::size_t>(modes));
  append_outcomes(modes, cutoff, prefix, out);
  return out;
}

FockProbabilityEvaluator::FockProbabilityEvaluator(const GaussianState& state)
    : modes_(state.modes()) {
  if (!is_physical(state.cov)) {
    throw ValidationError("Fock probabilities require a physical state, Sigma + i*Omega "
                          "eigenvalue " + std::to_string(min_heisenberg_eigenvalue(state.cov)));
  }
  const int m = modes_;
  const Eigen::MatrixXd& sigma = state.cov.entries();

  // Mode-operator second moments from the quadrature covariance:
  //   N_jk = <adag_j a_k>, A_jk = <a_j a_k>.
  Eigen::MatrixXd xx(m, m), xp(m, m), px(m, m), pp(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      xx(j, k) = sigma(2 * j, 2 * k);
      xp(j, k) = sigma(2 * j, 2 * k + 1);
      px(j, k) = sigma(2 * j + 1, 2 * k);
      pp(j, k) = sigma(2 * j + 1, 2 * k + 1);
    }
  }
  const Complex i_unit(0.0, 1.0);
  Eigen::MatrixXcd n_mat =
      ((xx + pp - 2.0 * Eigen::MatrixXd::Identity(m, m)).cast<Complex>() +
       i_unit * (xp - px).cast<Complex>()) /
      4.0;
  Eigen::MatrixXcd a_mat =
      ((xx - pp).cast<Complex>() + i_unit * (xp + px).cast<Complex>()) / 4.0;

  Eigen::MatrixXcd q(2 * m, 2 * m);
  q.topLeftCorner(m, m) = n_mat + Eigen::MatrixXcd::Identity(m, m);
  q.topRightCorner(m, m) = a_mat.conjugate();
  q.bottomLeftCorner(m, m) = a_mat;
  q.bottomRightCorner(m, m) = n_mat.conjugate() + Eigen::MatrixXcd::Identity(m, m);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(q);
  const Complex det = lu.determinant();
  if (!(det.real() > 0.0) || std::abs(det.imag()) > 1e-9 * std::abs(det)) {
    throw ValidationError("husimi covariance determinant is not real positive");
  }
  sqrt_det_q_ = std::sqrt(det.real());

  Eigen::MatrixXcd kernel =
      Eigen::MatrixXcd::Identity(2 * m, 2 * m) - lu.inverse();
  // Multiply by the block swap X = [[0, I], [I, 0]] from the left.
  Eigen::MatrixXcd swapped(2 * m, 2 * m);
  swapped.topRows(m) = kernel.bottomRows(m);
  swapped.bottomRows(m) = kernel.topRows(m);
  const double scale = std::max(1.0, swapped.cwiseAbs().maxCoeff());
  const double asym = (swapped - swapped.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    throw ValidationError("hafnian kernel lost symmetry, residual " + std::to_string(asym));
  }
  reduced_kernel_ = 0.5 * (swapped + swapped.transpose().eval());
}

double FockProbabilityEvaluator::probability(const FockOutcome& outcome) const {
  check_outcome(outcome, modes_);
  int total = 0;
  for (int n : outcome) total += n;

  double denom = sqrt_det_q_;
  for (int n : outcome) denom *= factorial(n);

  if (total == 0) return 1.0 / denom;

  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(2 * total));
  for (int j = 0; j < modes_; ++j) {
    for (int c = 0; c < outcome[static_cast<std::size_t>(j)]; ++c) rows.push_back(j);
  }
  const int t = total;
  for (int r = 0; r < t; ++r) rows.push_back(rows[static_cast<std::size_t>(r)] + modes_);

  Eigen::MatrixXcd reduced(2 * t, 2 * t);
  for (int r = 0; r < 2 * t; ++r) {
    for (int c = 0; c < 2 * t; ++c) {
      reduced(r, c) = reduced_kernel_(rows[static_cast<std::size_t>(r)],
                                      rows[static_cast<std::size_t>(c)]);
    }
  }
  const Complex haf = hafnian(reduced);
  const double value = haf.real() / denom;
  if (std::abs(haf.imag()) > 1e-9 * std::max(1.0, std::abs(haf.real()))) {
    throw ValidationError("outcome probability has non-real hafnian");
  }
  return std::max(value, 0.0);
}

double outcome_probability(const GaussianState& state, const FockOutcome& outcome) {
  return FockProbabilityEvaluator(state).probability(outcome);
}

OutcomeDistribution enumerate_distribution(const GaussianState& state, int cutoff) {
  FockProbabilityEvaluator evaluator(state);
  OutcomeDistribution dist;
  dist.cutoff = cutoff;
  double mass = 0.0;
  for (const FockOutcome& outcome : enumerate_outcomes(state.modes(), cutoff)) {
    const double p = evaluator.probability(outcome);
    dist.probabilities.emplace(outcome, p);
    mass += p;
  }
  dist.mass = mass;
  return dist;
}

int default_cutoff(const GaussianState& state, double target_mass, int hard_cap) {
  if (!(target_mass > 0.0 && target_mass < 1.0)) {
    throw ValidationError("target mass must lie in (0, 1)");
  }
  if (hard_cap < 0) throw ValidationError("cutoff cap must be >= 0");
  const int m = state.modes();
  const Eigen::MatrixXd& sigma = state.cov.entries();

  // Thermal proxy: per-mode geometric photon distributions with the state's
  // per-mode means, convolved exactly up to the cap.
  std::vector<double> tally(static_cast<std::size_t>(hard_cap) + 1, 0.0);
  tally[0] = 1.0;
  for (int k = 0; k < m; ++k) {
    const double mean = std::max(0.0, (sigma(2 * k, 2 * k) + sigma(2 * k + 1, 2 * k + 1) - 2.0) / 4.0);
    const double ratio = mean / (1.0 + mean);
    std::vector<double> pmf(static_cast<std::size_t>(hard_cap) + 1, 0.0);
    double p = 1.0 - ratio;
    for (int n = 0; n <= hard_cap; ++n) {
      pmf[static_cast<std::size_t>(n)] = p;
      p *= ratio;
    }
    std::vector<double> next(static_cast<std::size_t>(hard_cap) + 1, 0.0);
    for (int a = 0; a <= hard_cap; ++a) {
      if (tally[static_cast<std::size_t>(a)] == 0.0) continue;
      for (int b = 0; a + b <= hard_cap; ++b) {
        next[static_cast<std::size_t>(a + b)] +=
            tally[static_cast<std::size_t>(a)] * pmf[static_cast<std::size_t>(b)];
      }
    }
    tally.swap(next);
  }
  int start = hard_cap + 1;
  double cumulative = 0.0;
  for (int c = 0; c <= hard_cap; ++c) {
    cumulative += tally[static_cast<std::size_t>(c)];
    if (cumulative >= target_mass) {
      start = c;
      break;
    }
  }
  // The proxy only seeds the search: squeezed light is heavier-tailed than a
  // thermal state of equal mean, so confirm against the true captured mass
  // and widen until the target is actually reached.
  for (int c = start; c <= hard_cap; ++c) {
    if (enumerate_distribution(state, c).mass >= target_mass) return c;
  }
  throw GuardError("no cutoff up to " + std::to_string(hard_cap) +
                   " reaches captured mass " + std::to_string(target_mass) +
                   ", state too energetic for desk-scale enumeration");
}

std::vector<FockOutcome> sample_fock(const OutcomeDistribution& distribution, long count,
                                     std::uint64_t seed) {
  if (count < 1) throw ValidationError("sample count N must be >= 1");
  if (distribution.mass < 0.999) {
    throw GuardError("captured mass " + std::to_string(distribution.mass) +
                     " at cutoff " + std::to_string(distribution.cutoff) +
                     " is below 0.999, raise the cutoff instead of renormalizing the tail");
  }
  std::vector<const FockOutcome*> outcomes;
  std::vector<double> cumulative;
  outcomes.reserve(distribution.probabilities.size());
  cumulative.reserve(distribution.probabilities.size());
  double running = 0.0;
  for (const auto& [outcome, p] : distribution.probabilities) {
    running += p;
    outcomes.push_back(&outcome);
    cumulative.push_back(running);
  }
  if (outcomes.empty()) throw ValidationError("distribution is empty");

  Rng rng(seed);
  std::vector<FockOutcome> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double u = rng.uniform01() * running;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative.begin()), outcomes.size() - 1);
    samples.push_back(*outcomes[idx]);
  }
  return samples;
}

std::vector<FockOutcome> sample_fock(const GaussianState& state, long count, int cutoff,
                                     std::uint64_t seed) {
  return sample_fock(enumerate_distribution(state, cutoff), count, seed);
}

double scattershot_success_probability(const ScattershotParams& params) {
  const int n = params.detected;
  const int m = params.sources;
  const double chi = params.chi;
  if (m < 1) throw ValidationError("source count must be >= 1");
  if (n < 0) throw ValidationError("detected photon count must be >= 0");
  if (n > m) throw ValidationError("detected photons cannot exceed source count");
  if (!(chi > 0.0 && chi < 1.0)) {
    throw ValidationError("squeezing parameter chi must lie strictly inside (0, 1)");
  }
  double binom = 1.0;
  for (int k = 0; k < n; ++k) {
    binom *= static_cast<double>(m - k) / static_cast<double>(k + 1);
  }
  return binom * std::pow(chi, 2 * n) * std::pow(1.0 - chi * chi, m);
}

double scattershot_success_probability(int detected, int sources, double chi) {
  return scattershot_success_probability(ScattershotParams{detected, sources, chi});
}

double optimal_chi(int detected, int sources) {
  if (sources < 1) throw ValidationError("source count must be >= 1");
  if (detected < 0) throw ValidationError("detected photon count must be >= 0");
  if (detected > sources) throw ValidationError("detected photons cannot exceed source count");
  return std::sqrt(static_cast<double>(detected) /
                   static_cast<double>(sources + detected));
}

double chi_to_db(double chi) {
  if (!(chi >= 0.0 && chi < 1.0)) {
    throw ValidationError("chi must lie in [0, 1)");
  }
  const double r = std::atanh(chi);
  return 10.0 * std::log10(std::exp(2.0 * r));
}

double db_to_chi(double db) {
  if (db < 0.0) throw ValidationError("squeezing in dB must be >= 0");
  const double r = db * std::log(10.0) / 20.0;
  return std::tanh(r);
}

}  // namespace cvbs
