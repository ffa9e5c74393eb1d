#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cvbs/chernoff.hpp"
#include "cvbs/error.hpp"
#include "cvbs/fock.hpp"
#include "cvbs/fock_oracle.hpp"
#include "cvbs/homodyne.hpp"
#include "cvbs/interferometer.hpp"
#include "cvbs/io.hpp"
#include "cvbs/rng.hpp"
#include "cvbs/scattershot.hpp"
#include "cvbs/symplectic.hpp"
#include "cvbs/verify.hpp"

namespace cvbs::harness {

namespace {

using nlohmann::json;

Eigen::MatrixXcd resolve_unitary(const ExperimentConfig& config) {
  const int m = config.modes;
  if (config.unitary == "identity") {
    return Eigen::MatrixXcd::Identity(m, m);
  }
  if (config.unitary == "haar") {
    return haar_random_unitary(m, resolved_haar_seed(config)).unitary;
  }
  if (config.unitary.starts_with("program:")) {
    const std::filesystem::path path = config.unitary.substr(8);
    return compile_loop_program(LoopProgram::load(path, m)).unitary;
  }
  const std::filesystem::path path = config.unitary.substr(4);
  Eigen::MatrixXcd u = read_unitary_csv(path);
  if (u.rows() != m || u.cols() != m) {
    throw ValidationError("unitary file " + path.string() + " is " +
                          std::to_string(u.rows()) + " x " + std::to_string(u.cols()) +
                          ", expected " + std::to_string(m) + " x " + std::to_string(m));
  }
  const double residual =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    throw ValidationError("unitary file " + path.string() + " is not unitary, residual " +
                          std::to_string(residual));
  }
  return u;
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  write_text_file(path, value.dump(2) + "\n");
}

void check_file_hash(const std::map<std::string, std::string>& header,
                     const std::string& expected, const std::filesystem::path& path) {
  const auto it = header.find("config_hash");
  if (it == header.end()) {
    throw ValidationError(path.string() + " carries no config hash");
  }
  if (it->second != expected) {
    throw ValidationError(path.string() + " was produced under config hash " + it->second +
                          ", current config hash is " + expected +
                          "; refusing to combine mismatched artifacts");
  }
}

CovarianceMatrix load_matching_covariance(const std::filesystem::path& path,
                                          const std::string& expected_hash,
                                          const char* missing_hint) {
  if (!std::filesystem::exists(path)) {
    throw ValidationError(missing_hint + (": " + path.string()) + " not found");
  }
  CovarianceFile file = read_covariance_file(path);
  check_file_hash(file.header, expected_hash, path);
  return std::move(file.sigma);
}

// Enumerates at an explicit cutoff, or grows from the thermal-proxy estimate
// until the captured mass supports sampling. Refuses rather than renormalize
// a distribution that lost real mass.
OutcomeDistribution enumerate_for_sampling(const GaussianState& truth, int requested_cutoff) {
  constexpr double kMassFloor = 0.999;
  constexpr int kHardCap = 16;
  if (requested_cutoff >= 0) {
    OutcomeDistribution dist = enumerate_distribution(truth, requested_cutoff);
    if (dist.mass < kMassFloor) {
      const int suggestion =
          std::max(default_cutoff(truth, kMassFloor, kHardCap), requested_cutoff + 1);
      throw GuardError("captured mass " + format_double(dist.mass) + " at cutoff " +
                       std::to_string(requested_cutoff) +
                       " is below 0.999; rerun with cutoff " + std::to_string(suggestion) +
                       " or 'auto'");
    }
    return dist;
  }
  int cutoff = default_cutoff(truth, kMassFloor, kHardCap);
  OutcomeDistribution dist = enumerate_distribution(truth, cutoff);
  while (dist.mass < kMassFloor && cutoff < kHardCap) {
    ++cutoff;
    dist = enumerate_distribution(truth, cutoff);
  }
  if (dist.mass < kMassFloor) {
    throw GuardError("captured mass " + format_double(dist.mass) + " at the cutoff cap " +
                     std::to_string(kHardCap) +
                     " is below 0.999, state too energetic for desk-scale sampling");
  }
  return dist;
}

}  // namespace

InstanceStates build_instance(const ExperimentConfig& config) {
  config.validate();
  const Eigen::MatrixXcd u = resolve_unitary(config);
  GaussianState target = vacuum_state(1);
  if (config.input == "squeezed") {
    target = vacuum_state(config.modes);
    for (int k = 0; k < config.modes; ++k) {
      const double r = config.squeezing.size() == 1
                           ? config.squeezing.front()
                           : config.squeezing[static_cast<std::size_t>(k)];
      target = squeeze_single(target, k, r);
    }
    if (config.unitary != "identity") {
      target = apply_symplectic(target, unitary_to_symplectic(u));
    }
  } else {
    target = build_scattershot_state(config.modes, config.chi, u).state;
  }
  GaussianState truth =
      config.loss_eta < 1.0 ? apply_uniform_loss(target, config.loss_eta) : target;
  return InstanceStates{u, std::move(target), std::move(truth)};
}

int run_characterize(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const InstanceStates instance = build_instance(config);
  const std::string hash = config_hash(config);
  const HeaderFields stamp = {{"config_hash", hash}};

  write_unitary_csv(out_dir / kUnitaryFile, instance.unitary, stamp);
  write_covariance_file(out_dir / kSigmaTargetFile, instance.target.cov, stamp);
  write_covariance_file(out_dir / kSigmaTruthFile, instance.truth.cov, stamp);

  const long k = config.homodyne_samples;
  const std::uint64_t draw_seed = derive_stream(config.seed, kHomodyneStream);
  const std::vector<Eigen::VectorXd> samples =
      draw_dual_homodyne_samples(instance.truth, k, draw_seed);
  HeaderFields sample_stamp = stamp;
  sample_stamp.emplace_back("seed", std::to_string(draw_seed));
  write_samples_csv(out_dir / kSamplesFile, samples, instance.truth.modes(), sample_stamp);

  SampleMatrixAccumulator accumulator(instance.truth.modes());
  for (const Eigen::VectorXd& s : samples) accumulator.add(s);
  const CovarianceEstimate estimate = reconstruct_covariance(accumulator.average());

  HeaderFields est_stamp = stamp;
  est_stamp.emplace_back("physical", estimate.physical ? "true" : "false");
  est_stamp.emplace_back("min_heisenberg_eigenvalue",
                         format_double(estimate.min_heisenberg_eigenvalue));
  write_covariance_file(out_dir / kSigmaEstimateFile, estimate.sigma, est_stamp);

  const double b = min_quadrature_variance(instance.truth);
  const ChernoffReport report = multiplicative_band_check(
      instance.truth.cov, estimate.sigma, config.chernoff_eta, b, k);
  json j;
  j["m"] = report.m;
  j["K"] = report.K;
  j["eta"] = report.eta;
  j["b"] = report.b;
  j["failure_bound"] = report.failure_bound;
  j["band_ok"] = report.band_ok;
  j["config_hash"] = hash;
  write_json_file(out_dir / kChernoffFile, j);

  std::printf("characterize: m=%d K=%ld band_ok=%s failure_bound=%.3e estimate_physical=%s\n",
              report.m, report.K, report.band_ok ? "true" : "false", report.failure_bound,
              estimate.physical ? "true" : "false");
  return 0;
}

int run_verify(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  const std::string hash = config_hash(config);
  const CovarianceMatrix target = load_matching_covariance(
      out_dir / kSigmaTargetFile, hash, "characterization missing, run characterize first");
  const CovarianceMatrix estimate = load_matching_covariance(
      out_dir / kSigmaEstimateFile, hash, "characterization missing, run characterize first");

  const VerificationReport report =
      certify(target, estimate, config.epsilon, config.budget_calibration);
  json j;
  j["fidelity"] = report.fidelity;
  j["one_minus_F"] = report.one_minus_f;
  j["fvdg_bound"] = report.fvdg_bound;
  j["epsilon"] = report.epsilon;
  j["pass"] = report.pass;
  j["sample_budget"] = report.sample_budget;
  j["projection_perturbation"] = report.projection_perturbation;
  j["config_hash"] = hash;
  write_json_file(out_dir / kVerificationFile, j);

  std::printf("verify: pass=%s fidelity=%.12f one_minus_F=%.3e epsilon=%.3e budget=%ld\n",
              report.pass ? "true" : "false", report.fidelity, report.one_minus_f,
              report.epsilon, report.sample_budget);
  return report.pass ? 0 : 1;
}

int run_sample(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const InstanceStates instance = build_instance(config);
  const std::string hash = config_hash(config);
  const OutcomeDistribution dist = enumerate_for_sampling(instance.truth, config.cutoff);
  const std::uint64_t draw_seed = derive_stream(config.seed, kFockStream);

  HeaderFields stamp = {{"config_hash", hash},
                        {"cutoff", std::to_string(dist.cutoff)},
                        {"mass", format_double(dist.mass)},
                        {"seed", std::to_string(draw_seed)}};
  write_distribution_csv(out_dir / kDistributionFile, dist, instance.truth.modes(), stamp);

  const std::vector<FockOutcome> samples = sample_fock(dist, config.fock_samples, draw_seed);
  write_fock_samples_csv(out_dir / kFockSamplesFile, samples, instance.truth.modes(), stamp);

  OutcomeDistribution empirical;
  empirical.cutoff = dist.cutoff;
  const double weight = 1.0 / static_cast<double>(samples.size());
  for (const FockOutcome& outcome : samples) {
    empirical.probabilities[outcome] += weight;
  }
  empirical.mass = 1.0;
  const TotalVariationResult tvd = total_variation(dist, empirical);

  json j;
  j["tvd_within_cutoff"] = tvd.within_cutoff;
  j["residual_bound"] = tvd.residual_bound;
  j["tvd_total"] = tvd.total();
  j["samples"] = static_cast<long>(samples.size());
  j["cutoff"] = dist.cutoff;
  j["mass"] = dist.mass;
  j["config_hash"] = hash;
  write_json_file(out_dir / kTvdFile, j);

  std::printf("sample: N=%ld cutoff=%d mass=%.6f tvd=%.6f\n",
              static_cast<long>(samples.size()), dist.cutoff, dist.mass, tvd.within_cutoff);
  return 0;
}

namespace {

// The oracle covers pure states only; loss is outside its model.
void check_oracle_applicable(const ExperimentConfig& config) {
  if (config.loss_eta < 1.0) {
    throw ValidationError("oracle check requires a lossless configuration (loss_eta = 1)");
  }
}

OracleCircuit oracle_circuit_for(const ExperimentConfig& config,
                                 const Eigen::MatrixXcd& unitary) {
  OracleCircuit circuit;
  if (config.input == "squeezed") {
    circuit.modes = config.modes;
    for (int k = 0; k < config.modes; ++k) {
      const double r = config.squeezing.size() == 1
                           ? config.squeezing.front()
                           : config.squeezing[static_cast<std::size_t>(k)];
      circuit.squeezers.push_back(OracleSqueezer{k, r});
    }
    if (config.unitary != "identity") circuit.unitary = unitary;
  } else {
    const int m = config.modes;
    circuit.modes = 2 * m;
    const double r = std::atanh(config.chi);
    for (int k = 0; k < m; ++k) {
      circuit.pair_squeezers.push_back(OracleTwoModeSqueezer{k, m + k, r});
    }
    if (config.unitary != "identity") {
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
      full.block(m, m, m, m) = unitary;
      circuit.unitary = full;
    }
  }
  return circuit;
}

}  // namespace

int run_oracle_check(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  check_oracle_applicable(config);
  const InstanceStates instance = build_instance(config);
  const std::string hash = config_hash(config);

  const int state_modes = instance.target.modes();
  if (state_modes > kOracleMaxModes) {
    throw GuardError("oracle is desk scale only, state has " + std::to_string(state_modes) +
                     " modes, limit " + std::to_string(kOracleMaxModes));
  }
  const int cutoff = config.cutoff >= 0
                         ? config.cutoff
                         : std::min(default_cutoff(instance.target), kOracleMaxCutoff);

  const OracleCircuit circuit = oracle_circuit_for(config, instance.unitary);
  const TruncatedFockState oracle_state = build_oracle_state(circuit, cutoff);
  const FockProbabilityEvaluator evaluator(instance.target);

  double max_abs_error = 0.0;
  long outcomes = 0;
  for (const FockOutcome& outcome : enumerate_outcomes(state_modes, cutoff)) {
    const double reference = std::norm(oracle_state.amplitude(outcome));
    const double value = evaluator.probability(outcome);
    max_abs_error = std::max(max_abs_error, std::abs(value - reference));
    ++outcomes;
  }

  json j;
  j["max_abs_error"] = max_abs_error;
  j["outcomes"] = outcomes;
  j["cutoff"] = cutoff;
  j["truncation_deficit"] = 1.0 - oracle_state.captured_mass();
  j["config_hash"] = hash;
  write_json_file(out_dir / kOracleCheckFile, j);

  std::printf("oracle-check: outcomes=%ld cutoff=%d max_abs_error=%.3e\n", outcomes, cutoff,
              max_abs_error);
  return 0;
}

int run_all(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  run_characterize(config, out_dir);
  const int verify_rc = run_verify(config, out_dir);
  run_sample(config, out_dir);

  const int state_modes = config.input == "scattershot" ? 2 * config.modes : config.modes;
  const bool oracle_feasible = config.loss_eta >= 1.0 && state_modes <= kOracleMaxModes &&
                               config.cutoff <= kOracleMaxCutoff;
  if (oracle_feasible) {
    run_oracle_check(config, out_dir);
  } else {
    std::printf("oracle-check: skipped (desk-scale pure-state oracle not applicable)\n");
  }
  return verify_rc;
}

}  // namespace cvbs::harness
