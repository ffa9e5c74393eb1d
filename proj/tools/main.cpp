#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "cvbs/error.hpp"
#include "runner.hpp"

namespace {

using cvbs::harness::ExperimentConfig;

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;

  std::optional<int> modes;
  std::optional<std::string> input;
  std::optional<std::vector<double>> squeezing;
  std::optional<double> chi;
  std::optional<std::string> unitary;
  std::optional<std::uint64_t> haar_seed;
  std::optional<double> loss_eta;
  std::optional<long> homodyne_samples;
  std::optional<double> chernoff_eta;
  std::optional<double> chernoff_delta;
  std::optional<double> epsilon;
  std::optional<std::string> cutoff;
  std::optional<long> fock_samples;
  std::optional<double> budget_calibration;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Experiment config file (key=value lines)");
  cmd->add_option("--seed", opts.seed, "Master seed; all stage seeds derive from it")
      ->required();
  cmd->add_option("--out-dir", opts.out_dir, "Directory for output artifacts")->required();

  cmd->add_option("--modes", opts.modes, "Source count");
  cmd->add_option("--input", opts.input, "Input kind: squeezed or scattershot");
  cmd->add_option("--squeezing", opts.squeezing,
                  "Per-mode squeezing gains (squeezed input)")
      ->delimiter(',');
  cmd->add_option("--chi", opts.chi, "Two-mode squeezing parameter (scattershot input)");
  cmd->add_option("--unitary", opts.unitary,
                  "identity, haar, program:<path> or csv:<path>");
  cmd->add_option("--haar-seed", opts.haar_seed, "Explicit seed for the haar unitary");
  cmd->add_option("--loss-eta", opts.loss_eta, "Uniform transmissivity in [0, 1]");
  cmd->add_option("--homodyne-samples", opts.homodyne_samples,
                  "Dual-homodyne sample count K");
  cmd->add_option("--chernoff-eta", opts.chernoff_eta,
                  "Confidence band deviation parameter, in (0, 1/2)");
  cmd->add_option("--chernoff-delta", opts.chernoff_delta,
                  "Target certificate failure probability");
  cmd->add_option("--epsilon", opts.epsilon, "Verification tolerance on 1 - F");
  cmd->add_option("--cutoff", opts.cutoff, "Fock truncation cutoff, or 'auto'");
  cmd->add_option("--fock-samples", opts.fock_samples, "Fock sample count N");
  cmd->add_option("--budget-calibration", opts.budget_calibration,
                  "Constant c in the m^4 verification budget");
}

ExperimentConfig assemble_config(const CommonOptions& opts) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) {
    config = cvbs::harness::load_config_file(opts.config_path);
  }
  config.seed = opts.seed;
  if (opts.modes) config.modes = *opts.modes;
  if (opts.input) config.input = *opts.input;
  if (opts.squeezing) config.squeezing = *opts.squeezing;
  if (opts.chi) config.chi = *opts.chi;
  if (opts.unitary) config.unitary = *opts.unitary;
  if (opts.haar_seed) config.haar_seed = *opts.haar_seed;
  if (opts.loss_eta) config.loss_eta = *opts.loss_eta;
  if (opts.homodyne_samples) config.homodyne_samples = *opts.homodyne_samples;
  if (opts.chernoff_eta) config.chernoff_eta = *opts.chernoff_eta;
  if (opts.chernoff_delta) config.chernoff_delta = *opts.chernoff_delta;
  if (opts.epsilon) config.epsilon = *opts.epsilon;
  if (opts.cutoff) {
    if (*opts.cutoff == "auto") {
      config.cutoff = -1;
    } else {
      try {
        config.cutoff = std::stoi(*opts.cutoff);
      } catch (const std::exception&) {
        throw cvbs::ValidationError("--cutoff must be an integer or 'auto'");
      }
    }
  }
  if (opts.fock_samples) config.fock_samples = *opts.fock_samples;
  if (opts.budget_calibration) config.budget_calibration = *opts.budget_calibration;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable boson sampling simulator and verifier"};
  app.require_subcommand(1);

  using Stage = std::function<int(const ExperimentConfig&, const std::filesystem::path&)>;
  struct Command {
    const char* name;
    const char* help;
    Stage stage;
  };
  const std::vector<Command> commands = {
      {"characterize", "Draw dual-homodyne samples and reconstruct the covariance",
       cvbs::harness::run_characterize},
      {"verify", "Certify the reconstructed state against the pure target",
       cvbs::harness::run_verify},
      {"sample", "Enumerate the Fock distribution and draw photon-count samples",
       cvbs::harness::run_sample},
      {"oracle-check", "Compare hafnian probabilities against the truncated-Fock oracle",
       cvbs::harness::run_oracle_check},
      {"all", "Run characterize, verify, sample and oracle-check in order",
       cvbs::harness::run_all},
  };

  std::vector<CommonOptions> options(commands.size());
  std::vector<std::pair<CLI::App*, std::size_t>> subcommands;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i].name, commands[i].help);
    add_common_options(cmd, options[i]);
    subcommands.emplace_back(cmd, i);
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [cmd, index] : subcommands) {
    if (!cmd->parsed()) continue;
    try {
      const ExperimentConfig config = assemble_config(options[index]);
      return commands[index].stage(config, options[index].out_dir);
    } catch (const cvbs::GuardError& error) {
      std::fprintf(stderr, "refused: %s\n", error.what());
      return 3;
    } catch (const cvbs::ValidationError& error) {
      std::fprintf(stderr, "error: %s\n", error.what());
      return 2;
    } catch (const std::exception& error) {
      std::fprintf(stderr, "error: %s\n", error.what());
      return 2;
    }
  }
  return 2;
}
