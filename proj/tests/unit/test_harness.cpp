#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "config.hpp"
#include "cvbs/error.hpp"
#include "cvbs/io.hpp"
#include "runner.hpp"
#include "support/test_paths.hpp"

using cvbs::harness::ExperimentConfig;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

ExperimentConfig small_instance() {
  ExperimentConfig config;
  config.modes = 2;
  config.input = "squeezed";
  config.squeezing = {0.5, 0.3};
  config.unitary = "haar";
  config.homodyne_samples = 4000;
  config.fock_samples = 4000;
  config.seed = 99;
  return config;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config file assignments overlay the defaults") {
    cvbs::testing::ScopedTempDir dir;
    const auto path = dir.path() / "exp.cfg";
    write_file(path,
               "# experiment\n"
               "modes = 3\n"
               "input = scattershot\n"
               "chi = 0.25\n"
               "loss_eta = 0.9\n"
               "cutoff = auto\n"
               "homodyne_samples = 500\n");
    const auto config = cvbs::harness::load_config_file(path);
    CHECK(config.modes == 3);
    CHECK(config.input == "scattershot");
    CHECK(config.chi == 0.25);
    CHECK(config.loss_eta == 0.9);
    CHECK(config.cutoff == -1);
    CHECK(config.homodyne_samples == 500);
    CHECK(config.epsilon == 0.05);
  }

  TEST_CASE("unknown keys and malformed values are rejected") {
    cvbs::testing::ScopedTempDir dir;
    const auto path = dir.path() / "exp.cfg";
    write_file(path, "modez = 3\n");
    CHECK_THROWS_AS(cvbs::harness::load_config_file(path), cvbs::ValidationError);
    write_file(path, "modes = three\n");
    CHECK_THROWS_AS(cvbs::harness::load_config_file(path), cvbs::ValidationError);
    write_file(path, "modes\n");
    CHECK_THROWS_AS(cvbs::harness::load_config_file(path), cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::harness::load_config_file(dir.path() / "missing.cfg"),
                    cvbs::ValidationError);
  }

  TEST_CASE("validation reports the offending field") {
    ExperimentConfig config;
    config.homodyne_samples = 0;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("K must be >= 1"),
                         cvbs::ValidationError);

    config = ExperimentConfig{};
    config.modes = 0;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("modes"),
                         cvbs::ValidationError);

    config = ExperimentConfig{};
    config.chernoff_eta = 0.5;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("chernoff_eta"),
                         cvbs::ValidationError);

    config = ExperimentConfig{};
    config.input = "thermal";
    CHECK_THROWS_AS(config.validate(), cvbs::ValidationError);

    config = ExperimentConfig{};
    config.squeezing = {0.5, 0.3};
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("squeezing"),
                         cvbs::ValidationError);
  }

  TEST_CASE("config hash covers the experiment and resolves the haar seed") {
    const auto base = small_instance();
    const auto base_hash = cvbs::harness::config_hash(base);
    CHECK(cvbs::harness::config_hash(small_instance()) == base_hash);

    auto changed = small_instance();
    changed.squeezing = {0.5, 0.31};
    CHECK(cvbs::harness::config_hash(changed) != base_hash);

    auto reseeded = small_instance();
    reseeded.seed = 100;
    CHECK(cvbs::harness::config_hash(reseeded) != base_hash);

    auto pinned = small_instance();
    pinned.haar_seed = cvbs::harness::resolved_haar_seed(base);
    CHECK(cvbs::harness::config_hash(pinned) == base_hash);
  }

  TEST_CASE("file-backed unitaries hash by content, not path") {
    cvbs::testing::ScopedTempDir dir;
    const std::string program = "BS 1 2 0.785398 0\nPHASE 1 0.25\n";
    write_file(dir.path() / "a.prog", program);
    write_file(dir.path() / "b.prog", program);

    auto first = small_instance();
    first.unitary = "program:" + (dir.path() / "a.prog").string();
    auto second = small_instance();
    second.unitary = "program:" + (dir.path() / "b.prog").string();
    CHECK(cvbs::harness::config_hash(first) == cvbs::harness::config_hash(second));

    write_file(dir.path() / "b.prog", "BS 1 2 0.785398 0\nPHASE 1 0.5\n");
    CHECK(cvbs::harness::config_hash(first) != cvbs::harness::config_hash(second));
  }

  TEST_CASE("characterize then verify passes on a faithful estimate") {
    cvbs::testing::ScopedTempDir dir;
    const auto config = small_instance();
    CHECK(cvbs::harness::run_characterize(config, dir.path()) == 0);
    CHECK(std::filesystem::exists(dir.path() / cvbs::harness::kSigmaTargetFile));
    CHECK(std::filesystem::exists(dir.path() / cvbs::harness::kSigmaEstimateFile));
    CHECK(std::filesystem::exists(dir.path() / cvbs::harness::kSamplesFile));
    CHECK(std::filesystem::exists(dir.path() / cvbs::harness::kChernoffFile));
    CHECK(cvbs::harness::run_verify(config, dir.path()) == 0);
    CHECK(std::filesystem::exists(dir.path() / cvbs::harness::kVerificationFile));
  }

  TEST_CASE("verify without characterization names the missing step") {
    cvbs::testing::ScopedTempDir dir;
    CHECK_THROWS_WITH_AS(cvbs::harness::run_verify(small_instance(), dir.path()),
                         doctest::Contains("characterization missing"),
                         cvbs::ValidationError);
  }

  TEST_CASE("stages refuse artifacts from a different configuration") {
    cvbs::testing::ScopedTempDir dir;
    const auto config = small_instance();
    REQUIRE(cvbs::harness::run_characterize(config, dir.path()) == 0);

    auto other = config;
    other.squeezing = {0.9, 0.3};
    CHECK_THROWS_WITH_AS(cvbs::harness::run_verify(other, dir.path()),
                         doctest::Contains("config hash"), cvbs::ValidationError);
  }

  TEST_CASE("reruns are byte-identical") {
    cvbs::testing::ScopedTempDir first_dir;
    cvbs::testing::ScopedTempDir second_dir;
    const auto config = small_instance();
    REQUIRE(cvbs::harness::run_all(config, first_dir.path()) == 0);
    REQUIRE(cvbs::harness::run_all(config, second_dir.path()) == 0);

    const std::vector<std::string> files = {
        cvbs::harness::kUnitaryFile,      cvbs::harness::kSigmaTargetFile,
        cvbs::harness::kSigmaTruthFile,   cvbs::harness::kSigmaEstimateFile,
        cvbs::harness::kSamplesFile,      cvbs::harness::kChernoffFile,
        cvbs::harness::kVerificationFile, cvbs::harness::kDistributionFile,
        cvbs::harness::kFockSamplesFile,  cvbs::harness::kTvdFile,
        cvbs::harness::kOracleCheckFile,
    };
    for (const auto& name : files) {
      CAPTURE(name);
      REQUIRE(std::filesystem::exists(first_dir.path() / name));
      CHECK(slurp(first_dir.path() / name) == slurp(second_dir.path() / name));
    }
  }

  TEST_CASE("every artifact embeds the config hash") {
    cvbs::testing::ScopedTempDir dir;
    const auto config = small_instance();
    REQUIRE(cvbs::harness::run_all(config, dir.path()) == 0);
    const auto hash = cvbs::harness::config_hash(config);
    for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
      CAPTURE(entry.path().string());
      CHECK(slurp(entry.path()).find(hash) != std::string::npos);
    }
  }

  TEST_CASE("sampling with a starved cutoff suggests a better one") {
    cvbs::testing::ScopedTempDir dir;
    auto config = small_instance();
    config.squeezing = {1.2, 1.2};
    config.cutoff = 1;
    REQUIRE(cvbs::harness::run_characterize(config, dir.path()) == 0);
    CHECK_THROWS_WITH_AS(cvbs::harness::run_sample(config, dir.path()),
                         doctest::Contains("cutoff"), cvbs::GuardError);
  }

  TEST_CASE("oracle check refuses lossy or oversized configurations") {
    cvbs::testing::ScopedTempDir dir;
    auto lossy = small_instance();
    lossy.loss_eta = 0.9;
    CHECK_THROWS_AS(cvbs::harness::run_oracle_check(lossy, dir.path()),
                    cvbs::ValidationError);

    auto big = small_instance();
    big.modes = 5;
    big.squeezing = {0.3};
    CHECK_THROWS_AS(cvbs::harness::run_oracle_check(big, dir.path()),
                    cvbs::GuardError);
  }

  TEST_CASE("verify exit code reflects the verdict") {
    cvbs::testing::ScopedTempDir dir;
    auto config = small_instance();
    config.loss_eta = 0.55;
    config.epsilon = 0.01;
    REQUIRE(cvbs::harness::run_characterize(config, dir.path()) == 0);
    CHECK(cvbs::harness::run_verify(config, dir.path()) == 1);
    const auto report = slurp(dir.path() / cvbs::harness::kVerificationFile);
    CHECK(report.find("\"pass\": false") != std::string::npos);
  }

  TEST_CASE("scattershot pipeline runs end to end") {
    cvbs::testing::ScopedTempDir dir;
    ExperimentConfig config;
    config.modes = 1;
    config.input = "scattershot";
    config.chi = 1.0 / 3.0;
    config.unitary = "haar";
    config.homodyne_samples = 4000;
    config.fock_samples = 2000;
    config.seed = 5;
    CHECK(cvbs::harness::run_all(config, dir.path()) == 0);
    CHECK(std::filesystem::exists(dir.path() / cvbs::harness::kOracleCheckFile));
  }

  TEST_CASE("program-backed unitaries flow through the pipeline") {
    cvbs::testing::ScopedTempDir dir;
    write_file(dir.path() / "mesh.prog",
               "BS 1 2 0.7853981633974483 0\nPHASE 2 0.4\n");
    ExperimentConfig config;
    config.modes = 2;
    config.squeezing = {0.4};
    config.unitary = "program:" + (dir.path() / "mesh.prog").string();
    config.homodyne_samples = 2000;
    config.fock_samples = 1000;
    config.seed = 12;
    const auto out = dir.path() / "out";
    CHECK(cvbs::harness::run_all(config, out) == 0);
  }
}
