#include <cmath>
#include <map>

#include <doctest.h>
#include <Eigen/Dense>

#include "cvbs/covariance.hpp"
#include "cvbs/error.hpp"
#include "cvbs/fock.hpp"
#include "cvbs/interferometer.hpp"
#include "cvbs/symplectic.hpp"
#include "support/fock_reference.hpp"

using cvbs::FockOutcome;

TEST_SUITE("fock") {
  TEST_CASE("outcome enumeration is lexicographic and complete") {
    const auto outcomes = cvbs::enumerate_outcomes(2, 2);
    REQUIRE(outcomes.size() == 6);
    CHECK(outcomes[0] == FockOutcome{0, 0});
    CHECK(outcomes[1] == FockOutcome{0, 1});
    CHECK(outcomes[2] == FockOutcome{0, 2});
    CHECK(outcomes[3] == FockOutcome{1, 0});
    CHECK(outcomes[4] == FockOutcome{1, 1});
    CHECK(outcomes[5] == FockOutcome{2, 0});
  }

  TEST_CASE("vacuum assigns unit probability to the empty outcome") {
    const auto vac = cvbs::vacuum_state(2);
    CHECK(cvbs::outcome_probability(vac, {0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cvbs::outcome_probability(vac, {1, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cvbs::outcome_probability(vac, {1, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("squeezed vacuum photon statistics match the closed form") {
    const double r = 0.5;
    const auto state = cvbs::squeeze_single(cvbs::vacuum_state(1), 0, r);
    CHECK(cvbs::outcome_probability(state, {0}) ==
          doctest::Approx(0.8868188839700739).epsilon(1e-12));
    CHECK(cvbs::outcome_probability(state, {2}) ==
          doctest::Approx(0.09469109156021772).epsilon(1e-10));
    CHECK(cvbs::outcome_probability(state, {4}) ==
          doctest::Approx(0.015166122952961575).epsilon(1e-10));
    CHECK(cvbs::outcome_probability(state, {1}) < 1e-10);
    CHECK(cvbs::outcome_probability(state, {3}) < 1e-10);
    CHECK(cvbs::outcome_probability(state, {5}) < 1e-10);
  }

  TEST_CASE("two-mode squeezed vacuum emits correlated pairs") {
    const double r = 0.5;
    const auto state = cvbs::two_mode_squeeze(cvbs::vacuum_state(2), 0, 1, r);
    for (int n = 0; n <= 3; ++n) {
      CHECK(cvbs::outcome_probability(state, {n, n}) ==
            doctest::Approx(cvbs::testing::tmsv_pair_probability(n, r)).epsilon(1e-10));
    }
    CHECK(cvbs::outcome_probability(state, {1, 0}) < 1e-12);
    CHECK(cvbs::outcome_probability(state, {2, 1}) < 1e-12);
  }

  TEST_CASE("an unphysical state is rejected") {
    const cvbs::CovarianceMatrix tight(0.25 * Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(cvbs::outcome_probability({tight}, {0}), cvbs::ValidationError);
  }

  TEST_CASE("outcome length must match the mode count") {
    const auto vac = cvbs::vacuum_state(2);
    CHECK_THROWS_AS(cvbs::outcome_probability(vac, {0}), cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::outcome_probability(vac, {0, 0, 0}), cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::outcome_probability(vac, {-1, 0}), cvbs::ValidationError);
  }

  TEST_CASE("enumerated distribution captures the stated mass") {
    const auto vac = cvbs::vacuum_state(1);
    const auto trivial = cvbs::enumerate_distribution(vac, 0);
    CHECK(trivial.probabilities.at({0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trivial.mass == doctest::Approx(1.0).epsilon(1e-12));

    const auto squeezed = cvbs::squeeze_single(cvbs::vacuum_state(1), 0, 0.5);
    const auto distribution = cvbs::enumerate_distribution(squeezed, 6);
    CHECK(distribution.mass >= 0.999);
    CHECK(distribution.mass <= 1.0 + 1e-9);
    for (const auto& [outcome, probability] : distribution.probabilities) {
      CHECK(probability >= 0.0);
      CHECK(probability <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("captured mass is monotone in the cutoff") {
    const auto state = cvbs::two_mode_squeeze(cvbs::vacuum_state(2), 0, 1, 0.8);
    double previous = 0.0;
    for (int cutoff = 0; cutoff <= 12; cutoff += 2) {
      const double mass = cvbs::enumerate_distribution(state, cutoff).mass;
      CHECK(mass >= previous - 1e-12);
      previous = mass;
    }
    CHECK(previous >= 0.99);
  }

  TEST_CASE("default cutoff reaches the target mass") {
    const auto squeezed = cvbs::squeeze_single(cvbs::vacuum_state(1), 0, 0.5);
    const int cutoff = cvbs::default_cutoff(squeezed);
    CHECK(cutoff >= 2);
    CHECK(cvbs::enumerate_distribution(squeezed, cutoff).mass >= 0.999);
    CHECK_THROWS_AS(cvbs::default_cutoff(
                        cvbs::squeeze_single(cvbs::vacuum_state(1), 0, 2.5), 0.999, 4),
                    cvbs::GuardError);
  }

  TEST_CASE("vacuum sampler yields only empty outcomes") {
    const auto samples = cvbs::sample_fock(cvbs::vacuum_state(2), 200, 2, 31);
    REQUIRE(samples.size() == 200);
    for (const auto& outcome : samples) {
      CHECK(outcome == FockOutcome{0, 0});
    }
  }

  TEST_CASE("sampling is deterministic per seed") {
    const auto state = cvbs::two_mode_squeeze(cvbs::vacuum_state(2), 0, 1, 0.5);
    const auto a = cvbs::sample_fock(state, 500, 8, 41);
    const auto b = cvbs::sample_fock(state, 500, 8, 41);
    CHECK(a == b);
    const auto c = cvbs::sample_fock(state, 500, 8, 42);
    CHECK(a != c);
  }

  TEST_CASE("empirical pair frequency brackets the enumerated value") {
    const double r = 0.5;
    const auto state = cvbs::two_mode_squeeze(cvbs::vacuum_state(2), 0, 1, r);
    const long n = 100000;
    const auto samples = cvbs::sample_fock(state, n, 8, 51);
    long pairs = 0;
    for (const auto& outcome : samples) {
      if (outcome == FockOutcome{1, 1}) ++pairs;
    }
    const double p = cvbs::testing::tmsv_pair_probability(1, r);
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(pairs) / n - p) < 3.0 * sigma);
  }

  TEST_CASE("insufficient captured mass refuses to sample") {
    const auto state = cvbs::two_mode_squeeze(cvbs::vacuum_state(2), 0, 1, 0.5);
    CHECK_THROWS_AS(cvbs::sample_fock(state, 10, 0, 61), cvbs::GuardError);
  }

  TEST_CASE("scattershot success probability evaluates the binomial form") {
    CHECK(cvbs::scattershot_success_probability(8, 64, 1.0 / 3.0) ==
          doctest::Approx(0.05474268864326597).epsilon(1e-12));
    CHECK(std::abs(cvbs::scattershot_success_probability(8, 64, 1.0 / 3.0) - 0.05475) <
          1e-5);
    CHECK(cvbs::scattershot_success_probability(0, 4, 1e-8) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cvbs::scattershot_success_probability(5, 4, 0.3),
                    cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::scattershot_success_probability(1, 4, 0.0),
                    cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::scattershot_success_probability(1, 4, 1.0),
                    cvbs::ValidationError);
  }

  TEST_CASE("success probability never exceeds one on a parameter grid") {
    for (int m : {1, 4, 16, 64}) {
      for (int n = 0; n <= m; n += std::max(1, m / 4)) {
        for (double chi : {0.1, 1.0 / 3.0, 0.7, 0.95}) {
          const double p = cvbs::scattershot_success_probability(n, m, chi);
          CHECK(p >= 0.0);
          CHECK(p <= 1.0);
        }
      }
    }
  }

  TEST_CASE("optimal chi maximizes the success probability") {
    CHECK(cvbs::optimal_chi(8, 64) == 1.0 / 3.0);
    CHECK(cvbs::optimal_chi(5, 5) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    const double chi_star = cvbs::optimal_chi(8, 64);
    const double step = 1e-4;
    const double up = cvbs::scattershot_success_probability(8, 64, chi_star + step);
    const double down = cvbs::scattershot_success_probability(8, 64, chi_star - step);
    const double derivative = (up - down) / (2.0 * step);
    CHECK(std::abs(derivative) < 1e-6);
    CHECK(cvbs::scattershot_success_probability(8, 64, chi_star) >= up);
    CHECK(cvbs::scattershot_success_probability(8, 64, chi_star) >= down);
  }

  TEST_CASE("decibel conversion round-trips") {
    CHECK(cvbs::chi_to_db(1.0 / 3.0) == doctest::Approx(3.010299956639812).epsilon(1e-12));
    CHECK(std::abs(cvbs::chi_to_db(1.0 / 3.0) - 3.0103) < 0.001);
    CHECK(cvbs::chi_to_db(0.0) == doctest::Approx(0.0));
    for (double chi : {0.1, 1.0 / 3.0, 0.6, 0.9}) {
      CHECK(cvbs::db_to_chi(cvbs::chi_to_db(chi)) == doctest::Approx(chi).epsilon(1e-12));
    }
  }
}
