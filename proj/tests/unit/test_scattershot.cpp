#include <cmath>

#include <doctest.h>
#include <Eigen/Dense>

#include "cvbs/covariance.hpp"
#include "cvbs/error.hpp"
#include "cvbs/interferometer.hpp"
#include "cvbs/scattershot.hpp"
#include "cvbs/symplectic.hpp"

namespace {

Eigen::MatrixXd herald_block(const cvbs::GaussianState& state, int sources) {
  return state.cov.entries().topLeftCorner(2 * sources, 2 * sources);
}

}  // namespace

TEST_SUITE("scattershot") {
  TEST_CASE("single source with identity routing is a two-mode squeezed pair") {
    const double chi = 0.4;
    const auto arrangement =
        cvbs::build_scattershot_state(1, chi, Eigen::MatrixXcd::Identity(1, 1));
    const auto direct =
        cvbs::two_mode_squeeze(cvbs::vacuum_state(2), 0, 1, std::atanh(chi));
    CHECK((arrangement.state.cov.entries() - direct.cov.entries())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }

  TEST_CASE("two identity-routed sources form disjoint squeezed pairs") {
    const double chi = 1.0 / 3.0;
    const auto arrangement =
        cvbs::build_scattershot_state(2, chi, Eigen::MatrixXcd::Identity(2, 2));
    const double r = std::atanh(chi);
    auto expected = cvbs::vacuum_state(4);
    expected = cvbs::two_mode_squeeze(expected, 0, 2, r);
    expected = cvbs::two_mode_squeeze(expected, 1, 3, r);
    CHECK((arrangement.state.cov.entries() - expected.cov.entries())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }

  TEST_CASE("state covariance holds 16 m^2 entries") {
    const auto u = cvbs::haar_random_unitary(2, 404).unitary;
    const auto arrangement = cvbs::build_scattershot_state(2, 1.0 / 3.0, u);
    CHECK(arrangement.state.cov.entries().size() == 64);
    CHECK(arrangement.state.modes() == 4);
  }

  TEST_CASE("arrangement state is physical and pure") {
    const auto u = cvbs::haar_random_unitary(3, 11).unitary;
    const auto arrangement = cvbs::build_scattershot_state(3, 0.5, u);
    CHECK(cvbs::is_physical(arrangement.state.cov));
    CHECK(cvbs::determinant(arrangement.state.cov) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("herald group is blind to the signal unitary") {
    const double chi = 0.45;
    const auto u1 = cvbs::haar_random_unitary(3, 21).unitary;
    const auto u2 = cvbs::haar_random_unitary(3, 22).unitary;
    const auto a = cvbs::build_scattershot_state(3, chi, u1);
    const auto b = cvbs::build_scattershot_state(3, chi, u2);
    CHECK((herald_block(a.state, 3) - herald_block(b.state, 3)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((a.state.cov.entries() - b.state.cov.entries()).cwiseAbs().maxCoeff() > 1e-3);
  }

  TEST_CASE("chi outside the open unit interval is rejected") {
    const auto u = Eigen::MatrixXcd::Identity(1, 1);
    CHECK_THROWS_AS(cvbs::build_scattershot_state(1, 0.0, u), cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::build_scattershot_state(1, 1.0, u), cvbs::ValidationError);
    CHECK_THROWS_AS(cvbs::build_scattershot_state(1, -0.2, u), cvbs::ValidationError);
  }

  TEST_CASE("unitary dimension must match the source count") {
    CHECK_THROWS_AS(
        cvbs::build_scattershot_state(2, 0.3, Eigen::MatrixXcd::Identity(3, 3)),
        cvbs::ValidationError);
  }
}
