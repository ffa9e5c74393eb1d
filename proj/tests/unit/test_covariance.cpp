#include <cmath>

#include <doctest.h>
#include <Eigen/Dense>

#include "cvbs/covariance.hpp"
#include "cvbs/error.hpp"
#include "cvbs/symplectic.hpp"

using cvbs::CovarianceMatrix;
using cvbs::GaussianState;

TEST_SUITE("covariance") {
  TEST_CASE("vacuum covariance is the identity") {
    CHECK(cvbs::vacuum_state(1).cov.entries().isApprox(Eigen::MatrixXd::Identity(2, 2)));
    CHECK(cvbs::vacuum_state(3).cov.entries().isApprox(Eigen::MatrixXd::Identity(6, 6)));
    CHECK(cvbs::min_quadrature_variance(cvbs::vacuum_state(2)) == doctest::Approx(1.0));
  }

  TEST_CASE("mode count zero is rejected") {
    CHECK_THROWS_AS(cvbs::vacuum_state(0), cvbs::ValidationError);
  }

  TEST_CASE("storage is exactly 4 m^2 entries") {
    for (int m : {1, 2, 5}) {
      const auto state = cvbs::vacuum_state(m);
      CHECK(state.cov.entries().size() == 4 * m * m);
    }
  }

  TEST_CASE("mean vector is pinned to zero") {
    const auto state = cvbs::squeeze_single(cvbs::vacuum_state(2), 0, 0.7);
    CHECK(state.mean().isZero(0.0));
    CHECK(state.mean().size() == 4);
  }

  TEST_CASE("construction rejects asymmetric and odd-dimension input") {
    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(4, 4);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(CovarianceMatrix{asym}, cvbs::ValidationError);
    CHECK_THROWS_AS(CovarianceMatrix{Eigen::MatrixXd::Identity(3, 3)},
                    cvbs::ValidationError);
  }

  TEST_CASE("symmetric within tolerance is symmetrized exactly") {
    Eigen::MatrixXd near = Eigen::MatrixXd::Identity(2, 2);
    near(0, 1) = 1e-13;
    const CovarianceMatrix sigma(near);
    CHECK(sigma(0, 1) == sigma(1, 0));
  }

  TEST_CASE("vacuum saturates the uncertainty bound") {
    const auto vac = CovarianceMatrix::vacuum(2);
    CHECK(cvbs::min_heisenberg_eigenvalue(vac) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cvbs::is_physical(vac));
  }

  TEST_CASE("a matrix below vacuum noise is unphysical") {
    const CovarianceMatrix tight(0.5 * Eigen::MatrixXd::Identity(2, 2));
    CHECK_FALSE(cvbs::is_physical(tight));
    CHECK(cvbs::min_heisenberg_eigenvalue(tight) < -0.1);
  }

  TEST_CASE("pure states have unit determinant") {
    const auto squeezed = cvbs::squeeze_single(cvbs::vacuum_state(1), 0, 0.9);
    CHECK(cvbs::determinant(squeezed.cov) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cvbs::is_pure(squeezed.cov));

    const auto lossy = cvbs::apply_uniform_loss(squeezed, 0.8);
    CHECK_FALSE(cvbs::is_pure(lossy.cov));
  }

  TEST_CASE("mean photon number of squeezed vacuum is sinh^2 r") {
    const double r = 0.6;
    const auto state = cvbs::squeeze_single(cvbs::vacuum_state(1), 0, r);
    const double expected = std::sinh(r) * std::sinh(r);
    CHECK(cvbs::mean_photon_number(state) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cvbs::mean_photon_number(cvbs::vacuum_state(3)) ==
          doctest::Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("symplectic form squares to minus identity") {
    const auto omega = cvbs::symplectic_form(3);
    CHECK((omega * omega + Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
    CHECK((omega + omega.transpose()).norm() == 0.0);
  }
}
