#include <cmath>
#include <sstream>

#include <doctest.h>
#include <Eigen/Dense>

#include "cvbs/error.hpp"
#include "cvbs/interferometer.hpp"
#include "cvbs/symplectic.hpp"

using cvbs::LoopGate;
using cvbs::LoopProgram;

namespace {

LoopGate bs(int a, int b, double theta, double phi) {
  LoopGate gate;
  gate.kind = LoopGate::Kind::Beamsplitter;
  gate.bin_a = a;
  gate.bin_b = b;
  gate.theta = theta;
  gate.phi = phi;
  return gate;
}

LoopGate phase(int bin, double phi) {
  LoopGate gate;
  gate.kind = LoopGate::Kind::Phase;
  gate.bin_a = bin;
  gate.phi = phi;
  return gate;
}

}  // namespace

TEST_SUITE("interferometer") {
  TEST_CASE("empty program compiles to the identity") {
    const auto compiled = cvbs::compile_loop_program(LoopProgram(3, {}));
    CHECK(compiled.unitary.isApprox(Eigen::MatrixXcd::Identity(3, 3)));
  }

  TEST_CASE("balanced splitter compiles to the normalized Hadamard block") {
    const auto compiled =
        cvbs::compile_loop_program(LoopProgram(2, {bs(0, 1, M_PI / 4.0, 0.0)}));
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd expected(2, 2);
    expected << s, s, s, -s;
    CHECK((compiled.unitary - expected).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("gate order means leftmost applied first") {
    const auto g1 = bs(0, 1, 0.3, 0.5);
    const auto g2 = bs(1, 2, 1.1, 0.0);
    const auto g3 = phase(0, 2.2);
    const auto u_all = cvbs::compile_loop_program(LoopProgram(3, {g1, g2, g3})).unitary;
    const auto u1 = cvbs::compile_loop_program(LoopProgram(3, {g1})).unitary;
    const auto u2 = cvbs::compile_loop_program(LoopProgram(3, {g2})).unitary;
    const auto u3 = cvbs::compile_loop_program(LoopProgram(3, {g3})).unitary;
    CHECK((u_all - u3 * u2 * u1).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("compiled programs are unitary and lift to symplectic matrices") {
    const LoopProgram program(4, {bs(0, 1, 0.4, 1.0), phase(2, 0.8), bs(2, 3, 1.2, 2.5),
                                  bs(1, 2, 0.9, 0.1), phase(0, 5.5)});
    const auto compiled = cvbs::compile_loop_program(program);
    const auto gram = compiled.unitary.adjoint() * compiled.unitary;
    CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);

    const auto s = cvbs::unitary_to_symplectic(compiled.unitary);
    CHECK(cvbs::symplectic_residual(s.entries()) < 1e-12);
  }

  TEST_CASE("program validation enforces range and adjacency") {
    CHECK_THROWS_AS(LoopProgram(2, {bs(1, 2, 0.1, 0.0)}), cvbs::ValidationError);
    CHECK_THROWS_AS(LoopProgram(3, {bs(0, 2, 0.1, 0.0)}), cvbs::ValidationError);
    CHECK_THROWS_AS(LoopProgram(2, {phase(2, 0.1)}), cvbs::ValidationError);
  }

  TEST_CASE("program text round-trips through parse and serialize") {
    std::istringstream source(
        "# two coupled bins\n"
        "BS 1 2 0.78539816339744828 0\n"
        "PHASE 2 1.5\n"
        "\n"
        "BS 2 3 0.25 0.125 # trailing comment\n");
    const auto program = LoopProgram::parse(source, 3);
    CHECK(program.gates().size() == 3);
    CHECK(program.gates()[0].kind == LoopGate::Kind::Beamsplitter);
    CHECK(program.gates()[1].kind == LoopGate::Kind::Phase);
    CHECK(program.gates()[1].bin_a == 1);

    std::istringstream again(program.serialize());
    const auto reparsed = LoopProgram::parse(again, 3);
    const auto u_first = cvbs::compile_loop_program(program).unitary;
    const auto u_second = cvbs::compile_loop_program(reparsed).unitary;
    CHECK((u_first - u_second).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("malformed program lines are rejected") {
    std::istringstream bad_opcode("ROTATE 1 0.5\n");
    CHECK_THROWS_AS(LoopProgram::parse(bad_opcode, 2), cvbs::ValidationError);
    std::istringstream bad_number("BS 1 2 abc 0\n");
    CHECK_THROWS_AS(LoopProgram::parse(bad_number, 2), cvbs::ValidationError);
    std::istringstream trailing("PHASE 1 0.5 9\n");
    CHECK_THROWS_AS(LoopProgram::parse(trailing, 2), cvbs::ValidationError);
    std::istringstream missing("BS 1 2 0.5\n");
    CHECK_THROWS_AS(LoopProgram::parse(missing, 2), cvbs::ValidationError);
  }

  TEST_CASE("haar unitaries are deterministic per seed and unitary") {
    const auto a = cvbs::haar_random_unitary(5, 31);
    const auto b = cvbs::haar_random_unitary(5, 31);
    CHECK((a.unitary - b.unitary).cwiseAbs().maxCoeff() == 0.0);

    const auto c = cvbs::haar_random_unitary(5, 32);
    CHECK((a.unitary - c.unitary).cwiseAbs().maxCoeff() > 1e-3);

    const auto gram = a.unitary.adjoint() * a.unitary;
    CHECK((gram - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);

    const auto single = cvbs::haar_random_unitary(1, 7);
    CHECK(std::abs(single.unitary(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(cvbs::haar_random_unitary(0, 7), cvbs::ValidationError);
  }

  TEST_CASE("haar first-entry modulus matches the 1/m moment") {
    const int m = 8;
    const int draws = 10000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
      const auto u = cvbs::haar_random_unitary(m, 1000 + i);
      sum += std::norm(u.unitary(0, 0));
    }
    const double mean = sum / draws;
    const double variance = 2.0 / (m * (m + 1.0)) - 1.0 / (m * m);
    const double three_sigma = 3.0 * std::sqrt(variance / draws);
    CHECK(std::abs(mean - 1.0 / m) < three_sigma);
  }
}
