#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <benchmark/benchmark.h>

#include "cvbs/fock.hpp"
#include "cvbs/hafnian.hpp"
#include "cvbs/homodyne.hpp"
#include "cvbs/interferometer.hpp"
#include "cvbs/rng.hpp"
#include "cvbs/symplectic.hpp"

namespace {

Eigen::MatrixXcd random_symmetric(int n, std::uint64_t seed) {
  cvbs::Rng rng(seed);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      a(i, j) = a(j, i) =
          std::complex<double>(0.3 * rng.gaussian(), 0.3 * rng.gaussian());
    }
  }
  return a;
}

cvbs::GaussianState squeezed_mesh_state(int modes, std::uint64_t seed) {
  auto state = cvbs::vacuum_state(modes);
  for (int mode = 0; mode < modes; ++mode) {
    state = cvbs::squeeze_single(state, mode, 0.4);
  }
  const auto u = cvbs::haar_random_unitary(modes, seed).unitary;
  return cvbs::apply_symplectic(state, cvbs::unitary_to_symplectic(u));
}

cvbs::LoopProgram brickwork_program(int bins) {
  std::vector<cvbs::LoopGate> gates;
  for (int layer = 0; layer < bins; ++layer) {
    for (int lo = layer % 2; lo + 1 < bins; lo += 2) {
      gates.push_back({cvbs::LoopGate::Kind::Beamsplitter, lo, lo + 1,
                       0.3 + 0.01 * layer, 0.1 * lo});
    }
  }
  return cvbs::LoopProgram(bins, gates);
}

void bm_hafnian_power_trace(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvbs::hafnian(a));
  }
}
BENCHMARK(bm_hafnian_power_trace)->Arg(8)->Arg(12)->Arg(16);

void bm_hafnian_contraction(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvbs::hafnian_by_contraction(a));
  }
}
BENCHMARK(bm_hafnian_contraction)->Arg(8)->Arg(12)->Arg(16);

void bm_outcome_probability(benchmark::State& state) {
  const auto gaussian = squeezed_mesh_state(3, 21);
  const cvbs::FockProbabilityEvaluator evaluator(gaussian);
  const std::vector<int> outcome = {2, 1, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluator.probability(outcome));
  }
}
BENCHMARK(bm_outcome_probability);

void bm_dual_homodyne_draw(benchmark::State& state) {
  const auto gaussian = squeezed_mesh_state(4, 31);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cvbs::draw_dual_homodyne_samples(gaussian, 10000, ++seed));
  }
}
BENCHMARK(bm_dual_homodyne_draw);

void bm_compile_loop_program(benchmark::State& state) {
  const auto program = brickwork_program(64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvbs::compile_loop_program(program));
  }
}
BENCHMARK(bm_compile_loop_program);

void bm_haar_unitary(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvbs::haar_random_unitary(64, ++seed));
  }
}
BENCHMARK(bm_haar_unitary);

void bm_apply_symplectic(benchmark::State& state) {
  const auto gaussian = squeezed_mesh_state(64, 41);
  const auto s =
      cvbs::unitary_to_symplectic(cvbs::haar_random_unitary(64, 7).unitary);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvbs::apply_symplectic(gaussian, s));
  }
}
BENCHMARK(bm_apply_symplectic);

}  // namespace

BENCHMARK_MAIN();
