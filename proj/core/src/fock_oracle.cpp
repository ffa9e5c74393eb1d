#include "cvbs/fock_oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "cvbs/error.hpp"

namespace cvbs {

namespace {

using Complex = std::complex<double>;

double factorial(int n) {
  double result = 1.0;
  for (int k = 2; k <= n; ++k) result *= static_cast<double>(k);
  return result;
}

void check_desk_scale(int modes, int cutoff) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  if (cutoff < 0) throw ValidationError("cutoff must be >= 0");
  if (modes > kOracleMaxModes) {
    throw GuardError("oracle is desk scale only, mode count " + std::to_string(modes) +
                     " exceeds " + std::to_string(kOracleMaxModes));
  }
  if (cutoff > kOracleMaxCutoff) {
    throw GuardError("oracle is desk scale only, cutoff " + std::to_string(cutoff) +
                     " exceeds " + std::to_string(kOracleMaxCutoff));
  }
}

void check_circuit(const OracleCircuit& circuit) {
  std::vector<int> touched(static_cast<std::size_t>(circuit.modes), 0);
  const auto touch = [&](int mode) {
    if (mode < 0 || mode >= circuit.modes) {
      throw ValidationError("squeezer mode index out of range");
    }
    if (++touched[static_cast<std::size_t>(mode)] > 1) {
      throw ValidationError("squeezers must act on pairwise disjoint modes");
    }
  };
  for (const OracleSqueezer& sq : circuit.squeezers) touch(sq.mode);
  for (const OracleTwoModeSqueezer& sq : circuit.pair_squeezers) {
    if (sq.mode_a == sq.mode_b) {
      throw ValidationError("two-mode squeezer needs two distinct modes");
    }
    touch(sq.mode_a);
    touch(sq.mode_b);
  }
  if (circuit.unitary.size() != 0) {
    if (circuit.unitary.rows() != circuit.modes || circuit.unitary.cols() != circuit.modes) {
      throw ValidationError("oracle unitary must be " + std::to_string(circuit.modes) +
                            " x " + std::to_string(circuit.modes));
    }
    const double residual = (circuit.unitary.adjoint() * circuit.unitary -
                             Eigen::MatrixXcd::Identity(circuit.modes, circuit.modes))
                                .cwiseAbs()
                                .maxCoeff();
    if (residual > 1e-10) {
      throw ValidationError("oracle unitary is not unitary, residual " +
                            std::to_string(residual));
    }
  }
}

// Amplitude of |2t> in single-mode squeezed vacuum with gain r (x squeezed
// for r > 0): (-tanh r)^t sqrt((2t)!) / (2^t t!) / sqrt(cosh r).
double single_squeezer_amplitude(double r, int n) {
  if (n % 2 != 0) return 0.0;
  const int t = n / 2;
  const double th = std::tanh(r);
  double value = 1.0 / std::sqrt(std::cosh(r));
  value *= std::pow(-th, t);
  value *= std::sqrt(factorial(2 * t)) / (std::pow(2.0, t) * factorial(t));
  return value;
}

// Amplitude of |n, n> in two-mode squeezed vacuum: (tanh r)^n / cosh r.
double pair_squeezer_amplitude(double r, int n) {
  return std::pow(std::tanh(r), n) / std::cosh(r);
}

}  // namespace

TruncatedFockState::TruncatedFockState(int modes, int cutoff, std::vector<FockOutcome> basis,
                                       Eigen::VectorXcd amplitudes)
    : modes_(modes), cutoff_(cutoff), basis_(std::move(basis)),
      amplitudes_(std::move(amplitudes)) {
  if (static_cast<Eigen::Index>(basis_.size()) != amplitudes_.size()) {
    throw ValidationError("basis and amplitude vector sizes differ");
  }
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    index_.emplace(basis_[static_cast<std::size_t>(i)], i);
  }
}

std::complex<double> TruncatedFockState::amplitude(const FockOutcome& outcome) const {
  if (static_cast<int>(outcome.size()) != modes_) {
    throw ValidationError("outcome mode count mismatch");
  }
  const auto it = index_.find(outcome);
  if (it == index_.end()) {
    throw GuardError("outcome lies beyond the truncation cutoff, raise the cutoff");
  }
  return amplitudes_[it->second];
}

double TruncatedFockState::captured_mass() const { return amplitudes_.squaredNorm(); }

TruncatedFockState build_oracle_state(const OracleCircuit& circuit, int cutoff) {
  check_desk_scale(circuit.modes, cutoff);
  check_circuit(circuit);

  std::vector<FockOutcome> basis = enumerate_outcomes(circuit.modes, cutoff);
  const int size = static_cast<int>(basis.size());

  // Product state of closed-form source expansions; untouched modes vacuum.
  std::vector<int> single_of_mode(static_cast<std::size_t>(circuit.modes), -1);
  std::vector<int> pair_of_mode(static_cast<std::size_t>(circuit.modes), -1);
  for (int s = 0; s < static_cast<int>(circuit.squeezers.size()); ++s) {
    single_of_mode[static_cast<std::size_t>(circuit.squeezers[static_cast<std::size_t>(s)].mode)] = s;
  }
  for (int s = 0; s < static_cast<int>(circuit.pair_squeezers.size()); ++s) {
    pair_of_mode[static_cast<std::size_t>(circuit.pair_squeezers[static_cast<std::size_t>(s)].mode_a)] = s;
    pair_of_mode[static_cast<std::size_t>(circuit.pair_squeezers[static_cast<std::size_t>(s)].mode_b)] = s;
  }

  Eigen::VectorXcd amplitudes(size);
  for (int i = 0; i < size; ++i) {
    const FockOutcome& occ = basis[static_cast<std::size_t>(i)];
    double value = 1.0;
    for (int k = 0; k < circuit.modes && value != 0.0; ++k) {
      const int n = occ[static_cast<std::size_t>(k)];
      const int single = single_of_mode[static_cast<std::size_t>(k)];
      const int pair = pair_of_mode[static_cast<std::size_t>(k)];
      if (single >= 0) {
        value *= single_squeezer_amplitude(
            circuit.squeezers[static_cast<std::size_t>(single)].r, n);
      } else if (pair >= 0) {
        const OracleTwoModeSqueezer& sq =
            circuit.pair_squeezers[static_cast<std::size_t>(pair)];
        if (k == sq.mode_a) {
          const int partner = occ[static_cast<std::size_t>(sq.mode_b)];
          value *= (n == partner) ? pair_squeezer_amplitude(sq.r, n) : 0.0;
        }
        // mode_b contributes through its mode_a partner factor.
      } else {
        if (n != 0) value = 0.0;
      }
    }
    amplitudes[i] = Complex(value, 0.0);
  }

  if (circuit.unitary.size() != 0) {
    // Passive evolution conserves total photon number, so each sector
    // transforms independently and exactly: <out|U|in> is a permanent of the
    // unitary with rows repeated per output occupation and columns per input
    // occupation.
    std::vector<std::vector<int>> sectors(static_cast<std::size_t>(cutoff) + 1);
    for (int i = 0; i < size; ++i) {
      int total = 0;
      for (int n : basis[static_cast<std::size_t>(i)]) total += n;
      sectors[static_cast<std::size_t>(total)].push_back(i);
    }
    Eigen::VectorXcd evolved = Eigen::VectorXcd::Zero(size);
    std::vector<int> rows, cols;
    for (int s = 0; s <= cutoff; ++s) {
      const std::vector<int>& sector = sectors[static_cast<std::size_t>(s)];
      for (int out_idx : sector) {
        const FockOutcome& out = basis[static_cast<std::size_t>(out_idx)];
        rows.clear();
        for (int k = 0; k < circuit.modes; ++k) {
          for (int c = 0; c < out[static_cast<std::size_t>(k)]; ++c) rows.push_back(k);
        }
        double out_norm = 1.0;
        for (int n : out) out_norm *= factorial(n);
        Complex total(0.0, 0.0);
        for (int in_idx : sector) {
          const Complex in_amp = amplitudes[in_idx];
          if (std::abs(in_amp) < 1e-300) continue;
          const FockOutcome& in = basis[static_cast<std::size_t>(in_idx)];
          cols.clear();
          for (int k = 0; k < circuit.modes; ++k) {
            for (int c = 0; c < in[static_cast<std::size_t>(k)]; ++c) cols.push_back(k);
          }
          double in_norm = 1.0;
          for (int n : in) in_norm *= factorial(n);
          Eigen::MatrixXcd sub(s, s);
          for (int r = 0; r < s; ++r) {
            for (int c = 0; c < s; ++c) {
              sub(r, c) = circuit.unitary(rows[static_cast<std::size_t>(r)],
                                          cols[static_cast<std::size_t>(c)]);
            }
          }
          total += permanent(sub) / std::sqrt(out_norm * in_norm) * in_amp;
        }
        evolved[out_idx] = total;
      }
    }
    amplitudes.swap(evolved);
  }

  return TruncatedFockState(circuit.modes, cutoff, std::move(basis), std::move(amplitudes));
}

OracleEvaluation oracle_probability_detailed(const OracleCircuit& circuit,
                                             const FockOutcome& outcome, int cutoff) {
  check_desk_scale(circuit.modes, cutoff);
  if (static_cast<int>(outcome.size()) != circuit.modes) {
    throw ValidationError("outcome mode count mismatch");
  }
  int total = 0;
  for (int n : outcome) {
    if (n < 0) throw ValidationError("photon counts must be non-negative");
    total += n;
  }
  if (total > cutoff) {
    throw GuardError("outcome has " + std::to_string(total) +
                     " photons, beyond cutoff " + std::to_string(cutoff) +
                     ", raise the cutoff");
  }
  const TruncatedFockState state = build_oracle_state(circuit, cutoff);
  const double p = std::norm(state.amplitude(outcome));
  return OracleEvaluation{p, 1.0 - state.captured_mass()};
}

double oracle_probability(const OracleCircuit& circuit, const FockOutcome& outcome,
                          int cutoff) {
  return oracle_probability_detailed(circuit, outcome, cutoff).probability;
}

std::complex<double> permanent(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw ValidationError("permanent input must be square");
  }
  const int n = static_cast<int>(matrix.rows());
  if (n == 0) return Complex(1.0, 0.0);
  if (n > 24) throw GuardError("permanent input too large for exact evaluation");

  // Ryser with Gray-code subset updates:
  //   Per(A) = (-1)^n sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
  Complex total(0.0, 0.0);
  std::uint64_t gray = 0;
  const std::uint64_t limit = 1ULL << n;
  for (std::uint64_t counter = 1; counter < limit; ++counter) {
    const std::uint64_t next_gray = counter ^ (counter >> 1);
    const std::uint64_t changed = next_gray ^ gray;
    const int col = std::countr_zero(changed);
    if (next_gray & changed) {
      row_sums += matrix.col(col);
    } else {
      row_sums -= matrix.col(col);
    }
    gray = next_gray;
    Complex product(1.0, 0.0);
    for (int r = 0; r < n; ++r) product *= row_sums[r];
    const int bits = std::popcount(gray);
    total += ((n - bits) % 2 != 0) ? -product : product;
  }
  return total;
}

}  // namespace cvbs
