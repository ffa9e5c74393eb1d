#include "cvbs/interferometer.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cvbs/error.hpp"
#include "cvbs/rng.hpp"

namespace cvbs {

namespace {

void validate_gates(int bins, const std::vector<LoopGate>& gates) {
  if (bins < 1) throw ValidationError("bin count must be >= 1");
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const LoopGate& gate = gates[g];
    const std::string where = "gate " + std::to_string(g + 1);
    if (gate.bin_a < 0 || gate.bin_a >= bins) {
      throw ValidationError(where + ": bin index out of range");
    }
    if (gate.kind == LoopGate::Kind::Beamsplitter) {
      if (gate.bin_b < 0 || gate.bin_b >= bins) {
        throw ValidationError(where + ": bin index out of range");
      }
      if (std::abs(gate.bin_a - gate.bin_b) != 1) {
        throw ValidationError(where + ": beamsplitter bins must be adjacent");
      }
    }
  }
}

double parse_number(const std::string& token, const std::string& where) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ValidationError(where + ": bad number '" + token + "'");
  }
  if (used != token.size()) {
    throw ValidationError(where + ": bad number '" + token + "'");
  }
  return value;
}

int parse_bin(const std::string& token, const std::string& where) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    throw ValidationError(where + ": bad bin index '" + token + "'");
  }
  if (used != token.size() || value < 1) {
    throw ValidationError(where + ": bad bin index '" + token + "'");
  }
  return static_cast<int>(value) - 1;
}

}  // namespace

LoopProgram::LoopProgram(int bins, std::vector<LoopGate> gates) : bins_(bins), gates_(std::move(gates)) {
  validate_gates(bins_, gates_);
}

LoopProgram LoopProgram::parse(std::istream& input, int bins) {
  std::vector<LoopGate> gates;
  std::string line;
  int line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string op;
    if (!(fields >> op)) continue;
    const std::string where = "line " + std::to_string(line_no);
    LoopGate gate;
    std::string a, b, theta, phi;
    if (op == "BS") {
      if (!(fields >> a >> b >> theta >> phi)) {
        throw ValidationError(where + ": BS needs <bin_a> <bin_b> <theta> <phi>");
      }
      gate.kind = LoopGate::Kind::Beamsplitter;
      gate.bin_a = parse_bin(a, where);
      gate.bin_b = parse_bin(b, where);
      gate.theta = parse_number(theta, where);
      gate.phi = parse_number(phi, where);
    } else if (op == "PHASE") {
      if (!(fields >> a >> phi)) {
        throw ValidationError(where + ": PHASE needs <bin> <phi>");
      }
      gate.kind = LoopGate::Kind::Phase;
      gate.bin_a = parse_bin(a, where);
      gate.phi = parse_number(phi, where);
    } else {
      throw ValidationError(where + ": unknown gate '" + op + "'");
    }
    std::string extra;
    if (fields >> extra) {
      throw ValidationError(where + ": trailing token '" + extra + "'");
    }
    gates.push_back(gate);
  }
  return LoopProgram(bins, std::move(gates));
}

LoopProgram LoopProgram::load(const std::filesystem::path& path, int bins) {
  std::ifstream input(path);
  if (!input) throw ValidationError("cannot open program file " + path.string());
  return parse(input, bins);
}

std::string LoopProgram::serialize() const {
  std::ostringstream out;
  out.precision(17);
  for (const LoopGate& gate : gates_) {
    if (gate.kind == LoopGate::Kind::Beamsplitter) {
      out << "BS " << (gate.bin_a + 1) << ' ' << (gate.bin_b + 1) << ' ' << gate.theta << ' '
          << gate.phi << '\n';
    } else {
      out << "PHASE " << (gate.bin_a + 1) << ' ' << gate.phi << '\n';
    }
  }
  return out.str();
}

CompiledInterferometer compile_loop_program(const LoopProgram& program) {
  const int m = program.bins();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  for (const LoopGate& gate : program.gates()) {
    if (gate.kind == LoopGate::Kind::Beamsplitter) {
      const std::complex<double> pre = std::exp(std::complex<double>(0.0, gate.phi));
      const double c = std::cos(gate.theta);
      const double s = std::sin(gate.theta);
      const Eigen::RowVectorXcd row_a = u.row(gate.bin_a);
      const Eigen::RowVectorXcd row_b = u.row(gate.bin_b);
      u.row(gate.bin_a) = c * pre * row_a + s * row_b;
      u.row(gate.bin_b) = s * pre * row_a - c * row_b;
    } else {
      u.row(gate.bin_a) *= std::exp(std::complex<double>(0.0, gate.phi));
    }
  }
  return CompiledInterferometer{std::move(u)};
}

CompiledInterferometer haar_random_unitary(int modes, std::uint64_t seed) {
  if (modes < 1) throw ValidationError("mode count must be >= 1");
  Rng rng(seed);
  Eigen::MatrixXcd ginibre(modes, modes);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < modes; ++j) {
    for (int k = 0; k < modes; ++k) {
      ginibre(j, k) = scale * std::complex<double>(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < modes; ++k) {
    const std::complex<double> d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= (mag > 0.0) ? (d / mag) : std::complex<double>(1.0, 0.0);
  }
  return CompiledInterferometer{std::move(q)};
}

}  // namespace cvbs
