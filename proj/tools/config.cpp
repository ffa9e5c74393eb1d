#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cvbs/error.hpp"
#include "cvbs/io.hpp"
#include "cvbs/rng.hpp"

namespace cvbs::harness {

namespace {

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

double parse_double_field(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used == value.size()) return parsed;
  } catch (const std::exception&) {
  }
  throw ValidationError("config field '" + key + "': bad number '" + value + "'");
}

long parse_long_field(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const long parsed = std::stol(value, &used);
    if (used == value.size()) return parsed;
  } catch (const std::exception&) {
  }
  throw ValidationError("config field '" + key + "': bad integer '" + value + "'");
}

std::uint64_t parse_u64_field(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(value, &used);
    if (used == value.size()) return static_cast<std::uint64_t>(parsed);
  } catch (const std::exception&) {
  }
  throw ValidationError("config field '" + key + "': bad unsigned integer '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
  std::vector<double> list;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    list.push_back(parse_double_field(item, key));
  }
  if (list.empty()) throw ValidationError("config field '" + key + "': empty list");
  return list;
}

std::string unitary_content_token(const std::string& unitary) {
  // File-backed unitaries are identified by content, not path, so the hash
  // pins the experiment even if files move.
  for (const char* prefix : {"program:", "csv:"}) {
    if (unitary.starts_with(prefix)) {
      const std::filesystem::path path = unitary.substr(std::string(prefix).size());
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ValidationError("cannot open unitary file " + path.string());
      std::ostringstream bytes;
      bytes << in.rdbuf();
      return std::string(prefix) + hex64(fnv1a64(bytes.str()));
    }
  }
  return unitary;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (modes < 1) throw ValidationError("modes must be >= 1");
  if (input != "squeezed" && input != "scattershot") {
    throw ValidationError("input must be 'squeezed' or 'scattershot', got '" + input + "'");
  }
  if (input == "squeezed") {
    if (squeezing.size() != 1 && static_cast<int>(squeezing.size()) != modes) {
      throw ValidationError("squeezing needs one value per mode (or one value for all), got " +
                            std::to_string(squeezing.size()) + " for " +
                            std::to_string(modes) + " modes");
    }
    for (double r : squeezing) {
      if (!std::isfinite(r)) throw ValidationError("squeezing values must be finite");
    }
  } else {
    if (!(chi > 0.0 && chi < 1.0)) {
      throw ValidationError("chi must lie strictly inside (0, 1)");
    }
  }
  const bool known_unitary = unitary == "identity" || unitary == "haar" ||
                             unitary.starts_with("program:") || unitary.starts_with("csv:");
  if (!known_unitary) {
    throw ValidationError("unitary must be identity, haar, program:<path> or csv:<path>");
  }
  if (!(loss_eta >= 0.0 && loss_eta <= 1.0)) {
    throw ValidationError("loss_eta must lie in [0, 1]");
  }
  if (homodyne_samples < 1) throw ValidationError("homodyne sample count K must be >= 1");
  if (!(chernoff_eta > 0.0 && chernoff_eta < 0.5)) {
    throw ValidationError("chernoff_eta must lie strictly inside (0, 1/2)");
  }
  if (!(chernoff_delta > 0.0)) throw ValidationError("chernoff_delta must be > 0");
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be >= 0");
  if (cutoff < -1 || cutoff > 16) {
    throw ValidationError("cutoff must be 'auto' or an integer in [0, 16]");
  }
  if (fock_samples < 1) throw ValidationError("fock sample count N must be >= 1");
  if (!(budget_calibration > 0.0)) throw ValidationError("budget_calibration must be > 0");
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "modes") {
      config.modes = static_cast<int>(parse_long_field(value, key));
    } else if (key == "input") {
      config.input = value;
    } else if (key == "squeezing") {
      config.squeezing = parse_double_list(value, key);
    } else if (key == "chi") {
      config.chi = parse_double_field(value, key);
    } else if (key == "unitary") {
      config.unitary = value;
    } else if (key == "haar_seed") {
      config.haar_seed = parse_u64_field(value, key);
    } else if (key == "loss_eta") {
      config.loss_eta = parse_double_field(value, key);
    } else if (key == "homodyne_samples") {
      config.homodyne_samples = parse_long_field(value, key);
    } else if (key == "chernoff_eta") {
      config.chernoff_eta = parse_double_field(value, key);
    } else if (key == "chernoff_delta") {
      config.chernoff_delta = parse_double_field(value, key);
    } else if (key == "epsilon") {
      config.epsilon = parse_double_field(value, key);
    } else if (key == "cutoff") {
      config.cutoff = (value == "auto") ? -1 : static_cast<int>(parse_long_field(value, key));
    } else if (key == "fock_samples") {
      config.fock_samples = parse_long_field(value, key);
    } else if (key == "budget_calibration") {
      config.budget_calibration = parse_double_field(value, key);
    } else if (key == "seed") {
      config.seed = parse_u64_field(value, key);
    } else {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": unknown config key '" + key + "'");
    }
  }
  return config;
}

std::uint64_t resolved_haar_seed(const ExperimentConfig& config) {
  return config.haar_seed ? *config.haar_seed : derive_stream(config.seed, kHaarStream);
}

std::string canonical_serialization(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "budget_calibration=" << format_double(config.budget_calibration) << '\n';
  out << "chernoff_delta=" << format_double(config.chernoff_delta) << '\n';
  out << "chernoff_eta=" << format_double(config.chernoff_eta) << '\n';
  if (config.input == "scattershot") {
    out << "chi=" << format_double(config.chi) << '\n';
  }
  out << "cutoff=" << (config.cutoff < 0 ? std::string("auto") : std::to_string(config.cutoff))
      << '\n';
  out << "epsilon=" << format_double(config.epsilon) << '\n';
  out << "fock_samples=" << config.fock_samples << '\n';
  out << "homodyne_samples=" << config.homodyne_samples << '\n';
  out << "input=" << config.input << '\n';
  out << "loss_eta=" << format_double(config.loss_eta) << '\n';
  out << "modes=" << config.modes << '\n';
  out << "seed=" << config.seed << '\n';
  if (config.input == "squeezed") {
    out << "squeezing=";
    for (std::size_t i = 0; i < config.squeezing.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(config.squeezing[i]);
    }
    out << '\n';
  }
  std::string unitary_token = unitary_content_token(config.unitary);
  if (config.unitary == "haar") {
    unitary_token += ":" + std::to_string(resolved_haar_seed(config));
  }
  out << "unitary=" << unitary_token << '\n';
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  return hex64(fnv1a64(canonical_serialization(config)));
}

}  // namespace cvbs::harness
