#include "cvbs/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cvbs/error.hpp"

namespace cvbs {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

double parse_double(const std::string& token, const std::string& where) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(where + ": bad number '" + token + "'");
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

void write_extra_header(std::ofstream& out, const HeaderFields& extra) {
  for (const auto& [key, value] : extra) {
    out << "# " << key << '=' << value << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

void write_covariance_file(const std::filesystem::path& path, const CovarianceMatrix& sigma,
                           const HeaderFields& extra) {
  std::ofstream out = open_for_write(path);
  out << "# modes=" << sigma.modes() << " ordering=xpxp vacuum=1\n";
  write_extra_header(out, extra);
  const int d = sigma.dim();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (c > 0) out << ',';
      out << format_double(sigma(r, c));
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed on " + path.string());
}

CovarianceFile read_covariance_file(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::map<std::string, std::string> header;
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool saw_format_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string token;
      while (fields >> token) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos) continue;
        header[token.substr(0, eq)] = token.substr(eq + 1);
      }
      saw_format_line = saw_format_line || header.contains("modes");
      continue;
    }
    std::vector<double> row;
    for (const std::string& field : split_csv(line)) {
      row.push_back(parse_double(field, where));
    }
    rows.push_back(std::move(row));
  }
  if (!saw_format_line) {
    throw ValidationError(path.string() + ": missing '# modes=...' header line");
  }
  if (header["ordering"] != "xpxp") {
    throw ValidationError(path.string() + ": unsupported ordering '" + header["ordering"] + "'");
  }
  if (header["vacuum"] != "1") {
    throw ValidationError(path.string() + ": unsupported vacuum normalization '" +
                          header["vacuum"] + "'");
  }
  int modes = 0;
  try {
    modes = std::stoi(header["modes"]);
  } catch (const std::exception&) {
    throw ValidationError(path.string() + ": bad mode count '" + header["modes"] + "'");
  }
  const int d = 2 * modes;
  if (static_cast<int>(rows.size()) != d) {
    throw ValidationError(path.string() + ": expected " + std::to_string(d) +
                          " matrix rows, found " + std::to_string(rows.size()));
  }
  Eigen::MatrixXd entries(d, d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != d) {
      throw ValidationError(path.string() + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[static_cast<std::size_t>(r)].size()) +
                            " values, expected " + std::to_string(d));
    }
    for (int c = 0; c < d; ++c) {
      entries(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return CovarianceFile{CovarianceMatrix(entries), std::move(header)};
}

void write_samples_csv(const std::filesystem::path& path,
                       const std::vector<Eigen::VectorXd>& samples, int modes,
                       const HeaderFields& extra) {
  std::ofstream out = open_for_write(path);
  write_extra_header(out, extra);
  for (int k = 0; k < modes; ++k) {
    if (k > 0) out << ',';
    out << 'x' << (k + 1) << ",p" << (k + 1);
  }
  out << '\n';
  for (const Eigen::VectorXd& s : samples) {
    if (s.size() != 2 * modes) {
      throw ValidationError("sample vector length does not match mode count");
    }
    for (int k = 0; k < s.size(); ++k) {
      if (k > 0) out << ',';
      out << format_double(s[k]);
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed on " + path.string());
}

namespace {

std::string format_complex(const std::complex<double>& z) {
  std::string text = format_double(z.real());
  const std::string imag = format_double(z.imag());
  if (!imag.empty() && imag[0] == '-') {
    text += imag;
  } else {
    text += '+' + imag;
  }
  text += 'j';
  return text;
}

std::complex<double> parse_complex(const std::string& token, const std::string& where) {
  std::string body = token;
  if (body.empty() || body.back() != 'j') {
    throw ValidationError(where + ": bad complex entry '" + token + "'");
  }
  body.pop_back();
  // Split at the sign that separates real and imaginary parts, skipping a
  // leading sign and exponent signs.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
    }
  }
  if (split == std::string::npos) {
    throw ValidationError(where + ": bad complex entry '" + token + "'");
  }
  const double re = parse_double(body.substr(0, split), where);
  const std::string imag_text = body.substr(split);
  const double im = parse_double(imag_text[0] == '+' ? imag_text.substr(1) : imag_text, where);
  return {re, im};
}

}  // namespace

void write_unitary_csv(const std::filesystem::path& path, const Eigen::MatrixXcd& u,
                       const HeaderFields& extra) {
  std::ofstream out = open_for_write(path);
  write_extra_header(out, extra);
  for (int r = 0; r < u.rows(); ++r) {
    for (int c = 0; c < u.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_complex(u(r, c));
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed on " + path.string());
}

Eigen::MatrixXcd read_unitary_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::vector<std::vector<std::complex<double>>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    std::vector<std::complex<double>> row;
    for (const std::string& field : split_csv(line)) {
      row.push_back(parse_complex(field, where));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path.string() + ": no matrix rows");
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw ValidationError(path.string() + ": ragged rows");
    }
  }
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      u(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return u;
}

void write_distribution_csv(const std::filesystem::path& path,
                            const OutcomeDistribution& distribution, int modes,
                            const HeaderFields& extra) {
  std::ofstream out = open_for_write(path);
  write_extra_header(out, extra);
  for (int k = 0; k < modes; ++k) out << 'n' << (k + 1) << ',';
  out << "probability\n";
  for (const auto& [outcome, p] : distribution.probabilities) {
    if (static_cast<int>(outcome.size()) != modes) {
      throw ValidationError("outcome mode count does not match");
    }
    for (int n : outcome) out << n << ',';
    out << format_double(p) << '\n';
  }
  if (!out) throw ValidationError("write failed on " + path.string());
}

void write_fock_samples_csv(const std::filesystem::path& path,
                            const std::vector<FockOutcome>& samples, int modes,
                            const HeaderFields& extra) {
  std::ofstream out = open_for_write(path);
  write_extra_header(out, extra);
  for (int k = 0; k < modes; ++k) {
    if (k > 0) out << ',';
    out << 'n' << (k + 1);
  }
  out << '\n';
  for (const FockOutcome& outcome : samples) {
    if (static_cast<int>(outcome.size()) != modes) {
      throw ValidationError("outcome mode count does not match");
    }
    for (std::size_t k = 0; k < outcome.size(); ++k) {
      if (k > 0) out << ',';
      out << outcome[k];
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed on " + path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out = open_for_write(path);
  out << content;
  if (!out) throw ValidationError("write failed on " + path.string());
}

}  // namespace cvbs
