#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvbs/covariance.hpp"
#include "cvbs/fock.hpp"

namespace cvbs {

// 17-significant-digit decimal form, enough to round-trip the exact double.
// All file formats use this for floating point fields.
std::string format_double(double value);

// FNV-1a over a byte string; used to stamp output files with a config hash.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

using HeaderFields = std::vector<std::pair<std::string, std::string>>;

// Covariance matrix text file: comment header line `# modes=m ordering=xpxp
// vacuum=1`, optional further `# key=value` lines, then 2m lines of 2m
// comma-separated values. Round-trip exact.
void write_covariance_file(const std::filesystem::path& path, const CovarianceMatrix& sigma,
                           const HeaderFields& extra = {});

struct CovarianceFile {
  CovarianceMatrix sigma;
  std::map<std::string, std::string> header;
};

CovarianceFile read_covariance_file(const std::filesystem::path& path);

// Dual-homodyne sample records: optional `# key=value` comment lines, then a
// column header `x1,p1,...,xm,pm`, then one sample per row.
void write_samples_csv(const std::filesystem::path& path,
                       const std::vector<Eigen::VectorXd>& samples, int modes,
                       const HeaderFields& extra = {});

// Complex matrix CSV with entries formatted `re+imj`, one matrix row per line.
void write_unitary_csv(const std::filesystem::path& path, const Eigen::MatrixXcd& u,
                       const HeaderFields& extra = {});
Eigen::MatrixXcd read_unitary_csv(const std::filesystem::path& path);

// Outcome distribution: `# key=value` comment lines (cutoff, mass, seed at
// minimum), a column header `n1,...,nm,probability`, then one outcome per row
// in lexicographic order.
void write_distribution_csv(const std::filesystem::path& path,
                            const OutcomeDistribution& distribution, int modes,
                            const HeaderFields& extra = {});

// Fock sample records: `# key=value` comment lines, a column header
// `n1,...,nm`, then one outcome per row.
void write_fock_samples_csv(const std::filesystem::path& path,
                            const std::vector<FockOutcome>& samples, int modes,
                            const HeaderFields& extra = {});

// Writes a string to a file, creating parent directories as needed.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace cvbs
