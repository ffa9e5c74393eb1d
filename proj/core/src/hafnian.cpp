#include "cvbs/hafnian.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "cvbs/error.hpp"

namespace cvbs {

namespace {

using Complex = std::complex<double>;

void check_input(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw ValidationError("hafnian input must be square");
  }
  if (matrix.rows() % 2 != 0) {
    throw ValidationError("hafnian input must have even dimension");
  }
  if (matrix.rows() == 0) return;
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw ValidationError("hafnian input must be symmetric, max asymmetry " +
                          std::to_string(asym));
  }
}

// Coefficient of x^n in exp(sum_{j=1..n} p[j] x^j), p indexed from 1.
Complex exp_series_coefficient(const std::vector<Complex>& p, int n) {
  std::vector<Complex> coeff(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
  coeff[0] = Complex(1.0, 0.0);
  for (int j = 1; j <= n; ++j) {
    std::vector<Complex> next(coeff.size(), Complex(0.0, 0.0));
    for (int t = 0; t <= n; ++t) {
      Complex total(0.0, 0.0);
      Complex power(1.0, 0.0);
      double factorial = 1.0;
      for (int k = 0; k * j <= t; ++k) {
        if (k > 0) {
          power *= p[static_cast<std::size_t>(j)];
          factorial *= static_cast<double>(k);
        }
        total += coeff[static_cast<std::size_t>(t - k * j)] * power / factorial;
      }
      next[static_cast<std::size_t>(t)] = total;
    }
    coeff.swap(next);
  }
  return coeff[static_cast<std::size_t>(n)];
}

Complex contraction(const Eigen::MatrixXcd& matrix, std::vector<int>& indices, int length) {
  if (length == 0) return Complex(1.0, 0.0);
  Complex total(0.0, 0.0);
  for (int t = 1; t < length; ++t) {
    std::swap(indices[1], indices[t]);
    const Complex weight = matrix(indices[0], indices[1]);
    if (weight != Complex(0.0, 0.0)) {
      std::vector<int> rest(indices.begin() + 2, indices.begin() + length);
      total += weight * contraction(matrix, rest, length - 2);
    }
    std::swap(indices[1], indices[t]);
  }
  return total;
}

}  // namespace

std::complex<double> hafnian(const Eigen::MatrixXcd& matrix) {
  check_input(matrix);
  const int pairs = static_cast<int>(matrix.rows()) / 2;
  if (pairs == 0) return Complex(1.0, 0.0);

  Complex total(0.0, 0.0);
  const std::uint64_t subset_count = 1ULL << pairs;
  std::vector<int> members;
  members.reserve(static_cast<std::size_t>(pairs));
  for (std::uint64_t mask = 1; mask < subset_count; ++mask) {
    members.clear();
    for (int i = 0; i < pairs; ++i) {
      if (mask & (1ULL << i)) members.push_back(i);
    }
    const int s = static_cast<int>(members.size());

    // Rows of the pair-submatrix with the two rows of every pair swapped,
    // which realizes the multiplication by the pairwise swap matrix X.
    Eigen::MatrixXcd b(2 * s, 2 * s);
    for (int r = 0; r < s; ++r) {
      for (int c = 0; c < s; ++c) {
        const int pr = members[static_cast<std::size_t>(r)];
        const int pc = members[static_cast<std::size_t>(c)];
        b(2 * r, 2 * c) = matrix(2 * pr + 1, 2 * pc);
        b(2 * r, 2 * c + 1) = matrix(2 * pr + 1, 2 * pc + 1);
        b(2 * r + 1, 2 * c) = matrix(2 * pr, 2 * pc);
        b(2 * r + 1, 2 * c + 1) = matrix(2 * pr, 2 * pc + 1);
      }
    }

    std::vector<Complex> traces(static_cast<std::size_t>(pairs) + 1, Complex(0.0, 0.0));
    Eigen::MatrixXcd power = b;
    traces[1] = power.trace() / 2.0;
    for (int j = 2; j <= pairs; ++j) {
      power = power * b;
      traces[static_cast<std::size_t>(j)] = power.trace() / (2.0 * j);
    }

    const Complex term = exp_series_coefficient(traces, pairs);
    const bool negative = (pairs - s) % 2 != 0;
    total += negative ? -term : term;
  }
  return total;
}

std::complex<double> hafnian_by_contraction(const Eigen::MatrixXcd& matrix) {
  check_input(matrix);
  const int dim = static_cast<int>(matrix.rows());
  if (dim == 0) return Complex(1.0, 0.0);
  std::vector<int> indices(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) indices[static_cast<std::size_t>(i)] = i;
  return contraction(matrix, indices, dim);
}

}  // namespace cvbs
