#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cvbs {

// Hafnian of a 2k x 2k symmetric complex matrix: the sum over all perfect
// matchings of the index set of the product of matched entries. Computed by
// the power-trace inclusion-exclusion algorithm, exact up to floating point,
// cost O(2^k k^3) with k = dim/2.
//
// The empty matrix has hafnian 1. Input must be square, of even dimension,
// and symmetric to within 1e-10 of its largest entry.
std::complex<double> hafnian(const Eigen::MatrixXcd& matrix);

// Same value by direct first-index contraction over the (2k-1)!! matchings.
// Exponentially slower; retained as an independent exact route.
std::complex<double> hafnian_by_contraction(const Eigen::MatrixXcd& matrix);

}  // namespace cvbs
