#pragma once

#include <cmath>
#include <vector>

namespace cvbs::testing {

// Amplitude of |2t> for single-mode squeezed vacuum with gain r.
inline double squeezed_vacuum_amplitude(int t, double r) {
  double log_fact = 0.0;
  for (int k = 2; k <= 2 * t; ++k) log_fact += std::log(static_cast<double>(k));
  double log_t_fact = 0.0;
  for (int k = 2; k <= t; ++k) log_t_fact += std::log(static_cast<double>(k));
  const double magnitude = std::exp(0.5 * log_fact - t * std::log(2.0) - log_t_fact) /
                           std::sqrt(std::cosh(r));
  const double sign = (t % 2 == 0) ? 1.0 : -1.0;
  return sign * magnitude * std::pow(std::tanh(r), t);
}

inline double squeezed_vacuum_probability(int n, double r) {
  if (n % 2 != 0) return 0.0;
  const double amp = squeezed_vacuum_amplitude(n / 2, r);
  return amp * amp;
}

// P(n, n) for a two-mode squeezed vacuum with gain r.
inline double tmsv_pair_probability(int n, double r) {
  const double chi = std::tanh(r);
  return (1.0 - chi * chi) * std::pow(chi, 2 * n);
}

// <0|rho|0> after a transmissivity-eta loss channel on squeezed vacuum.
// Loss Kraus operators map |n> to |n - l| with weight C(n,l) eta^(n-l)
// (1-eta)^l, so the vacuum overlap is sum_n |c_n|^2 (1-eta)^n.
inline double lossy_squeezed_vacuum_overlap(double r, double eta, int cutoff) {
  double total = 0.0;
  for (int t = 0; 2 * t <= cutoff; ++t) {
    const double amp = squeezed_vacuum_amplitude(t, r);
    total += amp * amp * std::pow(1.0 - eta, 2 * t);
  }
  return total;
}

}  // namespace cvbs::testing
