#pragma once

#include <string>
#include <vector>

#include "qrc/types.hpp"

namespace qrc {

// Single-mode Gaussian state in the hbar = 1 convention with X = (a + a^dag)/sqrt(2):
// vacuum variance 1/2 on both quadratures, [X, P] = i.
struct GaussianState {
  Eigen::Vector2d means = Eigen::Vector2d::Zero();        // (<X>, <P>)
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();   // symmetric, Sigma + i Omega/2 >= 0

  static GaussianState vacuum();

  // Throws InvariantError if the covariance is asymmetric or violates the
  // uncertainty relation beyond tol.
  void validate(double tol = kPsdTol) const;
};

// Squeezed-vacuum covariance for squeezing magnitude r and phase phi
// (phi = 0 squeezes X: Var(X) = e^(-2r)/2).
Eigen::Matrix2d squeezed_covariance(double r, double phi);

// The Gaussian computational nodes used by probes and reservoir readout:
// means and covariance entries, in this order.
inline const std::vector<std::string>& gaussian_node_labels() {
  static const std::vector<std::string> labels = {"X", "P", "VarX", "VarP", "CovXP"};
  return labels;
}

RVec gaussian_nodes(const GaussianState& g);

// Raw symmetrized moment <sym(X^n P^m)> for n + m <= 2, for cross-checks
// against truncated-Fock expectation values.
double gaussian_raw_moment(const GaussianState& g, int n, int m);

}  // namespace qrc
