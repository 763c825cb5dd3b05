#include "qrc/gaussian.hpp"

#include <cmath>

namespace qrc {

GaussianState GaussianState::vacuum() {
  GaussianState g;
  g.covariance = 0.5 * Eigen::Matrix2d::Identity();
  return g;
}

void GaussianState::validate(double tol) const {
  if (!means.allFinite() || !covariance.allFinite())
    throw InvariantError("gaussian state has non-finite entries");
  const double asym = std::abs(covariance(0, 1) - covariance(1, 0));
  if (asym > kHermTol)
    throw InvariantError("gaussian covariance asymmetric by " + std::to_string(asym));
  // Sigma + (i/2) Omega is Hermitian; for one mode its eigenvalues are
  // (tr Sigma)/2 +- sqrt((tr Sigma/2)^2 - det Sigma + 1/4 - ...), checked directly.
  Eigen::Matrix2cd herm = covariance.cast<Complex>();
  herm(0, 1) += Complex(0.0, 0.5);
  herm(1, 0) += Complex(0.0, -0.5);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw InvariantError("gaussian covariance violates the uncertainty relation: min eig " +
                         std::to_string(es.eigenvalues().minCoeff()));
}

Eigen::Matrix2d squeezed_covariance(double r, double phi) {
  const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
  diag(0, 0) = 0.5 * std::exp(-2.0 * r);
  diag(1, 1) = 0.5 * std::exp(2.0 * r);
  return rot * diag * rot.transpose();
}

RVec gaussian_nodes(const GaussianState& g) {
  RVec v(5);
  v << g.means(0), g.means(1), g.covariance(0, 0), g.covariance(1, 1), g.covariance(0, 1);
  return v;
}

double gaussian_raw_moment(const GaussianState& g, int n, int m) {
  const double mx = g.means(0), mp = g.means(1);
  if (n == 1 && m == 0) return mx;
  if (n == 0 && m == 1) return mp;
  if (n == 2 && m == 0) return g.covariance(0, 0) + mx * mx;
  if (n == 0 && m == 2) return g.covariance(1, 1) + mp * mp;
  if (n == 1 && m == 1) return g.covariance(0, 1) + mx * mp;
  if (n == 0 && m == 0) return 1.0;
  throw DimensionError("gaussian_raw_moment supports total degree <= 2");
}

}  // namespace qrc
