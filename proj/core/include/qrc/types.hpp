#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Tolerances shared by all state/operator invariant checks.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatch between operands (matrix sizes, subsystem dims, signals).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A physical invariant (Hermiticity, trace, positivity, CPTP, ...) failed
// beyond tolerance. States are never silently repaired.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Spectral solve refused: eigenvector matrix too ill-conditioned.
class DefectiveLiouvillianError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline bool all_finite(const CMat& a) { return a.allFinite(); }

inline double max_abs(const CMat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const RMat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace qrc
