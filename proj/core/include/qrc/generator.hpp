#pragma once

#include <functional>
#include <vector>

#include "qrc/types.hpp"

namespace qrc {

// Input-coupled Hamiltonian term. The coupling sees (u, t) so carriers are
// possible, but the input mask itself carries no time dependence: affine
// force descriptions used by the closed-form node solution take
// time-independent weights only (see AffineForce).
struct DriveTerm {
  CMat op;  // Hermitian
  std::function<double(const RVec& u, double t)> coupling;
};

struct JumpTerm {
  CMat op;
  double rate;  // >= 0, units of inverse time
};

// Lindbladian family L(u(t)): static Hamiltonian, input-coupled drive terms,
// and dissipators. All operators must share one dimension.
class DriveGenerator {
 public:
  DriveGenerator(CMat h0, std::vector<DriveTerm> drive_terms, std::vector<JumpTerm> jumps);

  CMat hamiltonian(const RVec& u, double t) const;

  const CMat& h0() const { return h0_; }
  const std::vector<DriveTerm>& drive_terms() const { return drive_terms_; }
  const std::vector<JumpTerm>& jumps() const { return jumps_; }
  int dim() const { return static_cast<int>(h0_.rows()); }
  double max_rate() const;

 private:
  CMat h0_;
  std::vector<DriveTerm> drive_terms_;
  std::vector<JumpTerm> jumps_;
};

// f(u) = constant + weights . u with time-independent weights.
struct AffineForce {
  double constant = 0.0;
  RVec weights;

  double eval(const RVec& u) const {
    if (u.size() != weights.size()) throw DimensionError("AffineForce: input dimension mismatch");
    return constant + weights.dot(u);
  }
};

}  // namespace qrc
