#include "qrc/generator.hpp"

#include "qrc/linalg.hpp"

namespace qrc {

DriveGenerator::DriveGenerator(CMat h0, std::vector<DriveTerm> drive_terms,
                               std::vector<JumpTerm> jumps)
    : h0_(std::move(h0)), drive_terms_(std::move(drive_terms)), jumps_(std::move(jumps)) {
  if (h0_.rows() != h0_.cols()) throw DimensionError("DriveGenerator: h0 must be square");
  if (herm_defect(h0_) > kHermTol) throw InvariantError("DriveGenerator: h0 must be Hermitian");
  for (const auto& term : drive_terms_) {
    if (term.op.rows() != h0_.rows() || term.op.cols() != h0_.cols())
      throw DimensionError("DriveGenerator: drive operator dimension mismatch");
    if (herm_defect(term.op) > kHermTol)
      throw InvariantError("DriveGenerator: drive operator must be Hermitian");
    if (!term.coupling) throw InvariantError("DriveGenerator: missing coupling map");
  }
  for (const auto& jump : jumps_) {
    if (jump.op.rows() != h0_.rows() || jump.op.cols() != h0_.cols())
      throw DimensionError("DriveGenerator: jump operator dimension mismatch");
    if (jump.rate < 0.0) throw InvariantError("DriveGenerator: negative jump rate");
  }
}

CMat DriveGenerator::hamiltonian(const RVec& u, double t) const {
  CMat h = h0_;
  for (const auto& term : drive_terms_) h += term.coupling(u, t) * term.op;
  return h;
}

double DriveGenerator::max_rate() const {
  double g = 0.0;
  for (const auto& jump : jumps_) g = std::max(g, jump.rate);
  return g;
}

}  // namespace qrc
