#pragma once

#include <vector>

#include "qrc/linalg.hpp"
#include "qrc/types.hpp"

namespace qrc {

// Hermitian, unit-trace, positive-semidefinite state. Construction validates;
// violations throw InvariantError rather than being repaired.
class DensityMatrix {
 public:
  DensityMatrix(CMat matrix, std::vector<int> subsystem_dims);

  // Validates against caller-specified tolerances (integrators allow a small
  // drift on top of the construction defaults).
  DensityMatrix(CMat matrix, std::vector<int> subsystem_dims, double herm_tol, double trace_tol,
                double psd_tol);

  // Single subsystem covering the full dimension.
  explicit DensityMatrix(CMat matrix);

  static DensityMatrix pure(const CVec& psi, std::vector<int> subsystem_dims);
  static DensityMatrix pure(const CVec& psi);

  // Computational basis state |index> on the given subsystem layout.
  static DensityMatrix basis_state(int index, std::vector<int> subsystem_dims);

  const CMat& matrix() const { return matrix_; }
  const std::vector<int>& subsystem_dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }

  void validate(double herm_tol = kHermTol, double trace_tol = kTraceTol,
                double psd_tol = kPsdTol) const;

 private:
  CMat matrix_;
  std::vector<int> dims_;
};

// Reduced state on the kept subsystems (indices into subsystem_dims, ascending).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Tr[B rho].
Complex expectation(const DensityMatrix& rho, const CMat& b);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qrc
