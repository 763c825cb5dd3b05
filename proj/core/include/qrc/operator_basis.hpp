#pragma once

#include <string>
#include <vector>

#include "qrc/density_matrix.hpp"
#include "qrc/types.hpp"

namespace qrc {

// Ordered operator set defining the reservoir's computational nodes.
// Element 0 is always the identity. Finite-dimensional built-ins (pauli,
// gell-mann) are pairwise Hilbert-Schmidt orthogonal and complete (d^2
// elements); the fock-moment node set is neither, and is flagged as such.
struct OperatorBasis {
  std::vector<CMat> elements;
  std::vector<std::string> labels;
  std::string name;
  bool complete = false;

  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
};

// All 4^n Pauli strings on n qubits, identity first. Tr[B_j B_k] = d delta_jk.
OperatorBasis pauli_basis(int n_qubits);

// Identity plus generalized Gell-Mann matrices for dimension d.
OperatorBasis gell_mann_basis(int d);

// Weyl-symmetrized quadrature monomials sym(X^n P^m) for n + m <= max_degree,
// on a Fock space truncated to `levels` number states. X = (a + a^dag)/sqrt(2).
OperatorBasis fock_moment_basis(int max_degree, int levels);

// Dispatcher for config-driven construction. kind in {pauli, gell-mann,
// fock-moment}; `dims` is qubit count, dimension, or {max_degree, levels}.
OperatorBasis make_basis(const std::string& kind, const std::vector<int>& dims);

// Coefficients c with A = sum_m c_m B_m; requires a complete orthogonal basis.
// Per-element Hilbert-Schmidt norms are divided out.
CVec basis_expand(const CMat& a, const OperatorBasis& basis);

CMat basis_reconstruct(const CVec& coeffs, const OperatorBasis& basis);

// Vector of Tr[B_k rho] for every basis element; entry 0 is 1 for valid rho.
CVec expectation_vector(const DensityMatrix& rho, const OperatorBasis& basis);

// Truncated Fock-space ladder and quadrature operators.
CMat fock_annihilation(int levels);
CMat fock_position(int levels);
CMat fock_momentum(int levels);

}  // namespace qrc
