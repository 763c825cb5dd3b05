#pragma once

#include "qrc/types.hpp"

namespace qrc {

// Kronecker product, dimension rows_a*rows_b x cols_a*cols_b.
CMat tensor(const CMat& a, const CMat& b);

// Column-stacking vectorization. Fixed by vec(A rho B) = (B^T (x) A) vec(rho).
CVec vectorize(const CMat& a);

// Inverse of vectorize; length must be a perfect square.
CMat devectorize(const CVec& v);

// Matrix exponential, scaling-and-squaring with Pade approximation.
CMat matrix_exp(const CMat& a);

inline CMat dagger(const CMat& a) { return a.adjoint(); }

inline CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

inline CMat anticommutator(const CMat& a, const CMat& b) { return a * b + b * a; }

inline double herm_defect(const CMat& a) { return max_abs(CMat(a - a.adjoint())); }

// Smallest eigenvalue of the Hermitian part of a.
double min_eigenvalue(const CMat& a);

CMat identity(int dim);

}  // namespace qrc
