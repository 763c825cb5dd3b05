#include "qrc/operator_basis.hpp"

#include <cmath>

#include "qrc/linalg.hpp"

namespace qrc {

namespace {

const Complex kI(0.0, 1.0);

CMat pauli(int which) {
  CMat m(2, 2);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

const char* kPauliNames = "IXYZ";

// Binomial coefficient for the Weyl-ordering average.
double binom(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

OperatorBasis pauli_basis(int n_qubits) {
  if (n_qubits < 1) throw DimensionError("pauli_basis: need at least one qubit");
  OperatorBasis b;
  b.name = "pauli-" + std::to_string(n_qubits);
  b.complete = true;
  const int count = 1 << (2 * n_qubits);
  b.elements.reserve(count);
  for (int code = 0; code < count; ++code) {
    CMat op = CMat::Ones(1, 1);
    std::string label;
    for (int q = 0; q < n_qubits; ++q) {
      // Most significant digit = leftmost tensor factor.
      const int digit = (code >> (2 * (n_qubits - 1 - q))) & 3;
      op = tensor(op, pauli(digit));
      label.push_back(kPauliNames[digit]);
    }
    b.elements.push_back(std::move(op));
    b.labels.push_back(label);
  }
  return b;
}

OperatorBasis gell_mann_basis(int d) {
  if (d < 2) throw DimensionError("gell_mann_basis: dimension must be >= 2");
  OperatorBasis b;
  b.name = "gell-mann-" + std::to_string(d);
  b.complete = true;
  b.elements.push_back(CMat::Identity(d, d));
  b.labels.push_back("I");
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMat sym = CMat::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      b.elements.push_back(sym);
      b.labels.push_back("S" + std::to_string(j) + std::to_string(k));
      CMat asym = CMat::Zero(d, d);
      asym(j, k) = -kI;
      asym(k, j) = kI;
      b.elements.push_back(asym);
      b.labels.push_back("A" + std::to_string(j) + std::to_string(k));
    }
  for (int l = 1; l < d; ++l) {
    CMat diag = CMat::Zero(d, d);
    const double f = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) diag(j, j) = f;
    diag(l, l) = -l * f;
    b.elements.push_back(diag);
    b.labels.push_back("D" + std::to_string(l));
  }
  return b;
}

CMat fock_annihilation(int levels) {
  if (levels < 2) throw DimensionError("fock space needs at least 2 levels");
  CMat a = CMat::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMat fock_position(int levels) {
  const CMat a = fock_annihilation(levels);
  return (a + a.adjoint()) / std::sqrt(2.0);
}

CMat fock_momentum(int levels) {
  const CMat a = fock_annihilation(levels);
  return (a - a.adjoint()) * (-kI / std::sqrt(2.0));
}

OperatorBasis fock_moment_basis(int max_degree, int levels) {
  if (max_degree < 1) throw DimensionError("fock_moment_basis: max_degree must be >= 1");
  const CMat x = fock_position(levels);
  const CMat p = fock_momentum(levels);

  // Powers of X and P up to max_degree.
  std::vector<CMat> xp(max_degree + 1), pp(max_degree + 1);
  xp[0] = pp[0] = CMat::Identity(levels, levels);
  for (int k = 1; k <= max_degree; ++k) {
    xp[k] = xp[k - 1] * x;
    pp[k] = pp[k - 1] * p;
  }

  OperatorBasis b;
  b.name = "fock-moment-" + std::to_string(max_degree);
  b.complete = false;
  b.elements.push_back(CMat::Identity(levels, levels));
  b.labels.push_back("I");
  for (int degree = 1; degree <= max_degree; ++degree)
    for (int n = degree; n >= 0; --n) {
      const int m = degree - n;
      // McCoy's formula for the Weyl-ordered monomial:
      // sym(X^n P^m) = 2^-n sum_k C(n,k) X^k P^m X^(n-k).
      CMat op = CMat::Zero(levels, levels);
      for (int k = 0; k <= n; ++k) op += binom(n, k) * xp[k] * pp[m] * xp[n - k];
      op /= std::pow(2.0, n);
      b.elements.push_back(std::move(op));
      b.labels.push_back(std::string(n, 'X') + std::string(m, 'P'));
    }
  return b;
}

OperatorBasis make_basis(const std::string& kind, const std::vector<int>& dims) {
  if (kind == "pauli") {
    if (dims.size() != 1) throw DimensionError("pauli basis takes {n_qubits}");
    return pauli_basis(dims[0]);
  }
  if (kind == "gell-mann") {
    if (dims.size() != 1) throw DimensionError("gell-mann basis takes {dimension}");
    return gell_mann_basis(dims[0]);
  }
  if (kind == "fock-moment") {
    if (dims.size() != 2) throw DimensionError("fock-moment basis takes {max_degree, levels}");
    return fock_moment_basis(dims[0], dims[1]);
  }
  throw ConfigError("unknown basis kind: " + kind);
}

CVec basis_expand(const CMat& a, const OperatorBasis& basis) {
  if (!basis.complete)
    throw InvariantError("basis_expand requires a complete basis, got " + basis.name);
  if (a.rows() != basis.dim() || a.cols() != basis.dim())
    throw DimensionError("basis_expand: dimension mismatch");
  CVec c(basis.size());
  for (int m = 0; m < basis.size(); ++m) {
    const CMat& bm = basis.elements[m];
    const Complex norm2 = (bm.adjoint() * bm).trace();
    c(m) = (bm.adjoint() * a).trace() / norm2;
  }
  return c;
}

CMat basis_reconstruct(const CVec& coeffs, const OperatorBasis& basis) {
  if (coeffs.size() != basis.size()) throw DimensionError("basis_reconstruct: coefficient count mismatch");
  CMat a = CMat::Zero(basis.dim(), basis.dim());
  for (int m = 0; m < basis.size(); ++m) a += coeffs(m) * basis.elements[m];
  return a;
}

CVec expectation_vector(const DensityMatrix& rho, const OperatorBasis& basis) {
  if (rho.dim() != basis.dim()) throw DimensionError("expectation_vector: dimension mismatch");
  CVec v(basis.size());
  for (int k = 0; k < basis.size(); ++k) v(k) = (basis.elements[k] * rho.matrix()).trace();
  return v;
}

}  // namespace qrc
