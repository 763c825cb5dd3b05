#include "qrc/density_matrix.hpp"

#include <algorithm>
#include <numeric>

namespace qrc {

namespace {

int dims_product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

// Strides for row-major multi-index over subsystem dims (subsystem 0 is the
// leftmost tensor factor).
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

}  // namespace

DensityMatrix::DensityMatrix(CMat matrix, std::vector<int> subsystem_dims, double herm_tol,
                             double trace_tol, double psd_tol)
    : matrix_(std::move(matrix)), dims_(std::move(subsystem_dims)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("density matrix must be square");
  if (dims_.empty()) dims_ = {static_cast<int>(matrix_.rows())};
  if (dims_product(dims_) != matrix_.rows())
    throw DimensionError("product of subsystem_dims does not match matrix dimension");
  validate(herm_tol, trace_tol, psd_tol);
}

DensityMatrix::DensityMatrix(CMat matrix, std::vector<int> subsystem_dims)
    : DensityMatrix(std::move(matrix), std::move(subsystem_dims), kHermTol, kTraceTol, kPsdTol) {}

DensityMatrix::DensityMatrix(CMat matrix)
    : DensityMatrix(std::move(matrix), std::vector<int>{}) {}

DensityMatrix DensityMatrix::pure(const CVec& psi, std::vector<int> subsystem_dims) {
  CVec n = psi / psi.norm();
  return DensityMatrix(CMat(n * n.adjoint()), std::move(subsystem_dims));
}

DensityMatrix DensityMatrix::pure(const CVec& psi) {
  return pure(psi, {static_cast<int>(psi.size())});
}

DensityMatrix DensityMatrix::basis_state(int index, std::vector<int> subsystem_dims) {
  const int d = dims_product(subsystem_dims);
  if (index < 0 || index >= d) throw DimensionError("basis_state index out of range");
  CVec psi = CVec::Zero(d);
  psi(index) = 1.0;
  return pure(psi, std::move(subsystem_dims));
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
  if (!all_finite(matrix_)) throw InvariantError("density matrix has non-finite entries");
  const double hd = herm_defect(matrix_);
  if (hd > herm_tol)
    throw InvariantError("density matrix not Hermitian: defect " + std::to_string(hd));
  const double td = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (td > trace_tol)
    throw InvariantError("density matrix trace deviates from 1 by " + std::to_string(td));
  const double lam = min_eigenvalue(matrix_);
  if (lam < -psd_tol)
    throw InvariantError("density matrix not PSD: min eigenvalue " + std::to_string(lam));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const auto& dims = rho.subsystem_dims();
  const int n_sub = rho.subsystem_count();
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  for (size_t i = 0; i < keep_sorted.size(); ++i) {
    if (keep_sorted[i] < 0 || keep_sorted[i] >= n_sub)
      throw DimensionError("partial_trace: keep index out of range");
    if (i > 0 && keep_sorted[i] == keep_sorted[i - 1])
      throw DimensionError("partial_trace: duplicate keep index");
  }

  std::vector<int> traced;
  for (int s = 0; s < n_sub; ++s)
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), s)) traced.push_back(s);

  if (traced.empty()) return rho;

  const auto strides = strides_of(dims);
  int keep_dim = 1, traced_dim = 1;
  for (int s : keep_sorted) keep_dim *= dims[s];
  for (int s : traced) traced_dim *= dims[s];

  // Flat index of a (keep multi-index, traced multi-index) pair.
  auto flat = [&](int keep_flat, int traced_flat) {
    int idx = 0;
    for (int p = static_cast<int>(keep_sorted.size()) - 1; p >= 0; --p) {
      const int s = keep_sorted[p];
      idx += (keep_flat % dims[s]) * strides[s];
      keep_flat /= dims[s];
    }
    for (int p = static_cast<int>(traced.size()) - 1; p >= 0; --p) {
      const int s = traced[p];
      idx += (traced_flat % dims[s]) * strides[s];
      traced_flat /= dims[s];
    }
    return idx;
  };

  CMat out = CMat::Zero(keep_dim, keep_dim);
  const auto& m = rho.matrix();
  for (int i = 0; i < keep_dim; ++i)
    for (int j = 0; j < keep_dim; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < traced_dim; ++k) acc += m(flat(i, k), flat(j, k));
      out(i, j) = acc;
    }

  std::vector<int> out_dims;
  for (int s : keep_sorted) out_dims.push_back(dims[s]);
  if (out_dims.empty()) out_dims.push_back(1);
  return DensityMatrix(std::move(out), std::move(out_dims));
}

Complex expectation(const DensityMatrix& rho, const CMat& b) {
  if (b.rows() != rho.dim() || b.cols() != rho.dim())
    throw DimensionError("expectation: operator dimension mismatch");
  return (b * rho.matrix()).trace();
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.subsystem_dims();
  dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
  return DensityMatrix(tensor(a.matrix(), b.matrix()), std::move(dims));
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMat> es(a.matrix());
  RVec lam = es.eigenvalues().cwiseMax(0.0);
  CMat sqrt_a = es.eigenvectors() * lam.cwiseSqrt().asDiagonal().toDenseMatrix().cast<Complex>() *
                es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> inner(CMat(sqrt_a * b.matrix() * sqrt_a));
  const double root_sum = inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_sum * root_sum;
}

}  // namespace qrc
