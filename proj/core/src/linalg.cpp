#include "qrc/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace qrc {

CMat tensor(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec vectorize(const CMat& a) {
  CVec v(a.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) v(k++) = a(i, j);
  return v;
}

CMat devectorize(const CVec& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size())
    throw DimensionError("devectorize: length " + std::to_string(v.size()) + " is not a perfect square");
  CMat a(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = v(k++);
  return a;
}

CMat matrix_exp(const CMat& a) {
  if (a.rows() != a.cols()) throw DimensionError("matrix_exp: matrix must be square");
  return a.exp();
}

double min_eigenvalue(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat((a + a.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMat identity(int dim) { return CMat::Identity(dim, dim); }

}  // namespace qrc
