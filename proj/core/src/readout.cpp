#include "qrc/readout.hpp"

#include <cmath>

namespace qrc {

namespace {

double nmse(const RVec& predicted, const RVec& truth) {
  const double var = (truth.array() - truth.mean()).square().mean();
  if (var < 1e-24) throw InvariantError("readout: target variance is zero");
  return (predicted - truth).squaredNorm() / truth.size() / var;
}

}  // namespace

RVec ReadoutModel::predict(const RMat& nodes) const {
  RVec out = RVec::Constant(nodes.rows(), weights(weights.size() - 1));
  for (size_t c = 0; c < kept_columns.size(); ++c)
    out += weights(static_cast<Eigen::Index>(c)) * nodes.col(kept_columns[c]);
  return out;
}

ReadoutModel train_readout(const RMat& nodes, const RVec& targets, double lambda) {
  if (nodes.rows() != targets.size())
    throw DimensionError("train_readout: row count does not match target count");
  if (nodes.rows() < 5) throw DimensionError("train_readout: too few samples");
  if (lambda <= 0.0) throw InvariantError("train_readout: lambda must be positive");

  const Eigen::Index n_train = std::max<Eigen::Index>(1, (nodes.rows() * 8) / 10);
  ReadoutModel model;
  model.lambda = lambda;

  // Constant columns carry no information beyond the bias.
  for (Eigen::Index c = 0; c < nodes.cols(); ++c) {
    const auto col = nodes.col(c).head(n_train);
    const double spread = col.maxCoeff() - col.minCoeff();
    if (spread > 1e-13 * std::max(1.0, col.cwiseAbs().maxCoeff()))
      model.kept_columns.push_back(static_cast<int>(c));
    else
      model.dropped_columns.push_back(static_cast<int>(c));
  }

  const auto n_cols = static_cast<Eigen::Index>(model.kept_columns.size());
  RMat design(nodes.rows(), n_cols + 1);
  for (Eigen::Index c = 0; c < n_cols; ++c) design.col(c) = nodes.col(model.kept_columns[c]);
  design.col(n_cols).setOnes();

  const RMat train = design.topRows(n_train);
  const RVec y_train = targets.head(n_train);

  Eigen::BDCSVD<RMat> svd(train, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  RVec shrink(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) shrink(k) = sv(k) / (sv(k) * sv(k) + lambda);
  model.weights = svd.matrixV() * shrink.asDiagonal() * svd.matrixU().transpose() * y_train;
  if (!model.weights.allFinite()) throw InvariantError("train_readout: non-finite weights");

  const RVec fit = design * model.weights;
  model.train_nmse = nmse(fit.head(n_train), y_train);
  if (nodes.rows() > n_train)
    model.test_nmse = nmse(fit.tail(nodes.rows() - n_train), targets.tail(nodes.rows() - n_train));
  else
    model.test_nmse = model.train_nmse;
  return model;
}

}  // namespace qrc
