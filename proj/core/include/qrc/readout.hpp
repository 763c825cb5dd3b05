#pragma once

#include <vector>

#include "qrc/types.hpp"

namespace qrc {

// Ridge-regression readout over node columns plus a bias term.
struct ReadoutModel {
  RVec weights;                     // per kept column, bias last
  std::vector<int> kept_columns;    // indices into the original node matrix
  std::vector<int> dropped_columns; // all-constant columns removed before the solve
  double lambda = 0.0;
  double train_nmse = 0.0;
  double test_nmse = 0.0;

  RVec predict(const RMat& nodes) const;
};

// Solves min ||y - [nodes, 1] w||^2 + lambda ||w||^2 on the first 80% of rows
// (sequential split) via SVD and evaluates on the remaining 20%. All-constant
// node columns are dropped (the bias carries them). Throws on degenerate
// targets (zero variance). NMSE = mse / var(targets).
ReadoutModel train_readout(const RMat& nodes, const RVec& targets, double lambda);

}  // namespace qrc
