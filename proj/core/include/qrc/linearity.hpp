#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrc/channels.hpp"
#include "qrc/density_matrix.hpp"
#include "qrc/dynamics.hpp"
#include "qrc/rng.hpp"
#include "qrc/types.hpp"

namespace qrc {

// Least-squares affine model y ~ a0 + a . u.
struct AffineFit {
  RVec coefficients;        // (intercept, slopes...)
  double max_abs_residual;
};

// Throws DimensionError when there are too few samples and InvariantError
// when the design matrix is rank deficient (degenerate u grid).
AffineFit affine_fit(const std::vector<RVec>& u_samples, const std::vector<double>& y_samples);

// --- probe configuration -----------------------------------------------------

struct PriorEnsemble {
  enum class Kind { haar_pure, ginibre_mixed, product_basis };
  Kind kind = Kind::ginibre_mixed;
  int count = 20;
  std::uint64_t seed = 0;
};

PriorEnsemble::Kind prior_kind_from_string(const std::string& s);
std::string to_string(PriorEnsemble::Kind kind);

std::vector<DensityMatrix> sample_priors(const PriorEnsemble& ensemble,
                                         const std::vector<int>& dims);

// Random valid single-mode Gaussian states (rotated squeezed thermal states).
std::vector<GaussianState> sample_gaussian_priors(int count, std::uint64_t seed);

// Uniform grid on [lo, hi]^dim, points per dimension on the interior of the
// encoding domain (endpoints avoided: sqrt-type encodings are singular there).
struct UGrid {
  int dim = 1;
  int points_per_dim = 21;
  double lo = 0.05;
  double hi = 0.95;

  std::vector<RVec> points() const;
};

struct ProbeOptions {
  UGrid grid;
  PriorEnsemble priors;
  double tau_lin = 1e-8;      // relative residual at or below: linear
  double tau_nonlin = 1e-4;   // relative residual at or above: nonlinear
  int threads = 1;
};

// --- reports ------------------------------------------------------------------

enum class Verdict { linear, nonlinear, indeterminate };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct NodeReport {
  int index = 0;
  std::string label;
  Verdict verdict = Verdict::indeterminate;
  double max_abs_residual = 0.0;
  double relative_residual = 0.0;
  double value_range = 0.0;
  RVec coefficients;  // affine fit of the worst-residual prior (or the joint fit)
};

struct ProbeSample {
  RVec u;
  int node = 0;
  double value = 0.0;
  double residual = 0.0;
};

struct LinearityReport {
  std::string probe;          // discrete / continuous / gaussian-discrete / gaussian-continuous
  std::string encoding;
  std::string fit_scope;      // "joint" or "per-prior"
  std::uint64_t seed = 0;
  double tau_lin = 1e-8;
  double tau_nonlin = 1e-4;
  UGrid grid;
  PriorEnsemble priors;
  std::vector<double> read_times;  // continuous probes only
  std::vector<NodeReport> nodes;
  std::vector<ProbeSample> samples;

  bool all_linear() const;
  bool any_nonlinear() const;
  bool any_indeterminate() const;
  const NodeReport& node(const std::string& label) const;
};

// Relative residual with a unit floor on the scale, so that nodes constant in
// u (range ~ 0) classify as linear rather than dividing by zero.
Verdict classify(double abs_residual, double value_range, double tau_lin, double tau_nonlin);

// --- probes -------------------------------------------------------------------

// Discrete probe of Tr[B_k C(u)[rho]] over the grid and the prior ensemble.
// Whole-system re-initialization makes node values prior-independent, and one
// affine model is then fit jointly across priors; otherwise each prior is fit
// separately (its affine coefficients may depend on the prior) and the worst
// residual is reported. The chosen scope is recorded in the report.
LinearityReport probe_discrete(const ParamChannel& channel, const OperatorBasis& basis,
                               const std::vector<int>& dims, const ProbeOptions& opts);

// Gaussian-channel version over the (means, covariance) node set.
LinearityReport probe_discrete_gaussian(const GaussianParamChannel& channel,
                                        const ProbeOptions& opts);

// A family of input signals indexed by the probe grid point.
struct SignalProtocol {
  std::string label;
  std::function<InputSignal(const RVec&)> make;
};

SignalProtocol constant_level_protocol();

// Evolves the finite-dimensional system per grid point, reads the basis nodes
// at read_times, and affine-fits node value against u at each read time; the
// worst residual across read times decides each node's verdict.
LinearityReport probe_continuous(const DriveGenerator& gen, const SignalProtocol& protocol,
                                 const OperatorBasis& basis, const DensityMatrix& state0,
                                 const std::vector<double>& read_times, double dt,
                                 const ProbeOptions& opts);

// Continuous probe of the damped Gaussian mode over the same node set as the
// discrete Gaussian probe.
LinearityReport probe_continuous_gaussian(const GaussianDrive& drive, double gamma,
                                          const SignalProtocol& protocol, const GaussianState& g0,
                                          const std::vector<double>& read_times,
                                          const ProbeOptions& opts);

// --- structural condition checks ----------------------------------------------

// Does the input enter node n's equation of motion only as a multiple of the
// identity? Tests whether Delta_n = L^dag(u1)[B_n] - L^dag(u0)[B_n] is
// proportional to I: defect_n = ||Delta_n - (Tr Delta_n / d) I||_F.
struct ForcingCheck {
  std::vector<std::string> labels;
  std::vector<bool> identity_forcing;
  std::vector<double> defect;
};

ForcingCheck check_forcing_condition(const DriveGenerator& gen, const OperatorBasis& basis,
                                     const RVec& u0, const RVec& u1, double tol = 1e-10);

// Gaussian-moment analogue: the u-dependent part of each moment drift row must
// live entirely in the constant slot.
ForcingCheck check_forcing_condition_gaussian(const GaussianDrive& drive, double gamma,
                                              const RVec& u0, const RVec& u1, double tol = 1e-10);

// Nonlinear contribution of a non-constant signal to a damped node:
// (1/gamma) sum_l c_l int_t0^t e^(-gamma (t-s)) du_l/ds ds.
// Zero by convention for (piecewise-)constant signals.
double nl_contribution(const RVec& weights, double gamma, const InputSignal& signal, double t0,
                       double t, double quad_dt = 1e-4);

}  // namespace qrc
