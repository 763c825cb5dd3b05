#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qrc/density_matrix.hpp"
#include "qrc/gaussian.hpp"
#include "qrc/generator.hpp"
#include "qrc/operator_basis.hpp"
#include "qrc/signal.hpp"
#include "qrc/types.hpp"

namespace qrc {

// Schroedinger-picture generator:
// -i[H(u,t), rho] + sum_j gamma_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho}).
CMat lindblad_rhs(const CMat& rho, const DriveGenerator& gen, const RVec& u, double t);

// Adjoint (operator-picture) generator:
// i[H, B] + sum_j gamma_j (L_j^dag B L_j - 1/2 {L_j^dag L_j, B}).
CMat adjoint_rhs(const CMat& b, const DriveGenerator& gen, const RVec& u, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<CVec> node_values;  // one per time when a basis was supplied
  double max_step_error = 0.0;    // largest embedded (step-halving) estimate
};

struct EvolveOptions {
  int record_stride = 1;
  double herm_tol = kHermTol * 100;  // drift allowance along trajectories
  double trace_tol = kTraceTol * 100;
  double psd_tol = kPsdTol;
  bool check_invariants = true;
};

// Step size used when callers pass dt = 0: 1e-3 time units, shortened when
// dissipation is faster than unit rate.
double default_step(const DriveGenerator& gen);

// Fixed-step RK4 (two half-steps per step, with the full-step solution kept
// as an embedded error estimate). Steps split exactly at signal breakpoints.
// State invariants are enforced at every accepted step and violations throw;
// nothing is silently repaired.
Trajectory evolve(const DensityMatrix& state0, const DriveGenerator& gen, const InputSignal& signal,
                  std::pair<double, double> t_span, double dt, const OperatorBasis* basis = nullptr,
                  const EvolveOptions& opts = {});

// Same integrator, recording exactly at the given ascending sample times.
Trajectory evolve_sampled(const DensityMatrix& state0, const DriveGenerator& gen,
                          const InputSignal& signal, double t0,
                          const std::vector<double>& sample_times, double dt,
                          const OperatorBasis* basis = nullptr, const EvolveOptions& opts = {});

// Heisenberg-picture operator B_H with Tr[B_H rho(t0)] = Tr[b rho(t1)]: the
// adjoint equation integrated against the time-reversed generator schedule.
CMat heisenberg_operator(const CMat& b, const DriveGenerator& gen, const InputSignal& signal,
                         double t0, double t1, double dt);

// First Magnus term: the time integral of M(u(s)) over t_span, composite
// Simpson per smooth signal segment.
CMat magnus_first_order(const std::function<CMat(const RVec&)>& family, const InputSignal& signal,
                        std::pair<double, double> t_span, int points_per_segment = 64);

// --- vectorized/spectral route ----------------------------------------------

// Matrix L with L vec(rho) = vec(lindblad_rhs(rho)) in column-stacking
// convention. The adjoint generator's matrix is the conjugate transpose.
CMat build_liouvillian(const DriveGenerator& gen, const RVec& u, double t = 0.0);

struct SpectralDecomposition {
  CVec eigenvalues;
  CMat vectors;          // columns are right eigenvectors
  double condition;      // 2-norm condition of the eigenvector matrix
};

// Throws DefectiveLiouvillianError when the eigenvector matrix condition
// exceeds cond_limit (callers fall back to direct integration).
SpectralDecomposition diagonalize_liouvillian(const CMat& liouv, double cond_limit = 1e8);

struct SpectralDiagnostics {
  double herm_defect = 0.0;  // removed by the final symmetrization
  double condition = 0.0;
};

// Propagates a frozen-input generator through the diagonalized Liouvillian:
// rho(t) = devec(V exp(D t) V^-1 vec(rho0)). The only repair applied is the
// symmetrization rho <- (rho + rho^dag)/2, whose defect is reported.
DensityMatrix spectral_evolve(const DensityMatrix& state0, const DriveGenerator& gen, const RVec& u,
                              double t, SpectralDiagnostics* diag = nullptr,
                              double cond_limit = 1e8);

// --- Gaussian single-mode dynamics -------------------------------------------

// Driven damped mode: d<X>/dt = Re f(u) - gamma <X>, d<P>/dt = Im f(u) - gamma <P>,
// covariance relaxing to vacuum at rate 2*gamma (photon loss at 2*gamma).
struct GaussianDrive {
  std::function<Complex(const RVec&)> force;
};

struct GaussianTrajectory {
  std::vector<double> times;
  std::vector<GaussianState> states;
};

// Exact per-segment updates for (piecewise-)constant signals; exponential-kernel
// Simpson quadrature with step quad_dt otherwise. gamma = 0 integrates the
// undamped forced motion (no fading memory).
GaussianTrajectory gaussian_evolve(const GaussianState& g0, const GaussianDrive& drive, double gamma,
                                   const InputSignal& signal, double t0,
                                   const std::vector<double>& sample_times, double quad_dt = 1e-3);

enum class DampingMode { damped, undamped };

// Closed-form damped-node solution for an affine force f(u(t)):
//   y(t) = y0 e^(-g dt) + [f(u(t)) - e^(-g dt) f(u(t0))]/g - (1/g) int e^(-g(t-s)) df/ds ds,
// evaluated per segment for piecewise-constant signals (segment edges carry no
// impulse) and by quadrature otherwise. The undamped mode integrates
// y(t) = y0 + int f(u(s)) ds instead and is flagged for the missing fading memory.
std::vector<double> general_solution_node(const AffineForce& f, double gamma,
                                          const InputSignal& signal, double t0,
                                          const std::vector<double>& sample_times,
                                          double initial_value = 0.0,
                                          DampingMode mode = DampingMode::damped,
                                          double quad_dt = 1e-4);

// 6x6 drift matrix A with d m/dt = A(u) m for the Gaussian moment vector
// m = (1, <X>, <P>, <XX>, <PP>, <sym XP>) under the damped displacement drive.
// Used by the continuous forcing-condition check.
RMat gaussian_moment_drift(const GaussianDrive& drive, double gamma, const RVec& u);

}  // namespace qrc
