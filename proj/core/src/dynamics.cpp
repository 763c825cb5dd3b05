#include "qrc/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qrc/linalg.hpp"

namespace qrc {

namespace {

const Complex kI(0.0, 1.0);

CMat dissipator(const CMat& rho, const std::vector<JumpTerm>& jumps) {
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (const auto& j : jumps) {
    if (j.rate == 0.0) continue;
    const CMat ldl = j.op.adjoint() * j.op;
    out += j.rate * (j.op * rho * j.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

CMat adjoint_dissipator(const CMat& b, const std::vector<JumpTerm>& jumps) {
  CMat out = CMat::Zero(b.rows(), b.cols());
  for (const auto& j : jumps) {
    if (j.rate == 0.0) continue;
    const CMat ldl = j.op.adjoint() * j.op;
    out += j.rate * (j.op.adjoint() * b * j.op - 0.5 * (ldl * b + b * ldl));
  }
  return out;
}

using Rhs = std::function<CMat(const CMat&, double)>;

CMat rk4_step(const CMat& y, double t, double h, const Rhs& f) {
  const CMat k1 = f(y, t);
  const CMat k2 = f(CMat(y + 0.5 * h * k1), t + 0.5 * h);
  const CMat k3 = f(CMat(y + 0.5 * h * k2), t + 0.5 * h);
  const CMat k4 = f(CMat(y + h * k3), t + h);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Two half-steps advanced, full step kept as the embedded error estimate.
CMat rk4_double_step(const CMat& y, double t, double h, const Rhs& f, double* err) {
  const CMat full = rk4_step(y, t, h, f);
  const CMat half = rk4_step(rk4_step(y, t, 0.5 * h, f), t + 0.5 * h, 0.5 * h, f);
  if (err) *err = std::max(*err, max_abs(CMat(half - full)) / 15.0);
  return half;
}

// Integrates y over [ta, tb] with steps of at most dt, splitting exactly at
// the given interior breakpoints.
CMat integrate_interval(CMat y, double ta, double tb, double dt,
                        const std::vector<double>& breaks, const Rhs& f, double* err) {
  std::vector<double> edges = {ta};
  for (double b : breaks)
    if (b > ta && b < tb) edges.push_back(b);
  edges.push_back(tb);
  for (size_t e = 0; e + 1 < edges.size(); ++e) {
    const double span = edges[e + 1] - edges[e];
    if (span <= 0.0) continue;
    const int n = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
    const double h = span / n;
    for (int k = 0; k < n; ++k) y = rk4_double_step(y, edges[e] + k * h, h, f, err);
  }
  return y;
}

void check_state_invariants(const CMat& rho, double t, const EvolveOptions& opts) {
  if (!rho.allFinite())
    throw InvariantError("evolve: non-finite state at t = " + std::to_string(t));
  const double hd = herm_defect(rho);
  if (hd > opts.herm_tol)
    throw InvariantError("evolve: Hermiticity defect " + std::to_string(hd) + " at t = " +
                         std::to_string(t));
  const double td = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (td > opts.trace_tol)
    throw InvariantError("evolve: trace defect " + std::to_string(td) + " at t = " +
                         std::to_string(t));
  const double lam = min_eigenvalue(rho);
  if (lam < -opts.psd_tol)
    throw InvariantError("evolve: negative eigenvalue " + std::to_string(lam) + " at t = " +
                         std::to_string(t));
}

// Composite Simpson with an even number of subintervals >= 2.
template <typename F>
auto simpson(F&& f, double a, double b, int n) -> decltype(f(a)) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  auto acc = f(a);
  acc += f(b);
  for (int k = 1; k < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  return (h / 3.0) * acc;
}

std::vector<double> segment_edges(const InputSignal& signal, double a, double b) {
  std::vector<double> edges = {a};
  for (double t : signal.breakpoints_in(a, b)) edges.push_back(t);
  edges.push_back(b);
  return edges;
}

}  // namespace

CMat lindblad_rhs(const CMat& rho, const DriveGenerator& gen, const RVec& u, double t) {
  if (rho.rows() != gen.dim() || rho.cols() != gen.dim())
    throw DimensionError("lindblad_rhs: state dimension mismatch");
  const CMat h = gen.hamiltonian(u, t);
  return -kI * (h * rho - rho * h) + dissipator(rho, gen.jumps());
}

CMat adjoint_rhs(const CMat& b, const DriveGenerator& gen, const RVec& u, double t) {
  if (b.rows() != gen.dim() || b.cols() != gen.dim())
    throw DimensionError("adjoint_rhs: operator dimension mismatch");
  const CMat h = gen.hamiltonian(u, t);
  return kI * (h * b - b * h) + adjoint_dissipator(b, gen.jumps());
}

double default_step(const DriveGenerator& gen) {
  return 1e-3 / std::max(1.0, gen.max_rate());
}

Trajectory evolve(const DensityMatrix& state0, const DriveGenerator& gen, const InputSignal& signal,
                  std::pair<double, double> t_span, double dt, const OperatorBasis* basis,
                  const EvolveOptions& opts) {
  if (state0.dim() != gen.dim()) throw DimensionError("evolve: state dimension mismatch");
  const double t0 = t_span.first, t1 = t_span.second;
  if (t1 < t0) throw InvariantError("evolve: t_span must be ordered");
  if (dt <= 0.0) dt = default_step(gen);

  Rhs f = [&](const CMat& y, double t) { return lindblad_rhs(y, gen, signal.value(t), t); };

  // Record grid: multiples of dt * stride from t0, always including t1.
  std::vector<double> record = {t0};
  const double step = dt * std::max(1, opts.record_stride);
  for (int k = 1;; ++k) {
    const double t = t0 + k * step;
    if (t >= t1 - 1e-12) break;
    record.push_back(t);
  }
  if (t1 > t0) record.push_back(t1);

  const auto breaks = signal.breakpoints_in(t0, t1);

  Trajectory traj;
  CMat rho = state0.matrix();
  for (size_t i = 0; i < record.size(); ++i) {
    if (i > 0) rho = integrate_interval(rho, record[i - 1], record[i], dt, breaks, f,
                                        &traj.max_step_error);
    if (opts.check_invariants) check_state_invariants(rho, record[i], opts);
    traj.times.push_back(record[i]);
    traj.states.emplace_back(rho, state0.subsystem_dims(), opts.herm_tol, opts.trace_tol,
                             opts.psd_tol);
    if (basis) traj.node_values.push_back(expectation_vector(traj.states.back(), *basis));
  }
  return traj;
}

Trajectory evolve_sampled(const DensityMatrix& state0, const DriveGenerator& gen,
                          const InputSignal& signal, double t0,
                          const std::vector<double>& sample_times, double dt,
                          const OperatorBasis* basis, const EvolveOptions& opts) {
  if (state0.dim() != gen.dim()) throw DimensionError("evolve_sampled: state dimension mismatch");
  if (dt <= 0.0) dt = default_step(gen);
  Rhs f = [&](const CMat& y, double t) { return lindblad_rhs(y, gen, signal.value(t), t); };

  Trajectory traj;
  CMat rho = state0.matrix();
  double t = t0;
  for (double ts : sample_times) {
    if (ts < t - 1e-15) throw InvariantError("evolve_sampled: sample times must ascend");
    if (ts > t)
      rho = integrate_interval(rho, t, ts, dt, signal.breakpoints_in(t, ts), f,
                               &traj.max_step_error);
    t = ts;
    if (opts.check_invariants) check_state_invariants(rho, ts, opts);
    traj.times.push_back(ts);
    traj.states.emplace_back(rho, state0.subsystem_dims(), opts.herm_tol, opts.trace_tol,
                             opts.psd_tol);
    if (basis) traj.node_values.push_back(expectation_vector(traj.states.back(), *basis));
  }
  return traj;
}

CMat heisenberg_operator(const CMat& b, const DriveGenerator& gen, const InputSignal& signal,
                         double t0, double t1, double dt) {
  if (b.rows() != gen.dim() || b.cols() != gen.dim())
    throw DimensionError("heisenberg_operator: dimension mismatch");
  if (t1 < t0) throw InvariantError("heisenberg_operator: t1 < t0");
  if (dt <= 0.0) dt = default_step(gen);
  // The adjoint propagator composes in reversed time order: sigma = t1 - t.
  Rhs f = [&](const CMat& y, double sigma) {
    const double t = t1 - sigma;
    return adjoint_rhs(y, gen, signal.value(t), t);
  };
  std::vector<double> breaks;
  for (double bp : signal.breakpoints_in(t0, t1)) breaks.push_back(t1 - bp);
  std::sort(breaks.begin(), breaks.end());
  double err = 0.0;
  return integrate_interval(b, 0.0, t1 - t0, dt, breaks, f, &err);
}

CMat magnus_first_order(const std::function<CMat(const RVec&)>& family, const InputSignal& signal,
                        std::pair<double, double> t_span, int points_per_segment) {
  const CMat probe = family(signal.value(t_span.first));
  CMat acc = CMat::Zero(probe.rows(), probe.cols());
  const auto edges = segment_edges(signal, t_span.first, t_span.second);
  for (size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    if (b <= a) continue;
    if (signal.piecewise_constant_kind()) {
      // Constant on the open segment; midpoint evaluation is exact.
      acc += (b - a) * family(signal.value(0.5 * (a + b)));
    } else {
      auto f = [&](double s) { return family(signal.value(s)); };
      acc += simpson(f, a, b, points_per_segment);
    }
  }
  return acc;
}

CMat build_liouvillian(const DriveGenerator& gen, const RVec& u, double t) {
  const int d = gen.dim();
  const CMat h = gen.hamiltonian(u, t);
  const CMat id = CMat::Identity(d, d);
  CMat liouv = -kI * (tensor(id, h) - tensor(h.transpose(), id));
  for (const auto& j : gen.jumps()) {
    if (j.rate == 0.0) continue;
    const CMat ldl = j.op.adjoint() * j.op;
    liouv += j.rate * (tensor(j.op.conjugate(), j.op) - 0.5 * tensor(id, ldl) -
                       0.5 * tensor(ldl.transpose(), id));
  }
  return liouv;
}

SpectralDecomposition diagonalize_liouvillian(const CMat& liouv, double cond_limit) {
  Eigen::ComplexEigenSolver<CMat> es(liouv);
  if (es.info() != Eigen::Success)
    throw DefectiveLiouvillianError("eigensolver failed to converge");
  SpectralDecomposition dec;
  dec.eigenvalues = es.eigenvalues();
  dec.vectors = es.eigenvectors();
  Eigen::JacobiSVD<CMat> svd(dec.vectors);
  const double smin = svd.singularValues().minCoeff();
  dec.condition = smin > 0.0 ? svd.singularValues().maxCoeff() / smin
                             : std::numeric_limits<double>::infinity();
  if (!(dec.condition <= cond_limit))
    throw DefectiveLiouvillianError("eigenvector matrix condition " +
                                    std::to_string(dec.condition) + " exceeds " +
                                    std::to_string(cond_limit));
  return dec;
}

DensityMatrix spectral_evolve(const DensityMatrix& state0, const DriveGenerator& gen, const RVec& u,
                              double t, SpectralDiagnostics* diag, double cond_limit) {
  const auto dec = diagonalize_liouvillian(build_liouvillian(gen, u), cond_limit);
  const CVec c = dec.vectors.partialPivLu().solve(vectorize(state0.matrix()));
  CVec propagated(c.size());
  for (Eigen::Index n = 0; n < c.size(); ++n)
    propagated(n) = std::exp(dec.eigenvalues(n) * t) * c(n);
  CMat rho = devectorize(CVec(dec.vectors * propagated));
  const double defect = herm_defect(rho);
  if (diag) {
    diag->herm_defect = defect;
    diag->condition = dec.condition;
  }
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho), state0.subsystem_dims());
}

GaussianTrajectory gaussian_evolve(const GaussianState& g0, const GaussianDrive& drive, double gamma,
                                   const InputSignal& signal, double t0,
                                   const std::vector<double>& sample_times, double quad_dt) {
  if (gamma < 0.0) throw InvariantError("gaussian_evolve: negative damping rate");
  g0.validate();
  const Eigen::Matrix2d vac = 0.5 * Eigen::Matrix2d::Identity();

  GaussianTrajectory traj;
  GaussianState g = g0;
  double t = t0;
  for (double ts : sample_times) {
    if (ts < t - 1e-15) throw InvariantError("gaussian_evolve: sample times must be ascending");
    const auto edges = segment_edges(signal, t, ts);
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
      const double a = edges[e], b = edges[e + 1];
      const double span = b - a;
      if (span <= 0.0) continue;
      const double decay = std::exp(-gamma * span);
      if (signal.piecewise_constant_kind()) {
        const Complex force = drive.force(signal.value(0.5 * (a + b)));
        const Eigen::Vector2d f(force.real(), force.imag());
        if (gamma > 0.0) {
          const Eigen::Vector2d target = f / gamma;
          g.means = target + (g.means - target) * decay;
        } else {
          g.means += f * span;
        }
      } else {
        auto forced = [&](double s) -> Eigen::Vector2d {
          const Complex force = drive.force(signal.value(s));
          const double kernel = gamma > 0.0 ? std::exp(-gamma * (b - s)) : 1.0;
          return kernel * Eigen::Vector2d(force.real(), force.imag());
        };
        const int n = std::max(2, static_cast<int>(std::ceil(span / quad_dt)));
        g.means = g.means * decay + simpson(forced, a, b, n);
      }
      if (gamma > 0.0) {
        const double cov_decay = std::exp(-2.0 * gamma * span);
        g.covariance = vac + (g.covariance - vac) * cov_decay;
      }
    }
    t = ts;
    g.validate();
    traj.times.push_back(ts);
    traj.states.push_back(g);
  }
  return traj;
}

std::vector<double> general_solution_node(const AffineForce& f, double gamma,
                                          const InputSignal& signal, double t0,
                                          const std::vector<double>& sample_times,
                                          double initial_value, DampingMode mode,
                                          double quad_dt) {
  if (mode == DampingMode::damped && gamma <= 0.0)
    throw InvariantError("general_solution_node: damped mode needs gamma > 0 "
                         "(use DampingMode::undamped for the definite-integral form)");

  std::vector<double> out;
  out.reserve(sample_times.size());
  double y = initial_value;
  double t = t0;
  // Running exponentially-weighted derivative integral for smooth signals.
  double deriv_integral = 0.0;
  const double f_at_t0 = f.eval(signal.value(t0));

  for (double ts : sample_times) {
    if (ts < t - 1e-15) throw InvariantError("general_solution_node: sample times must ascend");
    const auto edges = segment_edges(signal, t, ts);
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
      const double a = edges[e], b = edges[e + 1];
      const double span = b - a;
      if (span <= 0.0) continue;
      if (mode == DampingMode::undamped) {
        if (signal.piecewise_constant_kind()) {
          y += span * f.eval(signal.value(0.5 * (a + b)));
        } else {
          auto integrand = [&](double s) { return f.eval(signal.value(s)); };
          y += simpson(integrand, a, b, std::max(2, static_cast<int>(std::ceil(span / quad_dt))));
        }
        continue;
      }
      const double decay = std::exp(-gamma * span);
      if (signal.piecewise_constant_kind()) {
        // Constant-input segments evolve exactly; edges carry no impulse.
        const double target = f.eval(signal.value(0.5 * (a + b))) / gamma;
        y = target + (y - target) * decay;
      } else {
        auto dfds = [&](double s) {
          return std::exp(-gamma * (b - s)) * f.weights.dot(signal.derivative(s));
        };
        const int n = std::max(2, static_cast<int>(std::ceil(span / quad_dt)));
        deriv_integral = deriv_integral * decay + simpson(dfds, a, b, n);
        const double elapsed = b - t0;
        y = initial_value * std::exp(-gamma * elapsed) +
            (f.eval(signal.value(b)) - std::exp(-gamma * elapsed) * f_at_t0) / gamma -
            deriv_integral / gamma;
      }
    }
    t = ts;
    out.push_back(y);
  }
  return out;
}

RMat gaussian_moment_drift(const GaussianDrive& drive, double gamma, const RVec& u) {
  const Complex force = drive.force(u);
  const double fx = force.real(), fp = force.imag();
  RMat a = RMat::Zero(6, 6);
  // Moment order: (1, <X>, <P>, <XX>, <PP>, <sym XP>).
  a(1, 0) = fx;
  a(1, 1) = -gamma;
  a(2, 0) = fp;
  a(2, 2) = -gamma;
  a(3, 0) = gamma;
  a(3, 1) = 2.0 * fx;
  a(3, 3) = -2.0 * gamma;
  a(4, 0) = gamma;
  a(4, 2) = 2.0 * fp;
  a(4, 4) = -2.0 * gamma;
  a(5, 1) = fp;
  a(5, 2) = fx;
  a(5, 5) = -2.0 * gamma;
  return a;
}

}  // namespace qrc
