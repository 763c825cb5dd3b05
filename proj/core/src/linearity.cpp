#include "qrc/linearity.hpp"

#include <algorithm>
#include <cmath>

#include "qrc/linalg.hpp"
#include "qrc/parallel.hpp"

namespace qrc {

namespace {

struct FitResult {
  RVec coefficients;
  std::vector<double> residuals;
  double max_abs_residual = 0.0;
};

FitResult fit_with_residuals(const std::vector<RVec>& u_samples, const std::vector<double>& y) {
  const int m = static_cast<int>(u_samples.size());
  if (m == 0 || m != static_cast<int>(y.size()))
    throw DimensionError("affine_fit: sample count mismatch");
  const int n = static_cast<int>(u_samples[0].size());
  if (m <= n + 1)
    throw DimensionError("affine_fit: need more than " + std::to_string(n + 1) + " samples");

  RMat design(m, n + 1);
  RVec rhs(m);
  for (int i = 0; i < m; ++i) {
    design(i, 0) = 1.0;
    design.row(i).tail(n) = u_samples[i].transpose();
    rhs(i) = y[i];
  }
  Eigen::ColPivHouseholderQR<RMat> qr(design);
  if (qr.rank() < n + 1)
    throw InvariantError("affine_fit: design matrix rank deficient (degenerate u grid)");

  FitResult out;
  out.coefficients = qr.solve(rhs);
  const RVec res = rhs - design * out.coefficients;
  out.residuals.resize(m);
  for (int i = 0; i < m; ++i) {
    out.residuals[i] = res(i);
    out.max_abs_residual = std::max(out.max_abs_residual, std::abs(res(i)));
  }
  return out;
}

double value_range(const std::vector<std::vector<double>>& groups) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& g : groups)
    for (double v : g) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return hi - lo;
}

}  // namespace

AffineFit affine_fit(const std::vector<RVec>& u_samples, const std::vector<double>& y_samples) {
  const auto full = fit_with_residuals(u_samples, y_samples);
  return AffineFit{full.coefficients, full.max_abs_residual};
}

PriorEnsemble::Kind prior_kind_from_string(const std::string& s) {
  if (s == "haar-pure") return PriorEnsemble::Kind::haar_pure;
  if (s == "ginibre-mixed") return PriorEnsemble::Kind::ginibre_mixed;
  if (s == "product-basis") return PriorEnsemble::Kind::product_basis;
  throw ConfigError("unknown prior ensemble kind: " + s);
}

std::string to_string(PriorEnsemble::Kind kind) {
  switch (kind) {
    case PriorEnsemble::Kind::haar_pure: return "haar-pure";
    case PriorEnsemble::Kind::ginibre_mixed: return "ginibre-mixed";
    case PriorEnsemble::Kind::product_basis: return "product-basis";
  }
  return "?";
}

std::vector<DensityMatrix> sample_priors(const PriorEnsemble& ensemble,
                                         const std::vector<int>& dims) {
  int d = 1;
  for (int s : dims) d *= s;
  Rng rng(ensemble.seed);
  std::vector<DensityMatrix> priors;
  priors.reserve(ensemble.count);
  for (int i = 0; i < ensemble.count; ++i) {
    switch (ensemble.kind) {
      case PriorEnsemble::Kind::haar_pure: {
        priors.push_back(DensityMatrix::pure(rng.haar_state(d), dims));
        break;
      }
      case PriorEnsemble::Kind::ginibre_mixed: {
        const CMat g = rng.ginibre(d, d);
        CMat rho = g * g.adjoint();
        rho /= rho.trace();
        priors.emplace_back(std::move(rho), dims);
        break;
      }
      case PriorEnsemble::Kind::product_basis: {
        priors.push_back(DensityMatrix::basis_state(rng.uniform_int(d), dims));
        break;
      }
    }
  }
  return priors;
}

std::vector<GaussianState> sample_gaussian_priors(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<GaussianState> priors;
  priors.reserve(count);
  for (int i = 0; i < count; ++i) {
    GaussianState g;
    g.means(0) = rng.normal();
    g.means(1) = rng.normal();
    const double nu = rng.uniform(1.0, 2.0);       // thermal factor >= 1
    const double r = rng.uniform(-0.7, 0.7);
    const double theta = rng.uniform(0.0, M_PI);
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
    diag(0, 0) = 0.5 * nu * std::exp(-2.0 * r);
    diag(1, 1) = 0.5 * nu * std::exp(2.0 * r);
    g.covariance = rot * diag * rot.transpose();
    g.validate();
    priors.push_back(g);
  }
  return priors;
}

std::vector<RVec> UGrid::points() const {
  if (points_per_dim < 2) throw ConfigError("u grid needs at least 2 points per dimension");
  if (hi <= lo) throw ConfigError("u grid interval is empty");
  long total = 1;
  for (int k = 0; k < dim; ++k) total *= points_per_dim;
  std::vector<RVec> pts;
  pts.reserve(total);
  for (long idx = 0; idx < total; ++idx) {
    RVec u(dim);
    long rest = idx;
    for (int k = dim - 1; k >= 0; --k) {
      const int step = static_cast<int>(rest % points_per_dim);
      rest /= points_per_dim;
      u(k) = lo + (hi - lo) * step / (points_per_dim - 1.0);
    }
    pts.push_back(std::move(u));
  }
  return pts;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::linear: return "linear";
    case Verdict::nonlinear: return "nonlinear";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "linear") return Verdict::linear;
  if (s == "nonlinear") return Verdict::nonlinear;
  if (s == "indeterminate") return Verdict::indeterminate;
  throw ConfigError("unknown verdict: " + s);
}

Verdict classify(double abs_residual, double value_range, double tau_lin, double tau_nonlin) {
  if (!(tau_lin < tau_nonlin)) throw ConfigError("verdict thresholds must satisfy tau_lin < tau_nonlin");
  const double scale = std::max(value_range, 1.0);
  const double rel = abs_residual / scale;
  if (rel <= tau_lin) return Verdict::linear;
  if (rel >= tau_nonlin) return Verdict::nonlinear;
  return Verdict::indeterminate;
}

bool LinearityReport::all_linear() const {
  return std::all_of(nodes.begin(), nodes.end(),
                     [](const NodeReport& n) { return n.verdict == Verdict::linear; });
}

bool LinearityReport::any_nonlinear() const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [](const NodeReport& n) { return n.verdict == Verdict::nonlinear; });
}

bool LinearityReport::any_indeterminate() const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [](const NodeReport& n) { return n.verdict == Verdict::indeterminate; });
}

const NodeReport& LinearityReport::node(const std::string& label) const {
  for (const auto& n : nodes)
    if (n.label == label) return n;
  throw Error("no node labeled " + label + " in report");
}

namespace {

// Shared fitting/report assembly. values[group][point][node]; groups are
// priors (discrete probes) or read times (continuous probes). joint = pool all
// groups into one fit per node.
LinearityReport assemble_report(const std::vector<RVec>& grid,
                                const std::vector<std::vector<CVec>>& values,
                                const std::vector<std::string>& labels, bool joint,
                                const ProbeOptions& opts) {
  const int n_groups = static_cast<int>(values.size());
  const int n_points = static_cast<int>(grid.size());
  const int n_nodes = static_cast<int>(labels.size());

  LinearityReport report;
  report.fit_scope = joint ? "joint" : "per-prior";
  report.tau_lin = opts.tau_lin;
  report.tau_nonlin = opts.tau_nonlin;
  report.grid = opts.grid;
  report.priors = opts.priors;

  report.samples.reserve(static_cast<size_t>(n_points) * n_nodes);
  for (int node = 0; node < n_nodes; ++node) {
    // Split the complex node values into real and imaginary series; fit each.
    double range = 0.0;
    double worst_abs = 0.0;
    RVec coeffs;
    std::vector<double> per_point_residual(n_points, 0.0);
    std::vector<double> per_point_value(n_points, 0.0);

    for (int part = 0; part < 2; ++part) {
      std::vector<std::vector<double>> series(n_groups, std::vector<double>(n_points));
      double part_mag = 0.0;
      for (int g = 0; g < n_groups; ++g)
        for (int p = 0; p < n_points; ++p) {
          const Complex v = values[g][p](node);
          series[g][p] = part == 0 ? v.real() : v.imag();
          part_mag = std::max(part_mag, std::abs(series[g][p]));
        }
      if (part == 1 && part_mag < 1e-12) break;  // numerically real node
      range = std::max(range, value_range(series));

      if (joint) {
        std::vector<RVec> us;
        std::vector<double> ys;
        us.reserve(static_cast<size_t>(n_groups) * n_points);
        for (int g = 0; g < n_groups; ++g)
          for (int p = 0; p < n_points; ++p) {
            us.push_back(grid[p]);
            ys.push_back(series[g][p]);
          }
        const auto fit = fit_with_residuals(us, ys);
        worst_abs = std::max(worst_abs, fit.max_abs_residual);
        if (part == 0) coeffs = fit.coefficients;
        for (int g = 0; g < n_groups; ++g)
          for (int p = 0; p < n_points; ++p)
            per_point_residual[p] = std::max(per_point_residual[p],
                                             std::abs(fit.residuals[g * n_points + p]));
      } else {
        double group_worst = -1.0;
        for (int g = 0; g < n_groups; ++g) {
          const auto fit = fit_with_residuals(grid, series[g]);
          if (fit.max_abs_residual > group_worst) {
            group_worst = fit.max_abs_residual;
            if (part == 0) coeffs = fit.coefficients;
          }
          for (int p = 0; p < n_points; ++p)
            per_point_residual[p] = std::max(per_point_residual[p], std::abs(fit.residuals[p]));
        }
        worst_abs = std::max(worst_abs, group_worst);
      }

      if (part == 0)
        for (int p = 0; p < n_points; ++p) {
          double mean = 0.0;
          for (int g = 0; g < n_groups; ++g) mean += series[g][p];
          per_point_value[p] = mean / n_groups;
        }
    }

    NodeReport nr;
    nr.index = node;
    nr.label = labels[node];
    nr.max_abs_residual = worst_abs;
    nr.value_range = range;
    nr.relative_residual = worst_abs / std::max(range, 1.0);
    nr.verdict = classify(worst_abs, range, opts.tau_lin, opts.tau_nonlin);
    nr.coefficients = coeffs;
    report.nodes.push_back(std::move(nr));

    for (int p = 0; p < n_points; ++p)
      report.samples.push_back(ProbeSample{grid[p], node, per_point_value[p],
                                           per_point_residual[p]});
  }
  return report;
}

}  // namespace

LinearityReport probe_discrete(const ParamChannel& channel, const OperatorBasis& basis,
                               const std::vector<int>& dims, const ProbeOptions& opts) {
  if (opts.grid.dim != channel.input_dim())
    throw DimensionError("probe grid dimension does not match channel input dimension");
  const auto grid = opts.grid.points();
  const auto priors = sample_priors(opts.priors, dims);
  const int n_points = static_cast<int>(grid.size());
  const int n_priors = static_cast<int>(priors.size());

  std::vector<std::vector<CVec>> values(n_priors, std::vector<CVec>(n_points));
  parallel_for(n_priors * n_points, opts.threads, [&](int cell) {
    const int pr = cell / n_points;
    const int pt = cell % n_points;
    const DensityMatrix out = channel.apply(grid[pt], priors[pr]);
    values[pr][pt] = expectation_vector(out, basis);
  });

  const bool joint =
      channel.descriptor().reinit_subsystems >= static_cast<int>(dims.size());
  LinearityReport report = assemble_report(grid, values, basis.labels, joint, opts);
  report.probe = "discrete";
  report.encoding = channel.descriptor().kind;
  report.seed = opts.priors.seed;
  return report;
}

LinearityReport probe_discrete_gaussian(const GaussianParamChannel& channel,
                                        const ProbeOptions& opts) {
  if (opts.grid.dim != channel.input_dim())
    throw DimensionError("probe grid dimension does not match channel input dimension");
  const auto grid = opts.grid.points();
  const auto priors = sample_gaussian_priors(opts.priors.count, opts.priors.seed);
  const int n_points = static_cast<int>(grid.size());
  const int n_priors = static_cast<int>(priors.size());

  std::vector<std::vector<CVec>> values(n_priors, std::vector<CVec>(n_points));
  parallel_for(n_priors * n_points, opts.threads, [&](int cell) {
    const int pr = cell / n_points;
    const int pt = cell % n_points;
    const GaussianState out = channel.apply(grid[pt], priors[pr]);
    values[pr][pt] = gaussian_nodes(out).cast<Complex>();
  });

  LinearityReport report = assemble_report(grid, values, gaussian_node_labels(),
                                           channel.descriptor().reinitializes, opts);
  report.probe = "gaussian-discrete";
  report.encoding = channel.descriptor().kind;
  report.seed = opts.priors.seed;
  return report;
}

SignalProtocol constant_level_protocol() {
  return SignalProtocol{"constant-level", [](const RVec& u) { return InputSignal::constant(u); }};
}

LinearityReport probe_continuous(const DriveGenerator& gen, const SignalProtocol& protocol,
                                 const OperatorBasis& basis, const DensityMatrix& state0,
                                 const std::vector<double>& read_times, double dt,
                                 const ProbeOptions& opts) {
  if (read_times.empty()) throw InvariantError("probe_continuous: need at least one read time");
  const auto grid = opts.grid.points();
  const int n_points = static_cast<int>(grid.size());
  const int n_times = static_cast<int>(read_times.size());

  // values[read_time][point][node]
  std::vector<std::vector<CVec>> values(n_times, std::vector<CVec>(n_points));
  parallel_for(n_points, opts.threads, [&](int pt) {
    const InputSignal signal = protocol.make(grid[pt]);
    const Trajectory traj = evolve_sampled(state0, gen, signal, 0.0, read_times, dt, &basis);
    for (int rt = 0; rt < n_times; ++rt) values[rt][pt] = traj.node_values[rt];
  });

  LinearityReport report = assemble_report(grid, values, basis.labels, /*joint=*/false, opts);
  report.probe = "continuous";
  report.encoding = protocol.label;
  report.seed = opts.priors.seed;
  report.fit_scope = "per-read-time";
  report.read_times = read_times;
  return report;
}

LinearityReport probe_continuous_gaussian(const GaussianDrive& drive, double gamma,
                                          const SignalProtocol& protocol, const GaussianState& g0,
                                          const std::vector<double>& read_times,
                                          const ProbeOptions& opts) {
  if (read_times.empty()) throw InvariantError("probe_continuous_gaussian: need a read time");
  const auto grid = opts.grid.points();
  const int n_points = static_cast<int>(grid.size());
  const int n_times = static_cast<int>(read_times.size());

  std::vector<std::vector<CVec>> values(n_times, std::vector<CVec>(n_points));
  parallel_for(n_points, opts.threads, [&](int pt) {
    const InputSignal signal = protocol.make(grid[pt]);
    const GaussianTrajectory traj = gaussian_evolve(g0, drive, gamma, signal, 0.0, read_times);
    for (int rt = 0; rt < n_times; ++rt)
      values[rt][pt] = gaussian_nodes(traj.states[rt]).cast<Complex>();
  });

  LinearityReport report = assemble_report(grid, values, gaussian_node_labels(),
                                           /*joint=*/false, opts);
  report.probe = "gaussian-continuous";
  report.encoding = protocol.label;
  report.seed = opts.priors.seed;
  report.fit_scope = "per-read-time";
  report.read_times = read_times;
  return report;
}

ForcingCheck check_forcing_condition(const DriveGenerator& gen, const OperatorBasis& basis,
                                     const RVec& u0, const RVec& u1, double tol) {
  ForcingCheck out;
  const int d = gen.dim();
  for (int n = 0; n < basis.size(); ++n) {
    const CMat delta = adjoint_rhs(basis.elements[n], gen, u1, 0.0) -
                       adjoint_rhs(basis.elements[n], gen, u0, 0.0);
    const Complex trace_part = delta.trace() / static_cast<double>(d);
    const CMat rem = delta - trace_part * CMat::Identity(d, d);
    const double defect = rem.norm();
    out.labels.push_back(basis.labels[n]);
    out.defect.push_back(defect);
    out.identity_forcing.push_back(defect <= tol);
  }
  return out;
}

ForcingCheck check_forcing_condition_gaussian(const GaussianDrive& drive, double gamma,
                                              const RVec& u0, const RVec& u1, double tol) {
  const RMat delta = gaussian_moment_drift(drive, gamma, u1) -
                     gaussian_moment_drift(drive, gamma, u0);
  static const std::vector<std::string> labels = {"X", "P", "XX", "PP", "XP"};
  ForcingCheck out;
  for (int row = 1; row < 6; ++row) {
    // Everything outside the constant column must be input-independent.
    const double defect = delta.row(row).tail(5).norm();
    out.labels.push_back(labels[row - 1]);
    out.defect.push_back(defect);
    out.identity_forcing.push_back(defect <= tol);
  }
  return out;
}

double nl_contribution(const RVec& weights, double gamma, const InputSignal& signal, double t0,
                       double t, double quad_dt) {
  if (gamma <= 0.0) throw InvariantError("nl_contribution: needs gamma > 0");
  if (signal.piecewise_constant_kind()) return 0.0;  // zero derivative by convention
  if (weights.size() != signal.dimension())
    throw DimensionError("nl_contribution: weight/signal dimension mismatch");

  std::vector<double> edges = {t0};
  for (double b : signal.breakpoints_in(t0, t)) edges.push_back(b);
  edges.push_back(t);

  double integral = 0.0;
  for (size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    if (b <= a) continue;
    integral *= std::exp(-gamma * (b - a));
    auto f = [&](double s) {
      return std::exp(-gamma * (b - s)) * weights.dot(signal.derivative(s));
    };
    int n = std::max(2, static_cast<int>(std::ceil((b - a) / quad_dt)));
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int k = 1; k < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
    integral += (h / 3.0) * acc;
  }
  return integral / gamma;
}

}  // namespace qrc
