#include "qrc/reservoir.hpp"

#include <cmath>

#include "qrc/rng.hpp"

namespace qrc {

namespace {

RMat real_nodes(const std::vector<CVec>& values) {
  if (values.empty()) return RMat(0, 0);
  RMat out(values.size(), values[0].size());
  for (size_t r = 0; r < values.size(); ++r) {
    if (values[r].imag().cwiseAbs().maxCoeff() > 1e-9)
      throw InvariantError("node matrix requires Hermitian basis elements (complex value seen)");
    out.row(r) = values[r].real().transpose();
  }
  return out;
}

}  // namespace

RMat run_discrete(const DiscreteReservoir& reservoir, const std::vector<RVec>& inputs) {
  DensityMatrix rho = reservoir.initial ? *reservoir.initial
                                        : DensityMatrix::basis_state(0, reservoir.dims);
  if (rho.dim() != reservoir.basis.dim())
    throw DimensionError("run_discrete: basis does not match system dimension");

  std::vector<CVec> rows;
  rows.reserve(inputs.size());
  for (const auto& u : inputs) {
    rho = reservoir.input.apply(u, rho);
    CMat stepped = reservoir.measurement.map(reservoir.internal.map(rho.matrix()));
    rho = DensityMatrix(std::move(stepped), rho.subsystem_dims());
    rows.push_back(expectation_vector(rho, reservoir.basis));
  }
  return real_nodes(rows);
}

RMat run_continuous(const DriveGenerator& gen, const InputSignal& signal,
                    const DensityMatrix& state0, const OperatorBasis& basis,
                    const std::vector<double>& sample_times, double dt) {
  const Trajectory traj = evolve_sampled(state0, gen, signal, 0.0, sample_times, dt, &basis);
  return real_nodes(traj.node_values);
}

RMat run_continuous_gaussian(const GaussianDrive& drive, double gamma, const InputSignal& signal,
                             const GaussianState& g0, const std::vector<double>& sample_times) {
  const GaussianTrajectory traj = gaussian_evolve(g0, drive, gamma, signal, 0.0, sample_times);
  RMat out(traj.states.size(), 5);
  for (size_t r = 0; r < traj.states.size(); ++r)
    out.row(r) = gaussian_nodes(traj.states[r]).transpose();
  return out;
}

StmResult stm_capacity(const DiscreteReservoir& reservoir, int length,
                       const std::vector<int>& delays, double lambda, std::uint64_t seed,
                       double washout_fraction) {
  if (reservoir.input.input_dim() != 1)
    throw DimensionError("stm_capacity: the benchmark drives a scalar input");
  int max_delay = 0;
  for (int d : delays) {
    if (d < 0) throw InvariantError("stm_capacity: negative delay");
    max_delay = std::max(max_delay, d);
  }
  if (length < 50 * std::max(1, max_delay))
    throw InvariantError("stm_capacity: sequence length must be at least 50x the max delay");

  Rng rng(seed);
  StmResult result;
  result.inputs.reserve(length);
  for (int j = 0; j < length; ++j) result.inputs.push_back(RVec::Constant(1, rng.uniform()));

  const RMat nodes = run_discrete(reservoir, result.inputs);
  const int washout = static_cast<int>(std::ceil(washout_fraction * length));

  for (int d : delays) {
    const int start = std::max(washout, d);
    const int rows = length - start;
    RMat x = nodes.middleRows(start, rows);
    RVec y(rows);
    for (int j = 0; j < rows; ++j) y(j) = result.inputs[start + j - d](0);
    const ReadoutModel model = train_readout(x, y, lambda);
    const double r2 = std::clamp(1.0 - model.test_nmse, 0.0, 1.0);
    result.delays.push_back(d);
    result.r2.push_back(r2);
    result.capacity += r2;
  }
  return result;
}

SineResult sine_estimation(const SineTaskConfig& config, const ProbeOptions& opts) {
  if (config.read_times.empty())
    throw InvariantError("sine_estimation: need at least one read time");

  const bool amplitude = config.encoding == SineEncoding::amplitude;
  SignalProtocol protocol;
  protocol.label = amplitude ? "sine-amplitude" : "sine-phase";
  protocol.make = [config, amplitude](const RVec& p) {
    const double a = amplitude ? p(0) : config.fixed_amplitude;
    const double phi = amplitude ? config.fixed_phase : 2.0 * M_PI * p(0);
    const double omega = config.omega;
    return InputSignal::analytic(
        1, [a, phi, omega](double t) { return RVec::Constant(1, a * std::sin(omega * t + phi)); },
        [a, phi, omega](double t) {
          return RVec::Constant(1, a * omega * std::cos(omega * t + phi));
        });
  };

  GaussianDrive drive{[](const RVec& u) { return Complex(u(0), 0.0); }};

  ProbeOptions probe_opts = opts;
  probe_opts.grid = config.parameter_grid;

  SineResult result;
  result.node_report = probe_continuous_gaussian(drive, config.gamma, protocol,
                                                 GaussianState::vacuum(), config.read_times,
                                                 probe_opts);

  // Feature matrix: all node values at all read times, one row per parameter.
  const auto grid = config.parameter_grid.points();
  const int n_params = static_cast<int>(grid.size());
  const int n_times = static_cast<int>(config.read_times.size());
  RMat features(n_params, 5 * n_times);
  RVec targets(n_params);
  for (int p = 0; p < n_params; ++p) {
    const InputSignal signal = protocol.make(grid[p]);
    const GaussianTrajectory traj = gaussian_evolve(GaussianState::vacuum(), drive, config.gamma,
                                                    signal, 0.0, config.read_times);
    for (int rt = 0; rt < n_times; ++rt)
      features.row(p).segment(5 * rt, 5) = gaussian_nodes(traj.states[rt]).transpose();
    targets(p) = grid[p](0);
  }
  result.readout = train_readout(features, targets, config.lambda);
  result.targets = targets;
  result.predictions = result.readout.predict(features);
  result.nmse = result.readout.test_nmse;

  if (result.node_report.any_nonlinear())
    result.overall = Verdict::nonlinear;
  else if (result.node_report.any_indeterminate())
    result.overall = Verdict::indeterminate;
  else
    result.overall = Verdict::linear;
  return result;
}

}  // namespace qrc
