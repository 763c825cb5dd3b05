#pragma once

#include <optional>
#include <vector>

#include "qrc/channels.hpp"
#include "qrc/dynamics.hpp"
#include "qrc/linearity.hpp"
#include "qrc/readout.hpp"
#include "qrc/types.hpp"

namespace qrc {

// Discrete-mode reservoir: per step rho <- C_out[C_res[C_in(u_j)[rho]]], with
// the basis expectation values recorded after the full step.
struct DiscreteReservoir {
  ParamChannel input;
  FixedChannel internal = identity_channel();
  FixedChannel measurement = identity_channel();
  OperatorBasis basis;
  std::vector<int> dims;
  // Defaults to the all-zeros computational state.
  std::optional<DensityMatrix> initial;
};

// steps x nodes matrix of real node values (the basis must be Hermitian).
RMat run_discrete(const DiscreteReservoir& reservoir, const std::vector<RVec>& inputs);

RMat run_continuous(const DriveGenerator& gen, const InputSignal& signal,
                    const DensityMatrix& state0, const OperatorBasis& basis,
                    const std::vector<double>& sample_times, double dt = 0.0);

RMat run_continuous_gaussian(const GaussianDrive& drive, double gamma, const InputSignal& signal,
                             const GaussianState& g0, const std::vector<double>& sample_times);

// --- benchmark tasks ----------------------------------------------------------

struct StmResult {
  std::vector<int> delays;
  std::vector<double> r2;      // clipped to [0, 1], evaluated on the test split
  double capacity = 0.0;       // sum of r2
  std::vector<RVec> inputs;    // the driving sequence actually used
};

// Short-term-memory capacity: i.i.d. uniform [0,1] scalar input, linear
// readout trained to reconstruct u_{j-d} per delay d. The first washout
// fraction of steps is discarded before training.
StmResult stm_capacity(const DiscreteReservoir& reservoir, int length,
                       const std::vector<int>& delays, double lambda, std::uint64_t seed,
                       double washout_fraction = 0.1);

enum class SineEncoding { amplitude, phase };

struct SineTaskConfig {
  SineEncoding encoding = SineEncoding::amplitude;
  double gamma = 1.0;
  double omega = 2.0;
  double fixed_amplitude = 0.6;  // used by the phase task
  double fixed_phase = 0.0;      // used by the amplitude task
  UGrid parameter_grid;          // parameter values probed
  std::vector<double> read_times;
  double lambda = 1e-6;
};

struct SineResult {
  LinearityReport node_report;  // node value vs encoded parameter
  ReadoutModel readout;         // linear readout of the parameter
  RVec targets;                 // encoded parameter values
  RVec predictions;             // readout estimates over the full grid
  double nmse = 0.0;
  Verdict overall = Verdict::indeterminate;
};

// Damped bosonic mode driven by A sin(omega t + phi); the task parameter is
// the amplitude or the phase. Reports readout error and per-node verdicts.
SineResult sine_estimation(const SineTaskConfig& config, const ProbeOptions& opts);

}  // namespace qrc
