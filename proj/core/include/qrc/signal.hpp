#pragma once

#include <functional>
#include <vector>

#include "qrc/types.hpp"

namespace qrc {

// Time-dependent input u(t). Piecewise-constant signals expose their segment
// edges so integrators can split steps exactly at the jumps; by construction
// the jumps carry no derivative impulse.
class InputSignal {
 public:
  enum class Kind { constant, piecewise_constant, sampled, analytic };

  static InputSignal constant(RVec value);
  static InputSignal constant(double value);

  // value[i] holds on [start_times[i], start_times[i+1]); the last value holds
  // from its start time onward. start_times must be strictly increasing.
  static InputSignal piecewise_constant(std::vector<double> start_times, std::vector<RVec> values);
  static InputSignal piecewise_constant(std::vector<double> start_times, std::vector<double> values);

  // Linear interpolation between samples; constant extrapolation outside.
  static InputSignal sampled(std::vector<double> times, std::vector<RVec> values);

  // Caller-supplied u(t) and (optionally) du/dt. Without a derivative the
  // signal reports derivative() via central differences.
  static InputSignal analytic(int dim, std::function<RVec(double)> f,
                              std::function<RVec(double)> df = nullptr);

  RVec value(double t) const;
  RVec derivative(double t) const;

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }
  bool piecewise_constant_kind() const {
    return kind_ == Kind::constant || kind_ == Kind::piecewise_constant;
  }

  // Segment edges strictly inside (t0, t1), ascending.
  std::vector<double> breakpoints_in(double t0, double t1) const;

 private:
  InputSignal() = default;

  Kind kind_ = Kind::constant;
  int dim_ = 1;
  std::vector<double> times_;
  std::vector<RVec> values_;
  std::function<RVec(double)> f_;
  std::function<RVec(double)> df_;
};

}  // namespace qrc
