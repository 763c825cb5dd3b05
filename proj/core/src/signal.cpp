#include "qrc/signal.hpp"

#include <algorithm>
#include <cmath>

namespace qrc {

namespace {

void check_finite(const RVec& v) {
  if (!v.allFinite()) throw InvariantError("signal value not finite");
}

}  // namespace

InputSignal InputSignal::constant(RVec value) {
  check_finite(value);
  InputSignal s;
  s.kind_ = Kind::constant;
  s.dim_ = static_cast<int>(value.size());
  s.values_ = {std::move(value)};
  return s;
}

InputSignal InputSignal::constant(double value) {
  return constant(RVec::Constant(1, value));
}

InputSignal InputSignal::piecewise_constant(std::vector<double> start_times,
                                            std::vector<RVec> values) {
  if (start_times.empty() || start_times.size() != values.size())
    throw DimensionError("piecewise_constant: need one value per start time");
  for (size_t i = 1; i < start_times.size(); ++i)
    if (start_times[i] <= start_times[i - 1])
      throw InvariantError("piecewise_constant: start times must be strictly increasing");
  for (const auto& v : values) check_finite(v);
  InputSignal s;
  s.kind_ = Kind::piecewise_constant;
  s.dim_ = static_cast<int>(values[0].size());
  s.times_ = std::move(start_times);
  s.values_ = std::move(values);
  return s;
}

InputSignal InputSignal::piecewise_constant(std::vector<double> start_times,
                                            std::vector<double> values) {
  std::vector<RVec> vs;
  vs.reserve(values.size());
  for (double v : values) vs.push_back(RVec::Constant(1, v));
  return piecewise_constant(std::move(start_times), std::move(vs));
}

InputSignal InputSignal::sampled(std::vector<double> times, std::vector<RVec> values) {
  if (times.size() < 2 || times.size() != values.size())
    throw DimensionError("sampled: need at least two samples");
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1]) throw InvariantError("sampled: times must be strictly increasing");
  for (const auto& v : values) check_finite(v);
  InputSignal s;
  s.kind_ = Kind::sampled;
  s.dim_ = static_cast<int>(values[0].size());
  s.times_ = std::move(times);
  s.values_ = std::move(values);
  return s;
}

InputSignal InputSignal::analytic(int dim, std::function<RVec(double)> f,
                                  std::function<RVec(double)> df) {
  InputSignal s;
  s.kind_ = Kind::analytic;
  s.dim_ = dim;
  s.f_ = std::move(f);
  s.df_ = std::move(df);
  return s;
}

RVec InputSignal::value(double t) const {
  switch (kind_) {
    case Kind::constant:
      return values_[0];
    case Kind::piecewise_constant: {
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const auto idx = it == times_.begin() ? 0 : static_cast<size_t>(it - times_.begin()) - 1;
      return values_[idx];
    }
    case Kind::sampled: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const auto hi = static_cast<size_t>(it - times_.begin());
      const auto lo = hi - 1;
      const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
      return (1.0 - w) * values_[lo] + w * values_[hi];
    }
    case Kind::analytic:
      return f_(t);
  }
  throw Error("unreachable");
}

RVec InputSignal::derivative(double t) const {
  switch (kind_) {
    case Kind::constant:
    case Kind::piecewise_constant:
      return RVec::Zero(dim_);
    case Kind::sampled: {
      if (t <= times_.front() || t >= times_.back()) return RVec::Zero(dim_);
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const auto hi = static_cast<size_t>(it - times_.begin());
      const auto lo = hi - 1;
      return (values_[hi] - values_[lo]) / (times_[hi] - times_[lo]);
    }
    case Kind::analytic: {
      if (df_) return df_(t);
      const double h = 1e-6;
      return (f_(t + h) - f_(t - h)) / (2.0 * h);
    }
  }
  throw Error("unreachable");
}

std::vector<double> InputSignal::breakpoints_in(double t0, double t1) const {
  std::vector<double> out;
  if (kind_ == Kind::piecewise_constant || kind_ == Kind::sampled) {
    for (double t : times_)
      if (t > t0 && t < t1) out.push_back(t);
  }
  return out;
}

}  // namespace qrc
