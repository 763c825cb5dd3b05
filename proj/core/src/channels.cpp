#include "qrc/channels.hpp"

#include <cmath>

#include "qrc/linalg.hpp"

namespace qrc {

namespace {

const Complex kI(0.0, 1.0);

// Trace out the first `count` subsystems of an arbitrary operator (not
// necessarily a state); linear-extension version of partial_trace used by
// re-initialization channels so that Choi construction works on matrix units.
CMat trace_out_leading(const CMat& m, const std::vector<int>& dims, int count) {
  const int n_sub = static_cast<int>(dims.size());
  int lead = 1, rest = 1;
  for (int s = 0; s < count; ++s) lead *= dims[s];
  for (int s = count; s < n_sub; ++s) rest *= dims[s];
  CMat out = CMat::Zero(rest, rest);
  for (int i = 0; i < rest; ++i)
    for (int j = 0; j < rest; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < lead; ++k) acc += m(k * rest + i, k * rest + j);
      out(i, j) = acc;
    }
  return out;
}

// Subsystem layout for a matrix fed through the raw map: leading qubit(s)
// plus remainder. Re-init channels assume the input carries enough dimension.
std::vector<int> split_dims(int total, int lead) {
  if (total % lead != 0)
    throw DimensionError("channel input dimension " + std::to_string(total) +
                         " is not divisible by the re-initialized dimension " + std::to_string(lead));
  std::vector<int> dims = {lead};
  if (total / lead > 1) dims.push_back(total / lead);
  return dims;
}

ParamChannel make_reinit_qubit(std::string kind,
                               std::function<CMat(double)> target_state) {
  auto raw = [state = std::move(target_state)](const RVec& u, const CMat& rho) -> CMat {
    const CMat sigma = state(u(0));
    const int total = static_cast<int>(rho.rows());
    if (total == 2) return sigma * rho.trace();
    const auto dims = split_dims(total, 2);
    return tensor(sigma, trace_out_leading(rho, dims, 1));
  };
  ChannelDescriptor desc;
  desc.kind = std::move(kind);
  desc.reinit_subsystems = 1;
  return ParamChannel(1, std::move(raw), std::move(desc), {Interval{0.0, 1.0}});
}

}  // namespace

FixedChannel identity_channel() {
  return FixedChannel{"identity", [](const CMat& rho) { return rho; }};
}

FixedChannel unitary_channel(const CMat& u, std::string label) {
  if (u.rows() != u.cols()) throw DimensionError("unitary_channel: matrix must be square");
  const double udef = max_abs(CMat(u * u.adjoint() - CMat::Identity(u.rows(), u.rows())));
  if (udef > 1e-10)
    throw InvariantError("unitary_channel: matrix not unitary, defect " + std::to_string(udef));
  return FixedChannel{std::move(label), [u](const CMat& rho) { return CMat(u * rho * u.adjoint()); }};
}

ParamChannel::ParamChannel(int input_dim, RawApply raw, ChannelDescriptor descriptor,
                           std::vector<Interval> input_domain)
    : input_dim_(input_dim), raw_(std::move(raw)), descriptor_(std::move(descriptor)),
      domain_(std::move(input_domain)) {
  if (input_dim_ < 0) throw DimensionError("ParamChannel: negative input dimension");
  if (domain_.empty()) domain_.assign(input_dim_, Interval{0.0, 1.0});
  if (static_cast<int>(domain_.size()) != input_dim_)
    throw DimensionError("ParamChannel: domain size does not match input dimension");
}

void ParamChannel::check_domain(const RVec& u) const {
  if (u.size() != input_dim_)
    throw DimensionError("channel expects " + std::to_string(input_dim_) + "-dimensional input, got " +
                         std::to_string(u.size()));
  for (int i = 0; i < input_dim_; ++i)
    if (!domain_[i].contains(u(i)))
      throw InvariantError("input component " + std::to_string(i) + " = " + std::to_string(u(i)) +
                           " outside [" + std::to_string(domain_[i].lo) + ", " +
                           std::to_string(domain_[i].hi) + "]");
}

CMat ParamChannel::apply_raw(const RVec& u, const CMat& rho) const { return raw_(u, rho); }

DensityMatrix ParamChannel::apply(const RVec& u, const DensityMatrix& rho) const {
  check_domain(u);
  CMat out = raw_(u, rho.matrix());
  std::vector<int> dims = rho.subsystem_dims();
  if (out.rows() != rho.dim()) dims = {static_cast<int>(out.rows())};
  return DensityMatrix(std::move(out), std::move(dims));
}

ParamChannel reinit_pure_sqrt() {
  return make_reinit_qubit("reinit-pure-sqrt", [](double u) {
    CVec psi(2);
    psi << std::sqrt(1.0 - u), std::sqrt(u);
    return CMat(psi * psi.adjoint());
  });
}

ParamChannel reinit_mixed() {
  return make_reinit_qubit("reinit-mixed", [](double u) {
    CMat sigma = CMat::Zero(2, 2);
    sigma(0, 0) = 1.0 - u;
    sigma(1, 1) = u;
    return sigma;
  });
}

ParamChannel reinit_general(int input_dim,
                            std::function<std::vector<DensityMatrix>(const RVec&)> states,
                            std::string kind) {
  auto probe = states;  // evaluated lazily; subsystem count known per call
  auto raw = [states = std::move(states)](const RVec& u, const CMat& rho) -> CMat {
    const auto fresh = states(u);
    if (fresh.empty()) throw InvariantError("reinit_general: no re-initialization states");
    CMat sigma = fresh[0].matrix();
    int lead = fresh[0].dim();
    for (size_t n = 1; n < fresh.size(); ++n) {
      sigma = tensor(sigma, fresh[n].matrix());
      lead *= fresh[n].dim();
    }
    const int total = static_cast<int>(rho.rows());
    if (total == lead) return sigma * rho.trace();
    const auto dims = split_dims(total, lead);
    return tensor(sigma, trace_out_leading(rho, dims, 1));
  };
  ChannelDescriptor desc;
  desc.kind = std::move(kind);
  // Subsystem count matters only for fit-scope selection; record the count of
  // re-initialized factors at a representative input.
  desc.reinit_subsystems = static_cast<int>(probe(RVec::Constant(input_dim, 0.5)).size());
  return ParamChannel(input_dim, std::move(raw), std::move(desc));
}

ParamChannel channel_mixture(std::vector<FixedChannel> channels,
                             std::function<RVec(const RVec&)> weights, int input_dim) {
  if (channels.empty()) throw DimensionError("channel_mixture: need at least one channel");
  auto raw = [channels = std::move(channels), weights = std::move(weights)](
                 const RVec& u, const CMat& rho) -> CMat {
    const RVec w = weights(u);
    if (w.size() != static_cast<Eigen::Index>(channels.size()))
      throw DimensionError("channel_mixture: weight count mismatch");
    double sum = 0.0;
    for (Eigen::Index m = 0; m < w.size(); ++m) {
      if (w(m) < -1e-12)
        throw InvariantError("channel_mixture: negative weight " + std::to_string(w(m)));
      sum += w(m);
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw InvariantError("channel_mixture: weights sum to " + std::to_string(sum));
    CMat out = CMat::Zero(rho.rows(), rho.cols());
    for (size_t m = 0; m < channels.size(); ++m) out += w(m) * channels[m].map(rho);
    return out;
  };
  ChannelDescriptor desc;
  desc.kind = "channel-mixture";
  return ParamChannel(input_dim, std::move(raw), std::move(desc));
}

ParamChannel parameterized_unitary(const CMat& generator,
                                   std::function<double(const RVec&)> angle_map, int input_dim) {
  if (herm_defect(generator) > kHermTol)
    throw InvariantError("parameterized_unitary: generator must be Hermitian");
  auto raw = [generator, angle_map = std::move(angle_map)](const RVec& u, const CMat& rho) -> CMat {
    const CMat uu = matrix_exp(CMat(-kI * angle_map(u) * generator));
    return uu * rho * uu.adjoint();
  };
  ChannelDescriptor desc;
  desc.kind = "parameterized-unitary";
  return ParamChannel(input_dim, std::move(raw), std::move(desc));
}

ParamChannel unitary_from_eigenphases(std::vector<CMat> projectors,
                                      std::vector<std::function<double(const RVec&)>> phases,
                                      int input_dim) {
  if (projectors.size() != phases.size())
    throw DimensionError("unitary_from_eigenphases: one phase map per projector");
  auto raw = [projectors = std::move(projectors), phases = std::move(phases)](
                 const RVec& u, const CMat& rho) -> CMat {
    CMat uu = CMat::Zero(rho.rows(), rho.cols());
    for (size_t m = 0; m < projectors.size(); ++m)
      uu += std::exp(kI * phases[m](u)) * projectors[m];
    return uu * rho * uu.adjoint();
  };
  ChannelDescriptor desc;
  desc.kind = "unitary-from-eigenphases";
  return ParamChannel(input_dim, std::move(raw), std::move(desc));
}

CMat choi_matrix(const ParamChannel& ch, const RVec& u, int dim) {
  CMat choi = CMat::Zero(dim * dim, dim * dim);
  CMat unit = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      unit(i, j) = 1.0;
      const CMat mapped = ch.apply_raw(u, unit);
      unit(i, j) = 0.0;
      // C[|i><j|] (x) |i><j|
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) choi(a * dim + i, b * dim + j) += mapped(a, b);
    }
  return choi;
}

CptpDefects cptp_defects(const ParamChannel& ch, const RVec& u, int dim) {
  CptpDefects d{0.0, 0.0};
  CMat unit = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      unit(i, j) = 1.0;
      const Complex tr = ch.apply_raw(u, unit).trace();
      unit(i, j) = 0.0;
      const double want = (i == j) ? 1.0 : 0.0;
      d.trace_defect = std::max(d.trace_defect, std::abs(tr - want));
    }
  d.choi_min_eig = min_eigenvalue(choi_matrix(ch, u, dim));
  return d;
}

GaussianParamChannel::GaussianParamChannel(int input_dim, Apply apply,
                                           GaussianChannelDescriptor descriptor,
                                           std::vector<Interval> input_domain)
    : input_dim_(input_dim), apply_(std::move(apply)), descriptor_(std::move(descriptor)),
      domain_(std::move(input_domain)) {
  if (domain_.empty()) domain_.assign(input_dim_, Interval{0.0, 1.0});
}

GaussianState GaussianParamChannel::apply(const RVec& u, const GaussianState& g) const {
  if (u.size() != input_dim_) throw DimensionError("gaussian channel input dimension mismatch");
  for (int i = 0; i < input_dim_; ++i)
    if (!domain_[i].contains(u(i)))
      throw InvariantError("gaussian channel input outside domain");
  GaussianState out = apply_(u, g);
  out.validate();
  return out;
}

GaussianParamChannel displacement_encode(BetaMap beta) {
  auto apply = [beta = std::move(beta)](const RVec& u, const GaussianState& g) {
    const Complex b = beta(u);
    GaussianState out = g;
    out.means(0) += std::sqrt(2.0) * b.real();
    out.means(1) += std::sqrt(2.0) * b.imag();
    return out;
  };
  return GaussianParamChannel(1, std::move(apply), {"displacement", false});
}

GaussianParamChannel coherent_reinit(BetaMap beta) {
  auto apply = [beta = std::move(beta)](const RVec& u, const GaussianState&) {
    const Complex b = beta(u);
    GaussianState out = GaussianState::vacuum();
    out.means(0) = std::sqrt(2.0) * b.real();
    out.means(1) = std::sqrt(2.0) * b.imag();
    return out;
  };
  return GaussianParamChannel(1, std::move(apply), {"coherent-reinit", true});
}

GaussianParamChannel squeezed_reinit(std::function<double(const RVec&)> r_map, double phi) {
  auto apply = [r_map = std::move(r_map), phi](const RVec& u, const GaussianState&) {
    GaussianState out;
    out.covariance = squeezed_covariance(r_map(u), phi);
    return out;
  };
  return GaussianParamChannel(1, std::move(apply), {"squeezed-reinit", true});
}

}  // namespace qrc
