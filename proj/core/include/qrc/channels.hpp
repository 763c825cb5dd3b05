#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qrc/density_matrix.hpp"
#include "qrc/gaussian.hpp"
#include "qrc/types.hpp"

namespace qrc {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// A quantum channel with no input dependence, e.g. the internal or measurement
// stage of a discrete reservoir step. Must be linear in its argument.
struct FixedChannel {
  std::string label;
  std::function<CMat(const CMat&)> map;
};

FixedChannel identity_channel();
FixedChannel unitary_channel(const CMat& u, std::string label = "unitary");

struct ChannelDescriptor {
  std::string kind;
  // Number of leading subsystems replaced by fresh states; 0 for channels
  // that act on the prior state. A re-initialization that covers the whole
  // system makes every node value independent of the prior, which lets the
  // linearity probe fit one affine model jointly across priors.
  int reinit_subsystems = 0;
};

// A family of quantum channels indexed by the input vector u. The raw map is
// the linear extension to arbitrary operators (used for Choi/CPTP checks);
// apply() validates the domain and the output state invariants.
class ParamChannel {
 public:
  using RawApply = std::function<CMat(const RVec& u, const CMat& rho)>;

  ParamChannel(int input_dim, RawApply raw, ChannelDescriptor descriptor,
               std::vector<Interval> input_domain = {});

  DensityMatrix apply(const RVec& u, const DensityMatrix& rho) const;
  CMat apply_raw(const RVec& u, const CMat& rho) const;

  int input_dim() const { return input_dim_; }
  const ChannelDescriptor& descriptor() const { return descriptor_; }
  const std::vector<Interval>& input_domain() const { return domain_; }
  void check_domain(const RVec& u) const;

 private:
  int input_dim_;
  RawApply raw_;
  ChannelDescriptor descriptor_;
  std::vector<Interval> domain_;
};

// --- discrete encodings -----------------------------------------------------

// Re-initializes the first qubit to sqrt(1-u)|0> + sqrt(u)|1>. Linear on the
// Z node (<Z> = 1 - 2u) but not on the X node (<X> = 2 sqrt(u(1-u))).
ParamChannel reinit_pure_sqrt();

// Re-initializes the first qubit to the coherence-free mixture
// (1-u)|0><0| + u|1><1|; linear on every node.
ParamChannel reinit_mixed();

// Re-initializes the first `states(u).size()` subsystems to the given product
// of states, keeping the marginal on the rest.
ParamChannel reinit_general(int input_dim,
                            std::function<std::vector<DensityMatrix>(const RVec&)> states,
                            std::string kind = "reinit-general");

// rho -> sum_m w_m(u) C_m[rho]. Weights must stay on the probability simplex
// for every u in the domain; this is checked at application time.
ParamChannel channel_mixture(std::vector<FixedChannel> channels,
                             std::function<RVec(const RVec&)> weights, int input_dim = 1);

// rho -> U rho U^dag with U = exp(-i theta(u) G).
ParamChannel parameterized_unitary(const CMat& generator,
                                   std::function<double(const RVec&)> angle_map,
                                   int input_dim = 1);

// Unitary built from fixed eigenprojectors and input-dependent eigenphases:
// U(u) = sum_m exp(i phi_m(u)) P_m. No linearity promise is attached.
ParamChannel unitary_from_eigenphases(std::vector<CMat> projectors,
                                      std::vector<std::function<double(const RVec&)>> phases,
                                      int input_dim = 1);

// --- channel diagnostics ----------------------------------------------------

// Choi matrix of the channel frozen at u, built by feeding the matrix units
// through the linear extension (equivalent to acting on half of a maximally
// entangled pair): J = sum_ij C[|i><j|] (x) |i><j|.
CMat choi_matrix(const ParamChannel& ch, const RVec& u, int dim);

struct CptpDefects {
  double trace_defect;    // max_ij |Tr C[|i><j|] - delta_ij|
  double choi_min_eig;    // smallest eigenvalue of the Choi matrix
};

CptpDefects cptp_defects(const ParamChannel& ch, const RVec& u, int dim);

// --- Gaussian encodings -----------------------------------------------------

struct GaussianChannelDescriptor {
  std::string kind;
  bool reinitializes = false;  // output independent of the prior state
};

class GaussianParamChannel {
 public:
  using Apply = std::function<GaussianState(const RVec& u, const GaussianState&)>;

  GaussianParamChannel(int input_dim, Apply apply, GaussianChannelDescriptor descriptor,
                       std::vector<Interval> input_domain = {});

  GaussianState apply(const RVec& u, const GaussianState& g) const;
  int input_dim() const { return input_dim_; }
  const GaussianChannelDescriptor& descriptor() const { return descriptor_; }
  const std::vector<Interval>& input_domain() const { return domain_; }

 private:
  int input_dim_;
  Apply apply_;
  GaussianChannelDescriptor descriptor_;
  std::vector<Interval> domain_;
};

using BetaMap = std::function<Complex(const RVec&)>;

// Displacement D(beta(u)): means += sqrt(2) (Re beta, Im beta), covariance kept.
GaussianParamChannel displacement_encode(BetaMap beta);

// Reset to vacuum then displace: the coherent state |beta(u)>.
GaussianParamChannel coherent_reinit(BetaMap beta);

// Reset to the squeezed vacuum with magnitude r(u) and fixed phase phi.
GaussianParamChannel squeezed_reinit(std::function<double(const RVec&)> r_map, double phi);

}  // namespace qrc
