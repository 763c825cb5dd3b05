#include "qrc/catalog.hpp"

namespace qrc {

const std::vector<CatalogEntry>& encoding_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"reinit-pure-sqrt", "discrete", "finite", "expected-nonlinear(X)",
       "re-initialize one qubit to sqrt(1-u)|0> + sqrt(u)|1>; square-root "
       "nonlinearity on the coherence nodes, linear on Z"},
      {"reinit-mixed", "discrete", "finite", "expected-linear",
       "re-initialize one qubit to the coherence-free mixture (1-u)|0><0| + u|1><1|"},
      {"reinit-general", "discrete", "finite", "depends-on-states",
       "re-initialize leading subsystems to a caller-supplied product of states; "
       "linear exactly when the states are convex sums with affine weights"},
      {"channel-mixture", "discrete", "finite", "expected-linear",
       "convex mixture of fixed channels with affine simplex weights"},
      {"parameterized-unitary", "discrete", "finite", "expected-nonlinear",
       "conjugation by exp(-i theta(u) G); sinusoidal response in the angle"},
      {"displacement", "discrete", "gaussian", "expected-linear",
       "displacement D(beta(u)): quadrature means shift by sqrt(2)(Re, Im)beta"},
      {"coherent-reinit", "discrete", "gaussian", "expected-linear",
       "vacuum reset followed by displacement, leaving the coherent state |beta(u)>"},
      {"squeezed-reinit", "discrete", "gaussian", "expected-nonlinear(VarX)",
       "squeezed-vacuum reset; covariance entries exponential in r(u)"},
      {"qubit-hamiltonian-drive", "continuous", "finite", "expected-nonlinear",
       "input in Hamiltonian couplings of a finite system; the propagator "
       "exponentiates the input"},
      {"bosonic-displacement-drive", "continuous", "gaussian",
       "expected-linear(piecewise-constant input)",
       "force term u(t) on a damped mode: quadrature means track f(u)/gamma"},
  };
  return entries;
}

}  // namespace qrc
