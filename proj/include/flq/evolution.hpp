#pragma once

// Dynamical maps Lambda_{t,t0} = U_{t,t0} o e^{(t-t0) L~}, state trajectories,
// stationary states of L~, and periodic limit cycles.

#include "flq/generator.hpp"
#include "flq/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace flq {

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::map<std::string, std::vector<double>> observables;
  // |tr(A rho_t) - tr(Lambda†(A) rho_0)| on the first and last points
  double dual_route_residual = 0.0;
};

struct StationaryState {
  Matrix sigma_tilde;
  Eigen::Index kernel_dimension = 0;
  double residual_trace_norm = 0.0;
  bool nonunique = false;
};

// Superoperator of the dynamical map; t >= t0 and t0 must equal the
// decomposition's anchor.
Matrix dynamical_map(const FloquetDecomposition& f,
                     const PeriodicHamiltonian& h,
                     const GeneratorBundle& bundle, double t, double t0,
                     const PropagatorConfig& cfg);

// Trajectory rho_t = Lambda_{t,t0}(rho_0) over sorted times (times[0] >= t0).
// Each state is re-validated against the density-matrix invariants (CP drift
// beyond tolerance raises NumericError). Observables are evaluated as
// tr(A rho_t) and cross-checked against the dual route on the first and last
// points.
Trajectory evolve(const Matrix& rho0, const std::vector<double>& times,
                  const FloquetDecomposition& f, const PeriodicHamiltonian& h,
                  const GeneratorBundle& bundle, const PropagatorConfig& cfg,
                  const std::map<std::string, Matrix>& observables = {});

// Kernel of L~ by SVD (relative threshold 1e-10). The returned state is the
// Hermitized, trace-normalized kernel element; for multidimensional kernels
// the element closest in Frobenius norm to the maximally mixed state, with
// nonunique flagged.
StationaryState stationary_state(const GeneratorBundle& bundle);

// sigma_t = U_{t,t0} sigma U_{t,t0}†.
Matrix limit_cycle(const FloquetDecomposition& f, const PeriodicHamiltonian& h,
                   const Matrix& sigma_tilde, double t,
                   const PropagatorConfig& cfg);

// Reported diagnostic (never asserted): || Lambda_{t,t0} -
// Lambda_{t,s} o Lambda_{s,t0} ||_F.
double composition_residual(const FloquetDecomposition& f,
                            const PeriodicHamiltonian& h,
                            const GeneratorBundle& bundle, double t, double s,
                            double t0, const PropagatorConfig& cfg);

}  // namespace flq
