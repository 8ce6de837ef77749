#pragma once

// Unitary propagator U_{t,t0} and the monodromy operator by exponential
// time stepping. Every step is the exponential of a skew-Hermitian matrix, so
// the iterates stay on the unitary group up to rounding.

#include "flq/hamiltonian.hpp"
#include "flq/types.hpp"

#include <vector>

namespace flq {

enum class StepMethod {
  kMidpointExponential,   // 2nd-order Magnus: exp(-i h H(t + h/2))
  kCommutatorFreeMagnus4  // 4th-order two-exponential scheme (default)
};

struct PropagatorConfig {
  StepMethod method = StepMethod::kCommutatorFreeMagnus4;
  int steps_per_period = 4096;   // >= 16
  bool reproject = true;         // polar reprojection against drift
  int reproject_interval = 256;  // steps between drift checks
  double reproject_threshold = 1e-12;

  void validate() const {
    if (steps_per_period < 16)
      throw ValidationError("PropagatorConfig: steps_per_period must be >= 16");
  }
};

// U_{t,t0}; requires t >= t0 (backward propagators are adjoints of forward
// ones).
Matrix propagate(const PeriodicHamiltonian& h, double t0, double t,
                 const PropagatorConfig& cfg);

// U at each time of a sorted grid (times[0] >= t0), reusing intermediate
// steps. Each returned matrix is U_{times[i], t0}.
std::vector<Matrix> propagate_grid(const PeriodicHamiltonian& h, double t0,
                                   const std::vector<double>& times,
                                   const PropagatorConfig& cfg);

// Monodromy operator U_{t0+T, t0}.
Matrix monodromy(const PeriodicHamiltonian& h, double t0,
                 const PropagatorConfig& cfg);

}  // namespace flq
