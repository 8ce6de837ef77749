#include "flq/propagator.hpp"

#include "flq/linalg.hpp"

#include <cmath>

namespace flq {

namespace {

// Gauss nodes and weights of the 4th-order commutator-free scheme.
constexpr double kNode1 = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
constexpr double kNode2 = 0.5 + 0.28867513459481288225;
constexpr double kWeight1 = (3.0 - 2.0 * 1.7320508075688772935) / 12.0;
constexpr double kWeight2 = (3.0 + 2.0 * 1.7320508075688772935) / 12.0;

struct Stepper {
  const PeriodicHamiltonian& h;
  const PropagatorConfig& cfg;
  Matrix u;
  long steps_done = 0;

  explicit Stepper(const PeriodicHamiltonian& ham, const PropagatorConfig& c)
      : h(ham), cfg(c), u(Matrix::Identity(ham.dim(), ham.dim())) {}

  void step(double t, double dt) {
    switch (cfg.method) {
      case StepMethod::kMidpointExponential:
        u = unitary_exp(h.evaluate(t + 0.5 * dt), dt) * u;
        break;
      case StepMethod::kCommutatorFreeMagnus4: {
        const Matrix a1 = h.evaluate(t + kNode1 * dt);
        const Matrix a2 = h.evaluate(t + kNode2 * dt);
        u = unitary_exp(kWeight2 * a1 + kWeight1 * a2, dt) *
            unitary_exp(kWeight1 * a1 + kWeight2 * a2, dt) * u;
        break;
      }
    }
    ++steps_done;
    if (cfg.reproject && steps_done % cfg.reproject_interval == 0 &&
        unitarity_defect(u) > cfg.reproject_threshold) {
      u = polar_unitary(u);
    }
  }

  // Advance from t_start to t_end using steps no longer than T/steps_per_period.
  void advance(double t_start, double t_end) {
    const double span = t_end - t_start;
    if (span <= 0.0) return;
    const double h_nominal = h.period() / cfg.steps_per_period;
    const long n = std::max<long>(1, static_cast<long>(std::ceil(span / h_nominal - 1e-12)));
    const double dt = span / static_cast<double>(n);
    for (long k = 0; k < n; ++k) step(t_start + k * dt, dt);
  }
};

}  // namespace

Matrix propagate(const PeriodicHamiltonian& h, double t0, double t,
                 const PropagatorConfig& cfg) {
  cfg.validate();
  if (t < t0) throw ValidationError("propagate: t must be >= t0");
  Stepper s(h, cfg);
  s.advance(t0, t);
  return s.u;
}

std::vector<Matrix> propagate_grid(const PeriodicHamiltonian& h, double t0,
                                   const std::vector<double>& times,
                                   const PropagatorConfig& cfg) {
  cfg.validate();
  std::vector<Matrix> out;
  out.reserve(times.size());
  Stepper s(h, cfg);
  double current = t0;
  for (double t : times) {
    if (t < current - 1e-15)
      throw ValidationError("propagate_grid: times must be sorted and >= t0");
    s.advance(current, t);
    current = t;
    out.push_back(s.u);
  }
  return out;
}

Matrix monodromy(const PeriodicHamiltonian& h, double t0,
                 const PropagatorConfig& cfg) {
  return propagate(h, t0, t0 + h.period(), cfg);
}

}  // namespace flq
