#include "flq/evolution.hpp"

#include "flq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <unordered_map>

namespace flq {

namespace {

// expm((t - t0) L) cache keyed on the exact bit pattern of the gap; uniform
// time grids then cost a single Pade exponential.
class SemigroupCache {
 public:
  explicit SemigroupCache(const Matrix& l) : l_(l) {}

  const Matrix& at(double tau) {
    uint64_t key;
    static_assert(sizeof(key) == sizeof(tau));
    std::memcpy(&key, &tau, sizeof(key));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Matrix e = (tau * l_).exp();
    return cache_.emplace(key, std::move(e)).first->second;
  }

 private:
  const Matrix& l_;
  std::unordered_map<uint64_t, Matrix> cache_;
};

}  // namespace

Matrix dynamical_map(const FloquetDecomposition& f,
                     const PeriodicHamiltonian& h,
                     const GeneratorBundle& bundle, double t, double t0,
                     const PropagatorConfig& cfg) {
  if (t < t0) throw ValidationError("dynamical_map: t must be >= t0");
  if (std::abs(t0 - f.t0) > 1e-12)
    throw ValidationError(
        "dynamical_map: t0 must match the Floquet decomposition anchor");
  const Matrix u = propagate(h, t0, t, cfg);
  return sandwich(u, u.adjoint()) * expm((t - t0) * bundle.l_tilde);
}

Trajectory evolve(const Matrix& rho0, const std::vector<double>& times,
                  const FloquetDecomposition& f, const PeriodicHamiltonian& h,
                  const GeneratorBundle& bundle, const PropagatorConfig& cfg,
                  const std::map<std::string, Matrix>& observables) {
  require_density(rho0, "evolve: rho0");
  if (times.empty()) throw ValidationError("evolve: empty time grid");
  for (size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && times[i] < times[i - 1])
      throw ValidationError("evolve: times must be sorted");
  }
  if (times.front() < f.t0 - 1e-12)
    throw ValidationError("evolve: times must start at or after t0");

  Trajectory traj;
  traj.times = times;
  const std::vector<Matrix> us = propagate_grid(h, f.t0, times, cfg);
  SemigroupCache semigroup(bundle.l_tilde);

  const Vector v0 = vectorize(rho0);
  for (size_t i = 0; i < times.size(); ++i) {
    const double tau = times[i] - f.t0;
    Matrix interior = devectorize(semigroup.at(tau) * v0, rho0.rows());
    Matrix rho = us[i] * interior * us[i].adjoint();
    const DensityCheck c = check_density(rho);
    if (!c.ok(1e-10, 1e-10, -1e-8)) {
      std::ostringstream msg;
      msg << "evolve: state validation failed at t=" << times[i]
          << " (hermiticity " << c.hermiticity << ", trace defect "
          << c.trace_defect << ", min eigenvalue " << c.min_eigenvalue << ")";
      throw NumericError(msg.str());
    }
    traj.states.push_back(std::move(rho));
  }

  if (!observables.empty()) {
    for (const auto& [name, op] : observables) {
      std::vector<double> vals;
      vals.reserve(times.size());
      for (const auto& rho : traj.states)
        vals.push_back(std::real((op * rho).trace()));
      traj.observables[name] = std::move(vals);
    }
    // dual-route cross-check tr(A rho_t) = tr(Lambda†(A) rho_0) at the ends
    double worst = 0.0;
    for (size_t idx : {size_t{0}, times.size() - 1}) {
      const double tau = times[idx] - f.t0;
      const Matrix dual_semigroup = expm(tau * bundle.l_tilde_dual);
      for (const auto& [name, op] : observables) {
        const Matrix rotated = us[idx].adjoint() * op * us[idx];
        const Matrix heis =
            devectorize(dual_semigroup * vectorize(rotated), rho0.rows());
        const double via_dual = std::real((heis * rho0).trace());
        worst = std::max(
            worst, std::abs(via_dual - traj.observables[name][idx]));
      }
    }
    traj.dual_route_residual = worst;
  }
  return traj;
}

StationaryState stationary_state(const GeneratorBundle& bundle) {
  const Eigen::Index d = bundle.dim;
  Eigen::BDCSVD<Matrix> svd(bundle.l_tilde,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(sv.maxCoeff(), 1e-300);
  Eigen::Index kdim = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] < cutoff) ++kdim;
  if (kdim == 0)
    throw NumericError("stationary_state: kernel of L~ is empty at threshold");

  StationaryState out;
  out.kernel_dimension = kdim;
  out.nonunique = kdim > 1;

  Matrix x;
  if (kdim == 1) {
    x = devectorize(svd.matrixV().col(sv.size() - 1), d);
  } else {
    // orthogonal projection of the maximally mixed state onto the kernel
    const Matrix kernel = svd.matrixV().rightCols(kdim);
    const Vector target = vectorize(Matrix::Identity(d, d) / double(d));
    x = devectorize(kernel * (kernel.adjoint() * target), d);
  }
  x = 0.5 * (x + x.adjoint().eval());
  const Complex tr = x.trace();
  if (std::abs(tr) < 1e-12 * std::max(1.0, x.norm()))
    throw NumericError(
        "stationary_state: kernel contains no unit-trace element");
  x /= tr;

  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw NumericError(
        "stationary_state: kernel element is not positive (min eigenvalue " +
        std::to_string(es.eigenvalues().minCoeff()) + ")");

  // residual in trace norm
  const Matrix resid = apply_superop(bundle.l_tilde, x);
  Eigen::SelfAdjointEigenSolver<Matrix> er(
      Matrix(0.5 * (resid + resid.adjoint())), Eigen::EigenvaluesOnly);
  out.residual_trace_norm = er.eigenvalues().cwiseAbs().sum();
  out.sigma_tilde = std::move(x);
  return out;
}

Matrix limit_cycle(const FloquetDecomposition& f, const PeriodicHamiltonian& h,
                   const Matrix& sigma_tilde, double t,
                   const PropagatorConfig& cfg) {
  const Matrix u = propagate(h, f.t0, t, cfg);
  return u * sigma_tilde * u.adjoint();
}

double composition_residual(const FloquetDecomposition& f,
                            const PeriodicHamiltonian& h,
                            const GeneratorBundle& bundle, double t, double s,
                            double t0, const PropagatorConfig& cfg) {
  if (!(t0 <= s && s <= t))
    throw ValidationError("composition_residual: need t0 <= s <= t");
  const Matrix full = dynamical_map(f, h, bundle, t, t0, cfg);
  const Matrix first = dynamical_map(f, h, bundle, s, t0, cfg);
  // Lambda_{t,s} built from the same interaction-picture generator anchored
  // at s: U_{t,s} o e^{(t-s) L~}
  const Matrix u_ts = propagate(h, s, t, cfg);
  const Matrix second =
      sandwich(u_ts, u_ts.adjoint()) * expm((t - s) * bundle.l_tilde);
  return (full - second * first).norm();
}

}  // namespace flq
