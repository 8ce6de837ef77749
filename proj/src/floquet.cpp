#include "flq/floquet.hpp"

#include "flq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flq {

Matrix FloquetDecomposition::phase(double tau, int sign) const {
  Vector d(quasienergies.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    d[k] = std::exp(Complex(0.0, sign * tau * quasienergies[k]));
  return basis * d.asDiagonal() * basis.adjoint();
}

FloquetDecomposition decompose(const PeriodicHamiltonian& h, double t0,
                               const PropagatorConfig& cfg) {
  FloquetDecomposition f;
  f.t0 = t0;
  f.period = h.period();
  f.omega_drive = h.omega();
  f.monodromy = monodromy(h, t0, cfg);

  const UnitaryEigs eig = unitary_eigs(f.monodromy, 1e-10);
  const Eigen::Index n = f.monodromy.rows();
  const double T = f.period;

  // monodromy eigenvalue e^{-i eps T}: eps = -phase/T, folded to (-pi/T, pi/T]
  RealVector eps(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double e = -eig.phases[k] / T;
    if (e <= -kPi / T + 1e-12 / T) e += f.omega_drive;
    eps[k] = e;
  }
  // re-sort ascending in quasienergy (phase sort was ascending in phase)
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return eps[a] < eps[b]; });
  f.quasienergies.resize(n);
  f.basis.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    f.quasienergies[k] = eps[order[static_cast<size_t>(k)]];
    f.basis.col(k) = eig.basis.col(order[static_cast<size_t>(k)]);
  }
  f.hbar = f.basis * f.quasienergies.cast<Complex>().asDiagonal() *
           f.basis.adjoint();
  f.hbar = 0.5 * (f.hbar + f.hbar.adjoint().eval());

  // unfolded representative nearest to <phi_k| H_0 |phi_k>
  const auto it = h.modes().find(0);
  f.quasienergies_unfolded = f.quasienergies;
  if (it != h.modes().end()) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double target =
          std::real(Complex(f.basis.col(k).adjoint() * it->second *
                            f.basis.col(k)));
      const double m =
          std::round((target - f.quasienergies[k]) / f.omega_drive);
      f.quasienergies_unfolded[k] = f.quasienergies[k] + m * f.omega_drive;
    }
  }
  return f;
}

Matrix periodic_part(const FloquetDecomposition& f,
                     const PeriodicHamiltonian& h, double t,
                     const PropagatorConfig& cfg) {
  const Matrix u = propagate(h, f.t0, t, cfg);
  return periodic_part_from_u(f, u, t);
}

Matrix periodic_part_from_u(const FloquetDecomposition& f, const Matrix& u,
                            double t) {
  return u * f.phase(t - f.t0, +1);
}

FloquetDecomposition shift_branch(const FloquetDecomposition& f,
                                  Eigen::Index k, int steps) {
  if (k < 0 || k >= f.quasienergies.size())
    throw ValidationError("shift_branch: index out of range");
  FloquetDecomposition g = f;
  g.quasienergies[k] += steps * f.omega_drive;
  const Matrix proj = f.basis.col(k) * f.basis.col(k).adjoint();
  g.hbar = f.hbar + Complex(steps * f.omega_drive, 0.0) * proj;
  // keep the ascending ordering contract
  const Eigen::Index n = g.quasienergies.size();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return g.quasienergies[a] < g.quasienergies[b];
  });
  FloquetDecomposition out = g;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.quasienergies[i] = g.quasienergies[order[static_cast<size_t>(i)]];
    out.basis.col(i) = g.basis.col(order[static_cast<size_t>(i)]);
  }
  out.quasienergies_unfolded = out.quasienergies;
  return out;
}

SpectralClusters cluster_quasienergies(const FloquetDecomposition& f,
                                       double tol) {
  SpectralClusters c;
  const Eigen::Index n = f.quasienergies.size();
  Eigen::Index k = 0;
  while (k < n) {
    std::vector<Eigen::Index> group{k};
    Eigen::Index j = k + 1;
    while (j < n && f.quasienergies[j] - f.quasienergies[j - 1] <= tol) {
      group.push_back(j);
      ++j;
    }
    Matrix p = Matrix::Zero(n, n);
    double mean = 0.0;
    for (auto idx : group) {
      p += f.basis.col(idx) * f.basis.col(idx).adjoint();
      mean += f.quasienergies[idx];
    }
    c.values.push_back(mean / static_cast<double>(group.size()));
    c.projectors.push_back(std::move(p));
    c.members.push_back(std::move(group));
    k = j;
  }
  return c;
}

}  // namespace flq
