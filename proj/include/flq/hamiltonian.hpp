#pragma once

// T-periodic Hermitian Hamiltonians stored as finite Fourier-mode families:
// H(t) = sum_q H_q e^{i q Omega (t - t0_ref)} with H_{-q} = H_q^dagger.

#include "flq/types.hpp"

#include <map>

namespace flq {

class PeriodicHamiltonian {
 public:
  // Modes must come in adjoint pairs: for every stored q, mode -q must be
  // stored and equal H_q^dagger within 1e-12 (relative). q = 0 must be
  // Hermitian. Validation warns (via warning()) above |q| = 32.
  PeriodicHamiltonian(Eigen::Index dim, double period,
                      std::map<int, Matrix> modes, double t0_ref = 0.0);

  Eigen::Index dim() const { return dim_; }
  double period() const { return period_; }
  double omega() const { return omega_; }  // 2*pi/period
  double t0_ref() const { return t0_ref_; }
  const std::map<int, Matrix>& modes() const { return modes_; }
  int max_mode() const { return max_q_; }
  const std::string& warning() const { return warning_; }

  // sum_q H_q e^{i q Omega (t - t0_ref)}; Hermitian by the mode invariant.
  Matrix evaluate(double t) const;

 private:
  Eigen::Index dim_;
  double period_;
  double omega_;
  double t0_ref_;
  std::map<int, Matrix> modes_;
  int max_q_ = 0;
  std::string warning_;
};

}  // namespace flq
