#pragma once

// Decomposition of coupling operators into harmonic jump operators S(w,q)
// over the shifted quasifrequency lattice {w + q*Omega}:
//   U†_{t,t0} S U_{t,t0} = sum_{w,q} S(w,q) e^{i(w + q Omega)(t - t0)},
//   [Hbar, S(w,q)] = w S(w,q),  S(w,q)† = S(-w,-q).

#include "flq/floquet.hpp"
#include "flq/hamiltonian.hpp"
#include "flq/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace flq {

struct Coupling {
  std::string label;
  Matrix op;  // Hermitian within 1e-12 (relative)
};

class CouplingSet {
 public:
  void add(std::string label, Matrix op);
  const std::vector<Coupling>& items() const { return items_; }
  std::vector<std::string> labels() const;
  Eigen::Index dim() const;

 private:
  std::vector<Coupling> items_;
};

struct JumpHarmonic {
  std::string alpha;
  double omega = 0.0;  // quasifrequency class value
  int q = 0;
  Matrix op;
  double shifted = 0.0;       // omega + q*Omega
  bool identity_like = false; // proportional to identity: no dissipation
  double class_spread = 0.0;  // diameter of the frequency cluster
};

struct HarmonicSet {
  std::vector<JumpHarmonic> harmonics;
  std::vector<double> frequencies;  // class representatives, ascending
  int q_max = 0;
  double omega_drive = 0.0;
  double t0 = 0.0;
  std::map<std::string, double> tail_mass;  // discarded |q| > q_max per label
};

struct HarmonicOptions {
  int q_max = 8;
  int n_samples = 64;          // >= 4*q_max + 4, power of two
  double freq_tol_rel = 1e-7;  // * Omega
  double eigen_cluster_tol_rel = 1e-8;  // * Omega, quasienergy degeneracy
  double drop_tol = 1e-12;     // * ||S||_F
  double identity_tol = 1e-12; // * ||S(w,q)||_F
  double comm_tol_rel = 1e-8;  // * ||S(w,q)||_F, construction check
  // auto-increase q_max (doubling n_samples) until the tail is below
  // tail_target * ||S||_F or q_max reaches the cap
  double tail_target = 1e-8;
  int q_max_cap = 64;
};

// Interaction-picture coupling U†_{t,t0} S U_{t,t0}.
Matrix interaction_coupling(const FloquetDecomposition& f,
                            const PeriodicHamiltonian& h, const Matrix& s,
                            double t, const PropagatorConfig& cfg);

struct FourierModes {
  std::map<int, Matrix> modes;  // q -> S(q)
  double tail = 0.0;            // Frobenius mass beyond |q| <= q_max
};

// S(q) of P^{-1} S P by uniform DFT over one period; n_samples must be a
// power of two with n_samples >= 4*q_max + 4.
FourierModes fourier_modes(const FloquetDecomposition& f,
                           const PeriodicHamiltonian& h, const Matrix& s,
                           int q_max, int n_samples,
                           const PropagatorConfig& cfg);

// Split Fourier modes into quasifrequency classes with spectral projectors.
// freq_tol is absolute. A single-linkage chain wider than 10*freq_tol is a
// degeneracy ambiguity and raises a ValidationError naming the members.
std::vector<JumpHarmonic> frequency_split(const FloquetDecomposition& f,
                                          const std::map<int, Matrix>& modes,
                                          double freq_tol,
                                          const HarmonicOptions& opt = {},
                                          const std::string& label = "");

// Full pipeline over a coupling set with certified q_max (tail-driven
// auto-increase).
HarmonicSet decompose_couplings(const FloquetDecomposition& f,
                                const PeriodicHamiltonian& h,
                                const CouplingSet& couplings,
                                const PropagatorConfig& cfg,
                                const HarmonicOptions& opt = {});

}  // namespace flq
