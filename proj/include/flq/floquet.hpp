#pragma once

// Floquet representation U_{t,t0} = P_{t,t0} e^{-i Hbar (t-t0)}: averaged
// Hamiltonian from the principal logarithm of the monodromy, quasienergies,
// Floquet basis, periodic part.

#include "flq/hamiltonian.hpp"
#include "flq/propagator.hpp"
#include "flq/types.hpp"

#include <vector>

namespace flq {

struct FloquetDecomposition {
  double t0 = 0.0;
  double period = 0.0;
  double omega_drive = 0.0;          // 2*pi/period
  Matrix monodromy;                  // U_{t0+T, t0}
  Matrix hbar;                       // averaged Hamiltonian
  RealVector quasienergies;          // ascending, principal zone (-pi/T, pi/T]
  RealVector quasienergies_unfolded; // zone representative nearest diag(H_0)
  Matrix basis;                      // Floquet basis, column k <-> quasienergies[k]

  Eigen::Index dim() const { return monodromy.rows(); }

  // e^{+/-i Hbar tau} from the stored spectral data.
  Matrix phase(double tau, int sign) const;
};

// Monodromy -> principal log -> Hermitian eigendecomposition. Quasienergies
// are reported in (-pi/T, pi/T] with the branch edge mapped to +pi/T.
FloquetDecomposition decompose(const PeriodicHamiltonian& h, double t0,
                               const PropagatorConfig& cfg);

// P_{t,t0} = U_{t,t0} e^{+i Hbar (t-t0)}; P_{t0,t0} = I, T-periodic.
Matrix periodic_part(const FloquetDecomposition& f,
                     const PeriodicHamiltonian& h, double t,
                     const PropagatorConfig& cfg);

// Same but reusing an already-computed U_{t,t0}.
Matrix periodic_part_from_u(const FloquetDecomposition& f, const Matrix& u,
                            double t);

// Shift quasienergy k by steps*Omega (a different logarithm branch). The
// monodromy is unchanged; Hbar and the unfolded values move. Downstream
// harmonic labels relabel q compensatingly, leaving shifted quasifrequencies
// and the assembled generator invariant.
FloquetDecomposition shift_branch(const FloquetDecomposition& f,
                                  Eigen::Index k, int steps);

// Clusters of (nearly) degenerate quasienergies: indices grouped when
// adjacent values differ by at most tol. Spectral projectors are the unit
// downstream constructions work with.
struct SpectralClusters {
  std::vector<double> values;          // cluster representatives (means)
  std::vector<Matrix> projectors;      // orthogonal projectors, sum = I
  std::vector<std::vector<Eigen::Index>> members;
};
SpectralClusters cluster_quasienergies(const FloquetDecomposition& f,
                                       double tol);

}  // namespace flq
