#pragma once

// Interaction-picture generator L~ = -i[deltaH, .] + D' with the secular
// dissipator
//   D'(rho) = lambda^2 sum_{w,q} sum_{ab} gamma_{ba}(w+q*Omega)
//             ( S_a(w,q) rho S_b(w,q)† - 1/2 {S_b(w,q)† S_a(w,q), rho} ),
// its dual, the per-(w,q) diagonalized rate table, and the Schroedinger-
// picture Lindbladian L_t = -i[H_phys(t), .] + U_{t,t0} o D' o U_{t,t0}^{-1}.

#include "flq/bath.hpp"
#include "flq/floquet.hpp"
#include "flq/harmonics.hpp"
#include "flq/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flq {

struct RateEntry {
  double omega = 0.0;
  int q = 0;
  double shifted = 0.0;
  std::vector<std::string> labels;  // couplings active at this (w,q)
  Matrix coefficient;               // [gamma_{alpha beta}(shifted)], PSD
  Matrix diagonalizer;              // unitary W with coeff = W diag(r) W†
  RealVector rates;                 // diagonal rates, lambda^2-scaled, >= 0
};

struct GeneratorBundle {
  Eigen::Index dim = 0;
  double coupling = 1.0;  // lambda; rates carry lambda^2
  Matrix l_tilde;         // full generator matrix (d^2 x d^2)
  Matrix dissipator;      // D' part alone
  Matrix l_tilde_dual;    // dual generator matrix
  Matrix delta_h;         // Lamb-shift Hamiltonian (zero when disabled)
  std::vector<RateEntry> rate_table;
};

// Assembles the bundle. Identity-proportional harmonics are skipped. The
// per-(w,q) coefficient matrix must be PSD: eigenvalues in [-1e-12, 0) are
// clipped to zero, anything lower rejects the model naming the frequency.
GeneratorBundle build_generator(const HarmonicSet& harmonics,
                                const BathSet& baths, double lambda,
                                const std::optional<LambShiftTable>& lamb = {});

// Dual generator L~†(A) (unital: L~†(I) = 0); also stored in the bundle.
Matrix dual_generator(const GeneratorBundle& bundle);

// Time-dependent Lindbladian at time t. The Hamiltonian part uses
// H_phys(t) = H(t) + deltaH; the dissipative part is U o D' o U^{-1}.
Matrix schrodinger_lindbladian(const GeneratorBundle& bundle,
                               const FloquetDecomposition& f,
                               const PeriodicHamiltonian& h, double t,
                               const PropagatorConfig& cfg);

// Same, reusing a precomputed U_{t,t0}.
Matrix schrodinger_lindbladian_from_u(const GeneratorBundle& bundle,
                                      const PeriodicHamiltonian& h,
                                      const Matrix& u, double t);

}  // namespace flq
