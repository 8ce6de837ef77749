#pragma once

// Built-in model constructors: driven two-level system, laser-driven harmonic
// oscillator on a truncated Fock space, two-bath two-level system.

#include "flq/bath.hpp"
#include "flq/hamiltonian.hpp"
#include "flq/harmonics.hpp"
#include "flq/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace flq {

// Pauli matrices and truncated ladder operators.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix pauli_plus();   // |1><2|
Matrix pauli_minus();  // |2><1|
Matrix annihilation(Eigen::Index dim);
Matrix number_operator(Eigen::Index dim);
// exp(alpha a† - conj(alpha) a) on the truncated space
Matrix displacement(Eigen::Index dim, Complex alpha);

struct ModelSpec {
  std::string name;
  std::shared_ptr<PeriodicHamiltonian> hamiltonian;
  CouplingSet couplings;
  BathSet baths;
  double coupling_constant = 1.0;  // lambda
  std::map<std::string, double> metadata;
  std::string warning;  // degeneracy or similar soft issues

  Eigen::Index dim() const { return hamiltonian->dim(); }
};

// H(t) = 1/2 w0 sz + drive_lambda * Omega * sz * cos(Omega t), coupling sx,
// thermal ohmic-cubed bath (A, beta_e). drive_lambda is the steering
// parameter of the modulation; the bath coupling constant is 1 (rates are the
// bare gammas).
ModelSpec tls_cosine(double omega0, double omega_drive, double drive_lambda,
                     double amplitude, double beta_e);

// H(t) = w a†a + g (e^{i Omega t} a + e^{-i Omega t} a†) on dim = n_trunc,
// coupling a + a†, thermal bath (A, beta_r). Metadata records Delta = w -
// Omega, alpha = -g/Delta, and the two edge levels excluded from quantitative
// checks. Delta = 0 is a resonant divergence (alpha undefined).
ModelSpec driven_oscillator(double omega, double omega_drive, double g,
                            Eigen::Index n_trunc, double amplitude,
                            double beta_r);

// H(t) = 1/2 w0 sz + g (e^{i Omega t} s- + e^{-i Omega t} s+); couplings
// sx -> electromagnetic bath (vacuum cutoff when beta_e is absent, thermal
// otherwise) and sz -> tabulated dephasing bath gamma_d.
ModelSpec tls_two_baths(double omega0, double omega_drive, double g,
                        double amplitude, std::optional<double> beta_e,
                        std::vector<std::pair<double, double>> gamma_d_table,
                        std::optional<double> beta_d = {});

}  // namespace flq
