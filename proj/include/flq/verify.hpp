#pragma once

// One-call property suite: every testable proposition of the pipeline
// (Floquet representation, harmonic structure, generator structure, dual
// maps, CPTP of the flow, limit-cycle commutation, KMS, branch invariance)
// as named residual checks with pinned tolerances.

#include "flq/bath.hpp"
#include "flq/evolution.hpp"
#include "flq/floquet.hpp"
#include "flq/generator.hpp"
#include "flq/harmonics.hpp"
#include "flq/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace flq {

// Deterministic probe generator: complex Gaussian matrices, Hermitized
// observables, Wishart-normalized states. Box-Muller on mt19937_64 so the
// stream is pinned by the seed alone.
class ProbeRng {
 public:
  explicit ProbeRng(uint64_t seed) : eng_(seed) {}
  double normal();
  double uniform();  // [0, 1)
  Matrix gaussian(Eigen::Index d);
  Matrix hermitian(Eigen::Index d);
  Matrix density(Eigen::Index d);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool pass = true;  // conjunction of individual passes
  uint64_t seed = 0;
  // reported diagnostics, never asserted
  double composition_residual = 0.0;
  Eigen::Index kernel_dimension = 0;

  const Check* find(const std::string& name) const;
  void add(std::string name, double residual, double tolerance);
};

struct VerifyOptions {
  uint64_t seed = 12345;
  double lambda = 1.0;                 // for the branch-invariance rebuild
  const BathSet* baths = nullptr;      // enables KMS + branch invariance
  HarmonicOptions harmonic_options{};  // must match how `harmonics` was built
  bool branch_invariance = true;
};

VerificationReport verify_all(const PeriodicHamiltonian& h,
                              const FloquetDecomposition& f,
                              const HarmonicSet& harmonics,
                              const GeneratorBundle& bundle,
                              const PropagatorConfig& cfg,
                              const VerifyOptions& opt = {});

// Trace-dual action of a superoperator matrix: tr(A S(rho)) =
// tr(dual_apply(S, A) rho) for every A, rho.
Matrix dual_apply(const Matrix& superop, const Matrix& a);

}  // namespace flq
