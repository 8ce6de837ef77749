#include "flq/generator.hpp"

#include "flq/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace flq {

namespace {

struct Key {
  double omega;
  int q;
  bool operator<(const Key& o) const {
    if (omega != o.omega) return omega < o.omega;
    return q < o.q;
  }
};

}  // namespace

GeneratorBundle build_generator(const HarmonicSet& harmonics,
                                const BathSet& baths, double lambda,
                                const std::optional<LambShiftTable>& lamb) {
  GeneratorBundle b;
  if (harmonics.harmonics.empty())
    throw ValidationError("build_generator: empty harmonic set");
  b.dim = harmonics.harmonics.front().op.rows();
  b.coupling = lambda;
  const Eigen::Index d = b.dim;
  const Eigen::Index dd = d * d;
  const Matrix id = Matrix::Identity(d, d);
  const double lam2 = lambda * lambda;

  // group non-identity harmonics by (omega, q); class values are shared
  // doubles across couplings (same decomposition), so exact keys are fine
  std::map<Key, std::vector<const JumpHarmonic*>> groups;
  for (const auto& jh : harmonics.harmonics) {
    if (jh.identity_like) continue;
    groups[Key{jh.omega, jh.q}].push_back(&jh);
  }

  // pre-validate gamma coverage so a missing tabulated point lists every
  // frequency the model needs
  std::vector<std::string> missing;
  for (const auto& [key, members] : groups) {
    std::vector<std::string> labels;
    for (const auto* jh : members) labels.push_back(jh->alpha);
    const double x = key.omega + key.q * harmonics.omega_drive;
    try {
      (void)baths.coefficient_matrix(labels, x);
    } catch (const ValidationError&) {
      missing.push_back(std::to_string(x));
    }
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "build_generator: gamma unavailable at shifted quasifrequencies:";
    for (const auto& m : missing) msg << ' ' << m;
    throw ValidationError(msg.str());
  }

  Matrix diss = Matrix::Zero(dd, dd);
  Matrix diss_dual = Matrix::Zero(dd, dd);
  Matrix delta_h = Matrix::Zero(d, d);

  for (const auto& [key, members] : groups) {
    const double x = key.omega + key.q * harmonics.omega_drive;
    std::vector<std::string> labels;
    for (const auto* jh : members) labels.push_back(jh->alpha);
    const Matrix coeff = baths.coefficient_matrix(labels, x);
    if (hermiticity_defect(coeff) > 1e-10 * std::max(1.0, coeff.norm()))
      throw ValidationError(
          "build_generator: coefficient matrix not Hermitian at x=" +
          std::to_string(x));

    Eigen::SelfAdjointEigenSolver<Matrix> es(
        Matrix(0.5 * (coeff + coeff.adjoint())));
    RealVector rates = es.eigenvalues();
    for (Eigen::Index k = 0; k < rates.size(); ++k) {
      if (rates[k] < -1e-12)
        throw ValidationError(
            "build_generator: coefficient matrix not PSD at shifted "
            "quasifrequency x=" +
            std::to_string(x) + " (eigenvalue " + std::to_string(rates[k]) +
            ")");
      if (rates[k] < 0.0) rates[k] = 0.0;
    }

    // diagonal Lindblad form: A_r = sum_alpha conj(W[alpha][r]) S_alpha
    for (Eigen::Index r = 0; r < rates.size(); ++r) {
      const double g = lam2 * rates[r];
      if (g == 0.0) continue;
      Matrix a = Matrix::Zero(d, d);
      for (size_t alpha = 0; alpha < members.size(); ++alpha)
        a += std::conj(es.eigenvectors()(static_cast<Eigen::Index>(alpha), r)) *
             members[alpha]->op;
      const Matrix ada = a.adjoint() * a;
      const Matrix anti = 0.5 * (kronecker(id, ada) +
                                 kronecker(ada.transpose(), id));
      diss += g * (sandwich(a, a.adjoint()) - anti);
      // dual: A† X A - 1/2 {A† A, X}
      diss_dual += g * (sandwich(a.adjoint(), a) - anti);
    }

    RateEntry entry;
    entry.omega = key.omega;
    entry.q = key.q;
    entry.shifted = x;
    entry.labels = labels;
    entry.coefficient = coeff;
    entry.diagonalizer = es.eigenvectors();
    entry.rates = lam2 * rates;
    b.rate_table.push_back(std::move(entry));

    if (lamb) {
      const Matrix sig = lamb->at(x, 1e-9 * std::max(1.0, std::abs(x)));
      // map member labels into the table's label ordering
      std::vector<Eigen::Index> pos(members.size());
      for (size_t a = 0; a < members.size(); ++a) {
        auto it = std::find(lamb->labels.begin(), lamb->labels.end(),
                            members[a]->alpha);
        if (it == lamb->labels.end())
          throw ValidationError(
              "build_generator: Lamb-shift table missing coupling label '" +
              members[a]->alpha + "'");
        pos[a] = it - lamb->labels.begin();
      }
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t bb = 0; bb < members.size(); ++bb)
          delta_h += lam2 * sig(pos[a], pos[bb]) *
                     (members[a]->op.adjoint() * members[bb]->op);
    }
  }

  delta_h = 0.5 * (delta_h + delta_h.adjoint().eval());
  b.delta_h = delta_h;
  b.dissipator = diss;
  b.l_tilde = diss - Complex(0, 1) * commutator_superop(delta_h);
  b.l_tilde_dual = diss_dual + Complex(0, 1) * commutator_superop(delta_h);
  return b;
}

Matrix dual_generator(const GeneratorBundle& bundle) {
  return bundle.l_tilde_dual;
}

Matrix schrodinger_lindbladian_from_u(const GeneratorBundle& bundle,
                                      const PeriodicHamiltonian& h,
                                      const Matrix& u, double t) {
  const Matrix h_phys = h.evaluate(t) + bundle.delta_h;
  return -Complex(0, 1) * commutator_superop(h_phys) +
         sandwich(u, u.adjoint()) * bundle.dissipator *
             sandwich(u.adjoint(), u);
}

Matrix schrodinger_lindbladian(const GeneratorBundle& bundle,
                               const FloquetDecomposition& f,
                               const PeriodicHamiltonian& h, double t,
                               const PropagatorConfig& cfg) {
  const Matrix u = propagate(h, f.t0, t, cfg);
  return schrodinger_lindbladian_from_u(bundle, h, u, t);
}

}  // namespace flq
