#include "flq/models.hpp"

#include "flq/linalg.hpp"

#include <cmath>

namespace flq {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix pauli_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Matrix pauli_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

Matrix annihilation(Eigen::Index dim) {
  if (dim < 2) throw ValidationError("annihilation: dim must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n)
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix number_operator(Eigen::Index dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix displacement(Eigen::Index dim, Complex alpha) {
  const Matrix a = annihilation(dim);
  return expm(Matrix(alpha * a.adjoint() - std::conj(alpha) * a));
}

ModelSpec tls_cosine(double omega0, double omega_drive, double drive_lambda,
                     double amplitude, double beta_e) {
  if (!(omega0 > 0.0) || !(omega_drive > 0.0) || !(amplitude > 0.0))
    throw ValidationError("tls_cosine: omega0, Omega, A must be positive");
  if (drive_lambda < 0.0)
    throw ValidationError("tls_cosine: lambda must be >= 0");

  ModelSpec m;
  m.name = "tls_cosine";
  const double period = 2.0 * kPi / omega_drive;
  std::map<int, Matrix> modes;
  modes[0] = 0.5 * omega0 * pauli_z();
  if (drive_lambda > 0.0) {
    modes[1] = 0.5 * drive_lambda * omega_drive * pauli_z();
    modes[-1] = modes[1];
  }
  m.hamiltonian =
      std::make_shared<PeriodicHamiltonian>(2, period, std::move(modes));
  m.couplings.add("x", pauli_x());
  m.baths.bind("x", SpectralDensity::ohmic_cubed_thermal(amplitude, beta_e));
  m.coupling_constant = 1.0;
  m.metadata["omega0"] = omega0;
  m.metadata["Omega"] = omega_drive;
  m.metadata["lambda"] = drive_lambda;
  m.metadata["A"] = amplitude;
  m.metadata["beta_e"] = beta_e;

  // the shifted quasifrequencies {±w0, ±(w0±Omega)} must stay distinct
  const double tol = 1e-9 * omega_drive;
  if (std::abs(omega0 - omega_drive) < tol ||
      std::abs(2.0 * omega0 - omega_drive) < tol)
    m.warning = "tls_cosine: shifted quasifrequencies degenerate for these "
                "parameters";
  return m;
}

ModelSpec driven_oscillator(double omega, double omega_drive, double g,
                            Eigen::Index n_trunc, double amplitude,
                            double beta_r) {
  if (!(omega > 0.0) || !(omega_drive > 0.0) || !(amplitude > 0.0))
    throw ValidationError("driven_oscillator: omega, Omega, A must be positive");
  if (n_trunc < 8)
    throw ValidationError("driven_oscillator: n_trunc must be >= 8");
  const double delta = omega - omega_drive;
  if (delta == 0.0)
    throw ValidationError(
        "driven_oscillator: resonant drive (Delta = 0) has no Floquet "
        "representation of this form (alpha = -g/Delta undefined)");
  const double alpha = -g / delta;
  if (std::abs(alpha) > static_cast<double>(n_trunc) / 8.0)
    throw ValidationError(
        "driven_oscillator: |alpha| = |g/Delta| too large for the truncation "
        "(needs |alpha| <= n_trunc/8)");

  ModelSpec m;
  m.name = "driven_oscillator";
  const double period = 2.0 * kPi / omega_drive;
  const Matrix a = annihilation(n_trunc);
  std::map<int, Matrix> modes;
  modes[0] = omega * number_operator(n_trunc);
  if (g != 0.0) {
    modes[1] = g * a;
    modes[-1] = g * a.adjoint();
  }
  m.hamiltonian =
      std::make_shared<PeriodicHamiltonian>(n_trunc, period, std::move(modes));
  m.couplings.add("position", Matrix(a + a.adjoint()));
  m.baths.bind("position",
               SpectralDensity::ohmic_cubed_thermal(amplitude, beta_r));
  m.coupling_constant = 1.0;
  m.metadata["omega"] = omega;
  m.metadata["Omega"] = omega_drive;
  m.metadata["g"] = g;
  m.metadata["Delta"] = delta;
  m.metadata["alpha"] = alpha;
  m.metadata["n_trunc"] = static_cast<double>(n_trunc);
  m.metadata["edge_level_lo"] = static_cast<double>(n_trunc - 2);
  m.metadata["edge_level_hi"] = static_cast<double>(n_trunc - 1);
  m.metadata["A"] = amplitude;
  m.metadata["beta_R"] = beta_r;
  return m;
}

ModelSpec tls_two_baths(double omega0, double omega_drive, double g,
                        double amplitude, std::optional<double> beta_e,
                        std::vector<std::pair<double, double>> gamma_d_table,
                        std::optional<double> beta_d) {
  if (!(omega0 > 0.0) || !(omega_drive > 0.0) || !(amplitude > 0.0))
    throw ValidationError("tls_two_baths: omega0, Omega, A must be positive");

  ModelSpec m;
  m.name = "tls_two_baths";
  const double period = 2.0 * kPi / omega_drive;
  std::map<int, Matrix> modes;
  modes[0] = 0.5 * omega0 * pauli_z();
  if (g != 0.0) {
    modes[1] = g * pauli_minus();
    modes[-1] = g * pauli_plus();
  }
  m.hamiltonian =
      std::make_shared<PeriodicHamiltonian>(2, period, std::move(modes));
  m.couplings.add("em", pauli_x());
  m.couplings.add("dephasing", pauli_z());
  if (beta_e)
    m.baths.bind("em", SpectralDensity::ohmic_cubed_thermal(amplitude, *beta_e));
  else
    m.baths.bind("em", SpectralDensity::vacuum_cutoff(amplitude));
  m.baths.bind("dephasing",
               SpectralDensity::tabulated(std::move(gamma_d_table)));
  m.coupling_constant = 1.0;
  m.metadata["omega0"] = omega0;
  m.metadata["Omega"] = omega_drive;
  m.metadata["g"] = g;
  m.metadata["A"] = amplitude;
  if (beta_e) m.metadata["beta_e"] = *beta_e;
  if (beta_d) m.metadata["beta_d"] = *beta_d;
  return m;
}

}  // namespace flq
