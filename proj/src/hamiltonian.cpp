#include "flq/hamiltonian.hpp"

#include <cmath>

namespace flq {

PeriodicHamiltonian::PeriodicHamiltonian(Eigen::Index dim, double period,
                                         std::map<int, Matrix> modes,
                                         double t0_ref)
    : dim_(dim), period_(period), t0_ref_(t0_ref), modes_(std::move(modes)) {
  if (dim_ <= 0) throw ValidationError("PeriodicHamiltonian: dim must be positive");
  if (!(period_ > 0.0))
    throw ValidationError("PeriodicHamiltonian: period must be positive");
  omega_ = 2.0 * kPi / period_;
  if (std::abs(omega_ * period_ - 2.0 * kPi) > 1e-14)
    throw NumericError("PeriodicHamiltonian: Omega*T deviates from 2*pi");
  if (modes_.empty())
    throw ValidationError("PeriodicHamiltonian: at least one mode required");

  double scale = 0.0;
  for (const auto& [q, m] : modes_) {
    if (m.rows() != dim_ || m.cols() != dim_)
      throw ValidationError("PeriodicHamiltonian: mode dimension mismatch");
    if (!is_finite(m))
      throw ValidationError("PeriodicHamiltonian: mode has NaN/Inf entries");
    scale = std::max(scale, m.norm());
    max_q_ = std::max(max_q_, std::abs(q));
  }
  scale = std::max(scale, 1.0);
  for (const auto& [q, m] : modes_) {
    auto it = modes_.find(-q);
    if (it == modes_.end())
      throw ValidationError("PeriodicHamiltonian: mode -q missing for q=" +
                            std::to_string(q));
    if ((it->second - m.adjoint()).norm() > 1e-12 * scale)
      throw ValidationError(
          "PeriodicHamiltonian: H_{-q} != H_q^dagger for q=" +
          std::to_string(q));
  }
  if (max_q_ > 32)
    warning_ = "PeriodicHamiltonian: |q| exceeds 32; expect slow Fourier handling";
}

Matrix PeriodicHamiltonian::evaluate(double t) const {
  Matrix h = Matrix::Zero(dim_, dim_);
  const double tau = t - t0_ref_;
  for (const auto& [q, m] : modes_)
    h += std::exp(Complex(0.0, q * omega_ * tau)) * m;
  return h;
}

}  // namespace flq
