#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace flq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Thrown for bad inputs: shapes, preconditions, schema violations, rejected
// models. The CLI maps this to exit status 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a computation fails to meet its accuracy contract (kernel not
// found, positivity drift, quadrature non-convergence). CLI exit status 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_finite(const Matrix& m) { return m.allFinite(); }

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

inline double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw ValidationError(std::string(what) + ": matrix must be square");
  if (!is_finite(m))
    throw ValidationError(std::string(what) + ": matrix has NaN/Inf entries");
}

inline void require_hermitian(const Matrix& m, const char* what,
                              double rel_tol = 1e-12) {
  require_square(m, what);
  const double scale = std::max(1.0, m.norm());
  if (hermiticity_defect(m) > rel_tol * scale)
    throw ValidationError(std::string(what) + ": matrix is not Hermitian");
}

inline void require_unitary(const Matrix& u, const char* what,
                            double tol = 1e-10) {
  require_square(u, what);
  if (unitarity_defect(u) > tol)
    throw ValidationError(std::string(what) + ": matrix is not unitary");
}

// Density-matrix invariants: Hermitian within 1e-12, unit trace within 1e-12,
// smallest eigenvalue >= -1e-10.
struct DensityCheck {
  double hermiticity;
  double trace_defect;
  double min_eigenvalue;
  bool ok(double herm_tol = 1e-12, double trace_tol = 1e-12,
          double neg_tol = -1e-10) const {
    return hermiticity <= herm_tol && trace_defect <= trace_tol &&
           min_eigenvalue >= neg_tol;
  }
};

inline DensityCheck check_density(const Matrix& rho) {
  DensityCheck c;
  c.hermiticity = hermiticity_defect(rho);
  c.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Matrix(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

inline void require_density(const Matrix& rho, const char* what) {
  require_square(rho, what);
  const DensityCheck c = check_density(rho);
  if (!c.ok())
    throw ValidationError(std::string(what) +
                          ": density-matrix invariants violated");
}

}  // namespace flq
