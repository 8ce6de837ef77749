#include "flq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <numeric>

namespace flq {

Matrix expm(const Matrix& m) {
  require_square(m, "expm");
  return m.exp();
}

Matrix unitary_exp(const Matrix& hermitian, double tau) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  if (es.info() != Eigen::Success)
    throw NumericError("unitary_exp: eigendecomposition failed");
  const auto& w = es.eigenvalues();
  Vector phase(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phase[k] = std::exp(Complex(0.0, -tau * w[k]));
  return es.eigenvectors() * phase.asDiagonal() *
         es.eigenvectors().adjoint();
}

UnitaryEigs unitary_eigs(const Matrix& u, double unitary_tol) {
  require_square(u, "unitary_eigs");
  if (unitarity_defect(u) > unitary_tol)
    throw ValidationError("unitary_eigs: input is not unitary within tolerance");

  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw NumericError("unitary_eigs: Schur decomposition failed");
  const Matrix& t = schur.matrixT();
  const Eigen::Index n = u.rows();

  // For a normal matrix T is diagonal up to rounding; measure the residue.
  Matrix strict = t;
  strict.diagonal().setZero();
  const double offdiag = strict.norm();

  UnitaryEigs out;
  out.offdiag = offdiag;
  out.phases.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double phi = std::arg(t(k, k));
    // branch edge: phases within rounding of -pi are reported as +pi
    if (phi <= -kPi + 1e-12) phi += 2.0 * kPi;
    out.phases[k] = phi;
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return out.phases[a] < out.phases[b];
  });

  RealVector sorted(n);
  Matrix basis(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sorted[k] = out.phases[order[static_cast<size_t>(k)]];
    basis.col(k) = schur.matrixU().col(order[static_cast<size_t>(k)]);
  }
  out.phases = std::move(sorted);
  out.basis = std::move(basis);
  return out;
}

Matrix logm_unitary(const Matrix& u, double unitary_tol) {
  const UnitaryEigs eig = unitary_eigs(u, unitary_tol);
  Vector d(eig.phases.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    d[k] = Complex(0.0, eig.phases[k]);
  Matrix b = eig.basis * d.asDiagonal() * eig.basis.adjoint();
  // exact skew-Hermitian up to rounding; symmetrize to pin it down
  return 0.5 * (b - b.adjoint().eval());
}

Matrix choi(const Matrix& superop) {
  require_square(superop, "choi");
  const auto dd = superop.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dd))));
  if (d * d != dd)
    throw ValidationError("choi: superoperator dimension is not a square");
  // Block (i,j) of C is S(E_ij) = devec(column i + j*d of the matrix).
  Matrix c(dd, dd);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      c.block(i * d, j * d, d, d) =
          devectorize(superop.col(i + j * d), d);
  return c;
}

double choi_min_eigenvalue(const Matrix& superop) {
  const Matrix c = choi(superop);
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (c + c.adjoint())),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace flq
