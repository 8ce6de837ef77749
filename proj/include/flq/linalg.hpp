#pragma once

// Dense complex matrix substrate: vectorization, superoperators, matrix
// exponential and the principal logarithm of unitaries, Choi reshuffling.
//
// Vectorization is column-stacking throughout: vec(A X B) = (B^T (x) A) vec(X).
// Superoperator matrices everywhere in this project follow that convention.

#include "flq/types.hpp"

#include <utility>
#include <vector>

namespace flq {

// Column-stacking of a square matrix into a d^2 vector.
inline Vector vectorize(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

inline Matrix devectorize(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim)
    throw ValidationError("devectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// Kronecker product, dense. Expression-friendly: accepts any Eigen products.
template <typename DerivedA, typename DerivedB>
Matrix kronecker(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
  return out;
}

// Superoperator matrix of X -> A X B.
inline Matrix sandwich(const Matrix& a, const Matrix& b) {
  require_square(a, "sandwich A");
  require_square(b, "sandwich B");
  if (a.rows() != b.rows())
    throw ValidationError("sandwich: dimension mismatch between A and B");
  return kronecker(b.transpose(), a);
}

inline Matrix commutator_superop(const Matrix& h) {
  require_square(h, "commutator_superop");
  const Matrix id = Matrix::Identity(h.rows(), h.cols());
  return kronecker(id, h) - kronecker(h.transpose(), id);
}

inline Matrix apply_superop(const Matrix& s, const Matrix& x) {
  return devectorize(s * vectorize(x), x.rows());
}

// General matrix exponential (Pade scaling-and-squaring via Eigen).
Matrix expm(const Matrix& m);

// e^{-i tau H} for Hermitian H, by eigendecomposition; exactly unitary up to
// rounding.
Matrix unitary_exp(const Matrix& hermitian, double tau);

// Eigenphases of a unitary in (-pi, pi] (branch edge assigned +pi) together
// with an orthonormal eigenbasis, via complex Schur. Phases are returned
// sorted ascending with the basis permuted to match.
struct UnitaryEigs {
  RealVector phases;  // ascending in (-pi, pi]
  Matrix basis;       // unitary, column k pairs with phases[k]
  double offdiag;     // Schur off-diagonal residue (normality diagnostic)
};
UnitaryEigs unitary_eigs(const Matrix& u, double unitary_tol = 1e-10);

// Principal logarithm of a unitary: skew-Hermitian B with e^B = U, eigenphases
// in (-pi, pi], +pi at the branch edge.
Matrix logm_unitary(const Matrix& u, double unitary_tol = 1e-10);

// Choi matrix C(S) = sum_ij E_ij (x) S(E_ij); S is completely positive iff
// C(S) is positive semidefinite.
Matrix choi(const Matrix& superop);

// Smallest eigenvalue of the Hermitian part of the Choi matrix.
double choi_min_eigenvalue(const Matrix& superop);

// Nearest unitary in Frobenius norm (polar factor via SVD).
Matrix polar_unitary(const Matrix& m);

}  // namespace flq
