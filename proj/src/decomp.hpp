#pragma once

#include <vector>

#include "matrix.hpp"

namespace pfmaps {

/// Eigendecomposition of a Hermitian matrix: A = V diag(eigenvalues) V*.
/// Eigenvalues ascending, eigenvector columns orthonormal.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi rotations on the Hermitian part of `a`.
/// Stops when the off-diagonal Frobenius mass falls below 1e-13 * ||A||_F;
/// at most 60 sweeps.
HermitianEigen jacobi_hermitian(const ComplexMatrix& a);

/// Singular value decomposition A = U diag(s) V*, singular values descending.
/// One-sided Jacobi on the columns; small singular values keep full absolute
/// accuracy (no squaring of the conditioning).
struct Svd {
  std::vector<double> singular_values;
  ComplexMatrix u;  // left vectors; zero columns where sigma == 0
  ComplexMatrix v;  // right vectors, unitary
};
Svd one_sided_jacobi_svd(const ComplexMatrix& a);
std::vector<double> singular_values(const ComplexMatrix& a);

/// Orthonormal basis of { x : ||Ax|| <= sigma_threshold } from the SVD.
std::vector<std::vector<cplx>> null_space(const ComplexMatrix& a,
                                          double sigma_threshold);
int nullity(const ComplexMatrix& a, double sigma_threshold);

/// Complex Schur form A = Q T Q* with T upper triangular:
/// Householder Hessenberg reduction followed by Wilkinson-shifted QR,
/// deflation threshold 1e-13 * ||A||_inf.
struct Schur {
  ComplexMatrix t;
  ComplexMatrix q;
};
Schur complex_schur(const ComplexMatrix& a);

/// Unsorted eigenvalue multiset (diagonal of the Schur factor).
std::vector<cplx> general_eigenvalues(const ComplexMatrix& a);

/// Eigenvector for the eigenvalue at diagonal position `index` of the Schur
/// factor, via back-substitution on the triangular system; unit norm.
std::vector<cplx> schur_eigenvector(const Schur& s, int index);

/// LU factorization with partial pivoting. Near-zero pivots are floored so
/// inverse iteration on near-singular shifts stays finite.
struct Lu {
  ComplexMatrix m;
  std::vector<int> perm;
  bool singular = false;
};
Lu lu_factor(ComplexMatrix a);
std::vector<cplx> lu_solve(const Lu& f, std::span<const cplx> b);
ComplexMatrix lu_solve(const Lu& f, const ComplexMatrix& b);

/// Rank-revealing orthonormalization (column-pivoted modified Gram-Schmidt):
/// vectors whose residual after projection exceeds `threshold` enter the
/// basis.
std::vector<std::vector<cplx>> pivoted_orthonormal_basis(
    std::vector<std::vector<cplx>> vectors, double threshold);

}  // namespace pfmaps
