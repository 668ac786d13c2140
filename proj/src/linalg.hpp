#pragma once

#include <limits>
#include <utility>

#include "decomp.hpp"

namespace pfmaps {

/// Sentinel for the operator norm in the Schatten norm order parameter.
inline constexpr double kSchattenInf = std::numeric_limits<double>::infinity();

/// Polar decomposition a = u * abs with abs = (a* a)^(1/2) positive
/// semidefinite and u vanishing on the kernel of abs.
struct PolarParts {
  ComplexMatrix u;
  ComplexMatrix abs;
};

/// Hermitian eigendecomposition; rejects non-Hermitian input at `tol`.
HermitianEigen herm_eig(const ComplexMatrix& a, double tol = 1e-8);

bool is_psd(const ComplexMatrix& a, double tol);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const ComplexMatrix& hermitian);

/// PSD square root with round-off clamping: eigenvalues in [-1e-11, 0) are
/// treated as 0, anything lower is an error.
ComplexMatrix psd_sqrt(const ComplexMatrix& hermitian);

/// |A| = (A* A)^(1/2).
ComplexMatrix abs_op(const ComplexMatrix& a);

PolarParts polar(const ComplexMatrix& a);

/// Singular values below this are treated as numerically zero.
double rank_threshold(double sigma_max);

/// Schatten p-norm, p in [1, inf]; pass kSchattenInf for the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);

/// Trace norm, ||A||_1.
double trace_norm(const ComplexMatrix& a);

/// Positive and negative parts (A = first - second, both PSD, product 0).
std::pair<ComplexMatrix, ComplexMatrix> pos_neg_parts(const ComplexMatrix& a,
                                                      double tol = 1e-8);

/// Matrix exponential by Pade approximation with scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& m);

/// Eigenvalue multiset ordered by modulus descending.
std::vector<cplx> general_spectrum(const ComplexMatrix& m);

}  // namespace pfmaps
