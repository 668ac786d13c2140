#pragma once

#include <cstdint>

#include "spectral.hpp"

namespace pfmaps {

/// Strictly positive weights with unit column sum of squares,
/// c(i, k) stored row-major.
struct WeightMatrix {
  int dim = 0;
  std::vector<double> c;

  double operator()(int i, int k) const {
    return c[static_cast<std::size_t>(i) * dim + k];
  }
};

/// Validates c_ik > 0 and sum_i c_ik^2 = 1 per column (within 1e-12).
WeightMatrix make_weight_matrix(int dim, std::vector<double> c);

/// Channel with action A -> tr(A) rho for a positive definite rho:
/// Kraus family sqrt(rho_i) |psi_i><psi_k| over the eigenbasis of rho.
/// Idempotent, trace preserving, spectrum {1, 0, ..., 0}.
KrausChannel pinned_channel(const DensityMatrix& rho);

/// Kraus family c_ik |e_i><e_k|; trace preserving and positivity improving;
/// the fixed point solves sum_k c_ik^2 rho_k = rho_i.
KrausChannel weighted_basis_channel(const WeightMatrix& w);

/// Nearest-neighbour update: p(nu, i) = rho(nu+i) / (rho(i+1)+rho(i)+rho(i-1))
/// with out-of-range entries zero; Kraus sqrt(p) |e_{nu+i}><e_i|.
KrausChannel local_update_channel(std::span<const double> rho_diag);

/// Pinching by a decomposition of unity into pairwise orthogonal
/// projections; trace preserving but never ergodic for a nontrivial
/// decomposition (each projection stays fixed).
KrausChannel projective_channel(const std::vector<ComplexMatrix>& projections);

/// Average over a finite unitary group (closure is checked up to global
/// phase); trace preserving, idempotent, a conditional expectation.
KrausChannel group_average_channel(const std::vector<ComplexMatrix>& unitaries);

/// Trace-preserving channel whose stacked Kraus family is a Haar-like
/// isometry drawn from the orthonormalized Gaussian ensemble; deterministic
/// per seed.
KrausChannel random_channel(int dim, int kraus_count, std::uint64_t seed);

}  // namespace pfmaps
