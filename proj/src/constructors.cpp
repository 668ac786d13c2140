#include "constructors.hpp"

#include <cmath>

#include "rng.hpp"

namespace pfmaps {

WeightMatrix make_weight_matrix(int dim, std::vector<double> c) {
  if (dim < 1) fail(ErrorCode::BadWeights, "weight matrix dimension must be >= 1");
  if (c.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
    fail(ErrorCode::BadWeights, "weight matrix needs dim^2 entries");
  for (int k = 0; k < dim; ++k) {
    double col = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double w = c[static_cast<std::size_t>(i) * dim + k];
      if (!(w > 0.0)) fail(ErrorCode::BadWeights, "weights must be strictly positive");
      col += w * w;
    }
    if (std::abs(col - 1.0) > 1e-12)
      fail(ErrorCode::BadWeights, "column sums of squares must equal 1");
  }
  return {dim, std::move(c)};
}

KrausChannel pinned_channel(const DensityMatrix& rho) {
  const int d = rho.matrix.dim();
  const HermitianEigen eig = jacobi_hermitian(rho.matrix);
  if (eig.eigenvalues.front() < 1e-10)
    fail(ErrorCode::SingularDensity,
         "pinned channel needs a positive definite density matrix");
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    const double w = std::sqrt(eig.eigenvalues[static_cast<std::size_t>(i)]);
    for (int k = 0; k < d; ++k) {
      ComplexMatrix op(d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          op(r, c) = w * eig.eigenvectors(r, i) * std::conj(eig.eigenvectors(c, k));
      ops.push_back(std::move(op));
    }
  }
  return KrausChannel(d, std::move(ops));
}

KrausChannel weighted_basis_channel(const WeightMatrix& w) {
  const int d = w.dim;
  if (d < 1 || w.c.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
    fail(ErrorCode::BadWeights, "malformed weight matrix");
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      ComplexMatrix op(d);
      op(i, k) = w(i, k);
      ops.push_back(std::move(op));
    }
  return KrausChannel(d, std::move(ops));
}

KrausChannel local_update_channel(std::span<const double> rho_diag) {
  const int d = static_cast<int>(rho_diag.size());
  if (d < 2) fail(ErrorCode::BadDensity, "local update needs dimension >= 2");
  for (const double r : rho_diag)
    if (!(r > 0.0))
      fail(ErrorCode::BadDensity, "diagonal entries must be strictly positive");

  auto at = [&](int i) {  // 1-based with zero boundary
    return (i >= 1 && i <= d) ? rho_diag[static_cast<std::size_t>(i - 1)] : 0.0;
  };
  std::vector<ComplexMatrix> ops;
  for (int i = 1; i <= d; ++i) {
    const double denom = at(i + 1) + at(i) + at(i - 1);
    for (int nu = -1; nu <= 1; ++nu) {
      const int j = nu + i;
      if (j < 1 || j > d) continue;
      const double p = at(j) / denom;
      if (p == 0.0) continue;
      ComplexMatrix op(d);
      op(j - 1, i - 1) = std::sqrt(p);
      ops.push_back(std::move(op));
    }
  }
  return KrausChannel(d, std::move(ops));
}

KrausChannel projective_channel(const std::vector<ComplexMatrix>& projections) {
  if (projections.empty())
    fail(ErrorCode::NotADecomposition, "need at least one projection");
  const int d = projections.front().dim();
  ComplexMatrix sum(d);
  for (const auto& p : projections) {
    if (p.dim() != d)
      fail(ErrorCode::NotADecomposition, "projections must share a dimension");
    if ((p * p - p).max_abs() > 1e-9 || (p - p.adjoint()).max_abs() > 1e-9)
      fail(ErrorCode::NotADecomposition, "input is not an orthogonal projection");
    sum += p;
  }
  for (std::size_t i = 0; i < projections.size(); ++i)
    for (std::size_t j = i + 1; j < projections.size(); ++j)
      if ((projections[i] * projections[j]).max_abs() > 1e-9)
        fail(ErrorCode::NotADecomposition, "projections must be pairwise orthogonal");
  if ((sum - ComplexMatrix::identity(d)).max_abs() > 1e-9)
    fail(ErrorCode::NotADecomposition, "projections must sum to the identity");
  return KrausChannel(d, projections);
}

namespace {

// Distance up to a global phase, min over theta of ||a - e^(i theta) b||.
double phase_invariant_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase =
      std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
  return (a - phase * b).max_abs();
}

bool matches_some_element(const ComplexMatrix& m,
                          const std::vector<ComplexMatrix>& group, double tol) {
  for (const auto& g : group)
    if (phase_invariant_distance(m, g) <= tol) return true;
  return false;
}

}  // namespace

KrausChannel group_average_channel(const std::vector<ComplexMatrix>& unitaries) {
  if (unitaries.empty()) fail(ErrorCode::NotAGroup, "need at least one element");
  const int d = unitaries.front().dim();
  const double tol = 1e-8;
  for (const auto& u : unitaries) {
    if (u.dim() != d) fail(ErrorCode::NotAGroup, "elements must share a dimension");
    if (!is_unitary(u, tol)) fail(ErrorCode::NotAGroup, "elements must be unitary");
  }
  if (!matches_some_element(ComplexMatrix::identity(d), unitaries, tol))
    fail(ErrorCode::NotAGroup, "the identity is missing");
  for (const auto& u : unitaries) {
    if (!matches_some_element(u.adjoint(), unitaries, tol))
      fail(ErrorCode::NotAGroup, "an inverse is missing");
    for (const auto& v : unitaries)
      if (!matches_some_element(u * v, unitaries, tol))
        fail(ErrorCode::NotAGroup, "the list is not closed under products");
  }
  const double w = 1.0 / std::sqrt(static_cast<double>(unitaries.size()));
  std::vector<ComplexMatrix> ops;
  ops.reserve(unitaries.size());
  for (const auto& u : unitaries) ops.push_back(cplx(w, 0.0) * u);
  return KrausChannel(d, std::move(ops));
}

KrausChannel random_channel(int dim, int kraus_count, std::uint64_t seed) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (kraus_count < 1 || kraus_count > dim * dim)
    fail(ErrorCode::InvalidArgument, "Kraus count must lie in [1, dim^2]");
  Rng rng(Rng::derive(seed, 0x7a3));
  const int rows = dim * kraus_count;

  // Gaussian (rows x dim) block matrix, orthonormalized column by column.
  std::vector<std::vector<cplx>> cols(static_cast<std::size_t>(dim));
  for (auto& col : cols) {
    col.resize(static_cast<std::size_t>(rows));
    for (auto& x : col) x = rng.complex_gaussian();
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t b = 0; b < c; ++b) {
        const cplx inner = vec_dot(cols[b], cols[c]);
        for (std::size_t i = 0; i < cols[c].size(); ++i)
          cols[c][i] -= inner * cols[b][i];
      }
    const double n = vec_norm(cols[c]);
    if (n <= 1e-12)
      fail(ErrorCode::NoConvergence, "degenerate Gaussian draw");  // unreachable in practice
    for (auto& x : cols[c]) x /= n;
  }

  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(kraus_count));
  for (int k = 0; k < kraus_count; ++k) {
    ComplexMatrix op(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        op(r, c) = cols[static_cast<std::size_t>(c)]
                       [static_cast<std::size_t>(k * dim + r)];
    ops.push_back(std::move(op));
  }
  return KrausChannel(dim, std::move(ops));
}

}  // namespace pfmaps
