#include "channel.hpp"

#include <cmath>

namespace pfmaps {

KrausChannel::KrausChannel(int dim, std::vector<ComplexMatrix> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "channel dimension must be >= 1");
  if (kraus_.empty())
    fail(ErrorCode::InvalidArgument, "a channel needs at least one Kraus operator");
  for (const auto& k : kraus_)
    if (k.dim() != dim)
      fail(ErrorCode::DimMismatch, "Kraus operator dimension differs from channel");
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, {ComplexMatrix::identity(dim)});
}

SuperOperator::SuperOperator(int dim, ComplexMatrix transfer)
    : dim_(dim), transfer_(std::move(transfer)) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "superoperator dimension must be >= 1");
  if (transfer_.dim() != dim * dim)
    fail(ErrorCode::DimMismatch, "transfer matrix must be dim^2 x dim^2");
}

SuperOperator SuperOperator::identity(int dim) {
  return SuperOperator(dim, ComplexMatrix::identity(dim * dim));
}

SuperOperator SuperOperator::transpose_map(int dim) {
  ComplexMatrix t(dim * dim);
  // vec(A^T)[c + dim*r] = A(c, r) = vec(A)[c + dim*r]... entry (r,c) of the
  // input lands at (c,r) of the output: T[(c + dim*r), (r + dim*c)] = 1.
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) t(c + dim * r, r + dim * c) = 1.0;
  return SuperOperator(dim, std::move(t));
}

ComplexMatrix apply(const KrausChannel& phi, const ComplexMatrix& a) {
  if (a.dim() != phi.dim())
    fail(ErrorCode::DimMismatch, "input dimension differs from channel");
  ComplexMatrix out(phi.dim());
  for (const auto& k : phi.kraus()) out += k * a * k.adjoint();
  return out;
}

ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& a) {
  if (a.dim() != phi.dim())
    fail(ErrorCode::DimMismatch, "input dimension differs from superoperator");
  return unvec(mat_vec(phi.transfer(), vec(a)), phi.dim());
}

KrausChannel adjoint(const KrausChannel& phi) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.kraus().size());
  for (const auto& k : phi.kraus()) ops.push_back(k.adjoint());
  return KrausChannel(phi.dim(), std::move(ops));
}

SuperOperator adjoint(const SuperOperator& phi) {
  return SuperOperator(phi.dim(), phi.transfer().adjoint());
}

KrausChannel compose(const KrausChannel& phi, const KrausChannel& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimMismatch, "composed channels must share a dimension");
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.kraus().size() * psi.kraus().size());
  for (const auto& a : phi.kraus())
    for (const auto& b : psi.kraus()) ops.push_back(a * b);
  return KrausChannel(phi.dim(), std::move(ops));
}

SuperOperator compose(const SuperOperator& phi, const SuperOperator& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimMismatch, "composed superoperators must share a dimension");
  return SuperOperator(phi.dim(), phi.transfer() * psi.transfer());
}

KrausChannel tensor_with_identity(const KrausChannel& phi, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "ancilla dimension must be >= 1");
  const ComplexMatrix id = ComplexMatrix::identity(n);
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.kraus().size());
  for (const auto& k : phi.kraus()) ops.push_back(kron(k, id));
  return KrausChannel(phi.dim() * n, std::move(ops));
}

SuperOperator tensor_with_identity(const SuperOperator& phi, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "ancilla dimension must be >= 1");
  const int d = phi.dim();
  const int dn = d * n;
  // Evaluate the map on the matrix units of the outer factor once.
  std::vector<ComplexMatrix> images;
  images.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      images.push_back(apply(phi, ComplexMatrix::unit(d, i, j)));

  ComplexMatrix t(dn * dn);
  // Input unit E_{(i n + u),(j n + v)} maps to phi(E_ij) tensor E_uv.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ComplexMatrix& img = images[static_cast<std::size_t>(i) * d + j];
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          const int col = (i * n + u) + dn * (j * n + v);
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
              const cplx x = img(k, l);
              if (x == cplx(0.0, 0.0)) continue;
              const int row = (k * n + u) + dn * (l * n + v);
              t(row, col) = x;
            }
        }
    }
  return SuperOperator(dn, std::move(t));
}

ChoiMatrix choi(const KrausChannel& phi) {
  const int d = phi.dim();
  ComplexMatrix c(d * d);
  // C = sum over Kraus operators of vec(k) vec(k)*.
  for (const auto& k : phi.kraus()) {
    const auto w = vec(k);
    for (std::size_t r = 0; r < w.size(); ++r)
      for (std::size_t s = 0; s < w.size(); ++s)
        c(static_cast<int>(r), static_cast<int>(s)) += w[r] * std::conj(w[s]);
  }
  return {d, std::move(c)};
}

ChoiMatrix choi(const SuperOperator& phi) {
  const int d = phi.dim();
  ComplexMatrix c(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ComplexMatrix img = apply(phi, ComplexMatrix::unit(d, i, j));
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) c(i * d + r, j * d + s) = img(r, s);
    }
  return {d, std::move(c)};
}

KrausChannel kraus_from_choi(const ChoiMatrix& c) {
  const int d = c.dim;
  if (c.choi.dim() != d * d)
    fail(ErrorCode::DimMismatch, "Choi matrix must be dim^2 x dim^2");
  if (!is_hermitian(c.choi, 1e-8))
    fail(ErrorCode::NotPSD, "Choi matrix is not Hermitian");
  const HermitianEigen eig = jacobi_hermitian(c.choi);
  if (eig.eigenvalues.front() < -1e-8)
    fail(ErrorCode::NotPSD, "Choi matrix has a negative eigenvalue");
  const double top = std::max(eig.eigenvalues.back(), 0.0);
  const double thr = 1e-10 * std::max(1.0, top);
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < d * d; ++k) {
    const double lambda = eig.eigenvalues[static_cast<std::size_t>(k)];
    if (lambda <= thr) continue;
    std::vector<cplx> col(static_cast<std::size_t>(d) * d);
    const double w = std::sqrt(lambda);
    for (int r = 0; r < d * d; ++r)
      col[static_cast<std::size_t>(r)] = w * eig.eigenvectors(r, k);
    ops.push_back(unvec(col, d));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix(d));  // the zero channel
  return KrausChannel(d, std::move(ops));
}

TraceCheck is_trace_preserving(const KrausChannel& phi, double tol) {
  const ComplexMatrix gram = kraus_gram(phi);
  const double residual =
      schatten_norm(gram - ComplexMatrix::identity(phi.dim()), kSchattenInf);
  return {residual <= tol, residual};
}

TraceCheck is_trace_preserving(const SuperOperator& phi, double tol) {
  // tr(phi(A)) = tr(A) for all A  <=>  T* vec(I) = vec(I).
  const auto id_vec = vec(ComplexMatrix::identity(phi.dim()));
  const auto pulled = mat_vec(phi.transfer().adjoint(), id_vec);
  double residual = 0.0;
  for (std::size_t i = 0; i < id_vec.size(); ++i)
    residual = std::max(residual, std::abs(pulled[i] - id_vec[i]));
  return {residual <= tol, residual};
}

SuperOperator transfer_matrix(const KrausChannel& phi) {
  const int d = phi.dim();
  ComplexMatrix t(d * d);
  for (const auto& k : phi.kraus()) t += kron(k.conjugate(), k);
  return SuperOperator(d, std::move(t));
}

ComplexMatrix kraus_gram(const KrausChannel& phi) {
  ComplexMatrix gram(phi.dim());
  for (const auto& k : phi.kraus()) gram += k.adjoint() * k;
  return gram.hermitian_part();
}

double norm_one(const KrausChannel& phi) {
  return jacobi_hermitian(kraus_gram(phi)).eigenvalues.back();
}

double norm_two(const KrausChannel& phi) {
  return norm_two(transfer_matrix(phi));
}

double norm_two(const SuperOperator& phi) {
  return singular_values(phi.transfer()).front();
}

KrausChannel completion(const KrausChannel& phi) {
  const ComplexMatrix defect =
      ComplexMatrix::identity(phi.dim()) - kraus_gram(phi);
  if (min_eigenvalue(defect) < -1e-9)
    fail(ErrorCode::NormExceedsOne, "phi*(I) exceeds the identity; no completion");
  std::vector<ComplexMatrix> ops = phi.kraus();
  if (defect.max_abs() > 1e-12) ops.push_back(psd_sqrt(defect));
  return KrausChannel(phi.dim(), std::move(ops));
}

}  // namespace pfmaps
