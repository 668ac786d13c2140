#pragma once

#include "linalg.hpp"

namespace pfmaps {

/// Completely positive map given by a finite Kraus family:
/// apply(A) = sum_i kraus[i] A kraus[i]*.
class KrausChannel {
 public:
  KrausChannel(int dim, std::vector<ComplexMatrix> kraus);

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  int kraus_count() const { return static_cast<int>(kraus_.size()); }

  static KrausChannel identity(int dim);

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
};

/// General linear map on matrices, stored as its dim^2 x dim^2 transfer
/// matrix acting on column-stacked inputs: apply(A) = unvec(T vec(A)).
/// Covers maps that are positive but not completely positive (transpose).
class SuperOperator {
 public:
  SuperOperator(int dim, ComplexMatrix transfer);

  int dim() const { return dim_; }
  const ComplexMatrix& transfer() const { return transfer_; }

  static SuperOperator identity(int dim);
  /// The transpose map A -> A^T.
  static SuperOperator transpose_map(int dim);

 private:
  int dim_ = 0;
  ComplexMatrix transfer_;
};

/// C = sum_ij E_ij (outer) tensor phi(E_ij) (inner); PSD iff phi is CP, and
/// the partial trace over the inner factor equals I iff phi is trace
/// preserving.
struct ChoiMatrix {
  int dim = 0;
  ComplexMatrix choi;
};

ComplexMatrix apply(const KrausChannel& phi, const ComplexMatrix& a);
ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& a);

/// Adjoint with respect to the trace pairing tr(A* phi(B)); for Kraus
/// families this is the channel with every operator replaced by its adjoint.
KrausChannel adjoint(const KrausChannel& phi);
SuperOperator adjoint(const SuperOperator& phi);

/// Composite phi after psi; Kraus family {a_i b_j}.
KrausChannel compose(const KrausChannel& phi, const KrausChannel& psi);
SuperOperator compose(const SuperOperator& phi, const SuperOperator& psi);

/// phi tensor identity on an n-dimensional ancilla (channel factor outer).
KrausChannel tensor_with_identity(const KrausChannel& phi, int n);
SuperOperator tensor_with_identity(const SuperOperator& phi, int n);

ChoiMatrix choi(const KrausChannel& phi);
ChoiMatrix choi(const SuperOperator& phi);

/// Kraus family from a PSD Choi matrix; one operator per numerically nonzero
/// eigenvalue, so at most dim^2.
KrausChannel kraus_from_choi(const ChoiMatrix& c);

struct TraceCheck {
  bool trace_preserving = false;
  double residual = 0.0;  // ||phi*(I) - I||_inf
};
TraceCheck is_trace_preserving(const KrausChannel& phi, double tol);
TraceCheck is_trace_preserving(const SuperOperator& phi, double tol);

/// T = sum_i conj(kraus[i]) tensor kraus[i] for the column-major vec.
SuperOperator transfer_matrix(const KrausChannel& phi);

/// sum_i kraus[i]* kraus[i] (= phi*(I)).
ComplexMatrix kraus_gram(const KrausChannel& phi);

/// ||phi||_1 for a CP map: operator norm of phi*(I); equals 1 when trace
/// preserving.
double norm_one(const KrausChannel& phi);

/// ||phi||_2: largest singular value of the transfer matrix.
double norm_two(const KrausChannel& phi);
double norm_two(const SuperOperator& phi);

/// Trace-preserving completion: appends (I - phi*(I))^(1/2) to the family.
/// Requires phi*(I) <= I.
KrausChannel completion(const KrausChannel& phi);

}  // namespace pfmaps
