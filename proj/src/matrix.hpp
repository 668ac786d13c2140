#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "error.hpp"

namespace pfmaps {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major storage. Values are immutable in
/// spirit: every operation returns a fresh matrix, nothing is shared.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::vector<cplx> entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<cplx>> rows);
  /// Standard matrix unit E_rc (1 at row r, column c).
  static ComplexMatrix unit(int dim, int r, int c);

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(int r, int c) { return data_[index(r, c)]; }
  const cplx& operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix hermitian_part() const;       // (A + A*)/2
  ComplexMatrix anti_hermitian_part() const;  // (A - A*)/2

  cplx trace() const;
  double frobenius_norm() const;
  /// Largest entry modulus.
  double max_abs() const;
  /// Induced infinity norm (max absolute row sum).
  double inf_norm() const;
  /// Induced one norm (max absolute column sum).
  double one_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a) {
    a *= cplx(-1.0, 0.0);
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * dim_ + c;
  }

  int dim_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product with `outer` as the slow (block) index:
/// result[(io*di+ii),(jo*di+ji)] = outer(io,jo) * inner(ii,ji).
ComplexMatrix kron(const ComplexMatrix& outer, const ComplexMatrix& inner);

/// Column-major stacking: vec(A)[r + dim*c] = A(r, c).
std::vector<cplx> vec(const ComplexMatrix& a);
ComplexMatrix unvec(std::span<const cplx> v, int dim);

std::vector<cplx> mat_vec(const ComplexMatrix& m, std::span<const cplx> x);
/// Rank-one matrix u v*.
ComplexMatrix outer_product(std::span<const cplx> u, std::span<const cplx> v);

double vec_norm(std::span<const cplx> v);
/// Hermitian inner product conj(a) . b.
cplx vec_dot(std::span<const cplx> a, std::span<const cplx> b);

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

}  // namespace pfmaps
