#include "matrix.hpp"

#include <cmath>

namespace pfmaps {

namespace {
int checked_dim(int dim) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
  return dim;
}
}  // namespace

ComplexMatrix::ComplexMatrix(int dim)
    : dim_(checked_dim(dim)),
      data_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries)
    : dim_(checked_dim(dim)), data_(std::move(entries)) {
  const auto expected =
      static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  if (data_.size() != expected)
    fail(ErrorCode::InvalidArgument, "entry count does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  const int d = static_cast<int>(rows.size());
  ComplexMatrix m(d);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != d)
      fail(ErrorCode::InvalidArgument, "matrix rows must all have length dim");
    int c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

ComplexMatrix ComplexMatrix::unit(int dim, int r, int c) {
  ComplexMatrix m(dim);
  m(r, c) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
  return m;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      m(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
  return m;
}

ComplexMatrix ComplexMatrix::anti_hermitian_part() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      m(r, c) = 0.5 * ((*this)(r, c) - std::conj((*this)(c, r)));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::inf_norm() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) s += std::abs((*this)(r, c));
    m = std::max(m, s);
  }
  return m;
}

double ComplexMatrix::one_norm() const {
  double m = 0.0;
  for (int c = 0; c < dim_; ++c) {
    double s = 0.0;
    for (int r = 0; r < dim_; ++r) s += std::abs((*this)(r, c));
    m = std::max(m, s);
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) fail(ErrorCode::DimMismatch, "matrix dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) fail(ErrorCode::DimMismatch, "matrix dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) fail(ErrorCode::DimMismatch, "matrix dimensions differ");
  const int n = a.dim_;
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i) {
    const cplx* arow = &a.data_[static_cast<std::size_t>(i) * n];
    cplx* crow = &c.data_[static_cast<std::size_t>(i) * n];
    for (int j = 0; j < n; ++j) {
      const cplx aij = arow[j];
      if (aij == cplx(0.0, 0.0)) continue;
      const cplx* brow = &b.data_[static_cast<std::size_t>(j) * n];
      for (int k = 0; k < n; ++k) crow[k] += aij * brow[k];
    }
  }
  return c;
}

ComplexMatrix kron(const ComplexMatrix& outer, const ComplexMatrix& inner) {
  const int di = inner.dim();
  const int dn = outer.dim() * di;
  ComplexMatrix m(dn);
  for (int io = 0; io < outer.dim(); ++io)
    for (int jo = 0; jo < outer.dim(); ++jo) {
      const cplx o = outer(io, jo);
      if (o == cplx(0.0, 0.0)) continue;
      for (int ii = 0; ii < di; ++ii)
        for (int ji = 0; ji < di; ++ji)
          m(io * di + ii, jo * di + ji) = o * inner(ii, ji);
    }
  return m;
}

std::vector<cplx> vec(const ComplexMatrix& a) {
  const int d = a.dim();
  std::vector<cplx> v(static_cast<std::size_t>(d) * d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r)
      v[static_cast<std::size_t>(c) * d + r] = a(r, c);
  return v;
}

ComplexMatrix unvec(std::span<const cplx> v, int dim) {
  if (v.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
    fail(ErrorCode::DimMismatch, "vector length is not dim^2");
  ComplexMatrix a(dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r)
      a(r, c) = v[static_cast<std::size_t>(c) * dim + r];
  return a;
}

std::vector<cplx> mat_vec(const ComplexMatrix& m, std::span<const cplx> x) {
  const int n = m.dim();
  if (x.size() != static_cast<std::size_t>(n))
    fail(ErrorCode::DimMismatch, "vector length does not match matrix");
  std::vector<cplx> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += m(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

ComplexMatrix outer_product(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size())
    fail(ErrorCode::DimMismatch, "outer product needs equal lengths");
  const int d = static_cast<int>(u.size());
  ComplexMatrix m(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      m(r, c) = u[static_cast<std::size_t>(r)] *
                std::conj(v[static_cast<std::size_t>(c)]);
  return m;
}

double vec_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cplx vec_dot(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size())
    fail(ErrorCode::DimMismatch, "dot product needs equal lengths");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  for (int r = 0; r < a.dim(); ++r)
    for (int c = r; c < a.dim(); ++c)
      if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return (a.adjoint() * a - ComplexMatrix::identity(a.dim())).max_abs() <= tol;
}

}  // namespace pfmaps
