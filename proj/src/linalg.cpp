#include "linalg.hpp"

#include <algorithm>
#include <cmath>

namespace pfmaps {

HermitianEigen herm_eig(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol))
    fail(ErrorCode::NotHermitian, "matrix is not Hermitian at the given tolerance");
  return jacobi_hermitian(a);
}

bool is_psd(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  return jacobi_hermitian(a).eigenvalues.front() >= -tol;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  return jacobi_hermitian(hermitian).eigenvalues.front();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& hermitian) {
  HermitianEigen eig = jacobi_hermitian(hermitian);
  const int n = hermitian.dim();
  for (auto& lambda : eig.eigenvalues) {
    if (lambda < -1e-11)
      fail(ErrorCode::NotPSD, "matrix has a negative eigenvalue beyond round-off");
    lambda = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.eigenvectors(r, k) * eig.eigenvalues[static_cast<std::size_t>(k)] *
               std::conj(eig.eigenvectors(c, k));
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix abs_op(const ComplexMatrix& a) {
  return psd_sqrt((a.adjoint() * a).hermitian_part());
}

double rank_threshold(double sigma_max) { return 1e-10 * std::max(1.0, sigma_max); }

PolarParts polar(const ComplexMatrix& a) {
  const int n = a.dim();
  HermitianEigen eig = jacobi_hermitian((a.adjoint() * a).hermitian_part());
  std::vector<double> sigma(eig.eigenvalues.size());
  for (std::size_t i = 0; i < sigma.size(); ++i)
    sigma[i] = eig.eigenvalues[i] > 0.0 ? std::sqrt(eig.eigenvalues[i]) : 0.0;
  const double thr = rank_threshold(sigma.back());

  ComplexMatrix abs(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.eigenvectors(r, k) * sigma[static_cast<std::size_t>(k)] *
               std::conj(eig.eigenvectors(c, k));
      abs(r, c) = acc;
    }

  // pseudo-inverse of |A| on its numerical range
  ComplexMatrix pinv(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const double s = sigma[static_cast<std::size_t>(k)];
        if (s <= thr) continue;
        acc += eig.eigenvectors(r, k) * (1.0 / s) * std::conj(eig.eigenvectors(c, k));
      }
      pinv(r, c) = acc;
    }
  return {a * pinv, std::move(abs)};
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0)
    fail(ErrorCode::InvalidOrder, "Schatten order must satisfy p >= 1");
  std::vector<double> sigma;
  const double herm_tol = 1e-12 * std::max(1.0, a.max_abs());
  if (is_hermitian(a, herm_tol)) {
    sigma = jacobi_hermitian(a).eigenvalues;
    for (auto& s : sigma) s = std::abs(s);
  } else {
    sigma = singular_values(a);
  }
  if (p == kSchattenInf) return *std::max_element(sigma.begin(), sigma.end());
  if (p == 1.0) {
    double s = 0.0;
    for (double x : sigma) s += x;
    return s;
  }
  // scale out the largest value so powers cannot overflow
  const double top = *std::max_element(sigma.begin(), sigma.end());
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double x : sigma) s += std::pow(x / top, p);
  return top * std::pow(s, 1.0 / p);
}

double trace_norm(const ComplexMatrix& a) { return schatten_norm(a, 1.0); }

std::pair<ComplexMatrix, ComplexMatrix> pos_neg_parts(const ComplexMatrix& a,
                                                      double tol) {
  const HermitianEigen eig = herm_eig(a, tol);
  const int n = a.dim();
  ComplexMatrix pos(n), neg(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx ap = 0.0, an = 0.0;
      for (int k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[static_cast<std::size_t>(k)];
        const cplx w = eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
        if (lambda > 0.0)
          ap += lambda * w;
        else
          an += -lambda * w;
      }
      pos(r, c) = ap;
      neg(r, c) = an;
    }
  return {std::move(pos), std::move(neg)};
}

ComplexMatrix expm(const ComplexMatrix& m) {
  const int n = m.dim();
  const double guard = 700.0;
  if (m.inf_norm() > guard)
    fail(ErrorCode::Overflow, "matrix norm exceeds the exponential guard bound");

  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068e0;
  static const double theta13 = 5.371920351148152e0;

  const double eta = m.one_norm();
  int squarings = 0;
  ComplexMatrix a = m;
  if (eta > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(eta / theta13)));
    a *= cplx(std::ldexp(1.0, -squarings), 0.0);
  }

  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix u(n), v(n);

  auto combine = [&](const std::vector<const ComplexMatrix*>& powers,
                     const std::vector<double>& coef) {
    // powers[k] is A^(2k); builds sum coef[k] * powers[k]
    ComplexMatrix acc(n);
    for (std::size_t k = 0; k < coef.size(); ++k) {
      ComplexMatrix term = *powers[k];
      term *= cplx(coef[k], 0.0);
      acc += term;
    }
    return acc;
  };

  if (eta <= theta3) {
    const std::vector<const ComplexMatrix*> p{&id, &a2};
    u = a * combine(p, {60.0, 1.0});
    v = combine(p, {120.0, 12.0});
  } else if (eta <= theta5) {
    const ComplexMatrix a4 = a2 * a2;
    const std::vector<const ComplexMatrix*> p{&id, &a2, &a4};
    u = a * combine(p, {15120.0, 420.0, 1.0});
    v = combine(p, {30240.0, 3360.0, 30.0});
  } else if (eta <= theta7) {
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const std::vector<const ComplexMatrix*> p{&id, &a2, &a4, &a6};
    u = a * combine(p, {8648640.0, 277200.0, 1512.0, 1.0});
    v = combine(p, {17297280.0, 1995840.0, 25200.0, 56.0});
  } else if (eta <= theta9) {
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix a8 = a6 * a2;
    const std::vector<const ComplexMatrix*> p{&id, &a2, &a4, &a6, &a8};
    u = a * combine(p, {8821612800.0, 302702400.0, 2162160.0, 3960.0, 1.0});
    v = combine(p, {17643225600.0, 2075673600.0, 30270240.0, 110880.0, 90.0});
  } else {
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const std::vector<const ComplexMatrix*> low{&id, &a2, &a4, &a6};
    const std::vector<const ComplexMatrix*> high{&a2, &a4, &a6};
    const ComplexMatrix u_high = combine(high, {40840800.0, 16380.0, 1.0});
    const ComplexMatrix u_low = combine(
        low, {32382376266240000.0, 1187353796428800.0, 10559470521600.0,
              33522128640.0});
    u = a * (a6 * u_high + u_low);
    const ComplexMatrix v_high = combine(high, {1323241920.0, 960960.0, 182.0});
    const ComplexMatrix v_low = combine(
        low, {64764752532480000.0, 7771770303897600.0, 129060195264000.0,
              670442572800.0});
    v = a6 * v_high + v_low;
  }

  ComplexMatrix num = v + u;
  ComplexMatrix den = v - u;
  ComplexMatrix result = lu_solve(lu_factor(std::move(den)), num);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

std::vector<cplx> general_spectrum(const ComplexMatrix& m) {
  std::vector<cplx> ev = general_eigenvalues(m);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

}  // namespace pfmaps
