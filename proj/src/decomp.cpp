#include "decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pfmaps {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Columns of the unitary diagonalizing the Hermitian block
// [[alpha, beta], [conj(beta), gamma]]; first column belongs to the larger
// eigenvalue. Returns {j_pp, j_pq, j_qp, j_qq}.
struct PlaneRotation {
  cplx pp, pq, qp, qq;
};

PlaneRotation hermitian_block_rotation(double alpha, cplx beta, double gamma) {
  const double delta = 0.5 * (alpha - gamma);
  const double babs = std::abs(beta);
  const double r = std::hypot(delta, babs);
  double u;
  if (delta >= 0.0)
    u = (r + delta) > 0.0 ? babs * babs / (r + delta) : 0.0;
  else
    u = r - delta;
  const double n = std::hypot(babs, u);
  if (n == 0.0) return {1.0, 0.0, 0.0, 1.0};
  const cplx bn = beta / n;
  const double un = u / n;
  return {bn, -un, un, std::conj(bn)};
}

double off_diagonal_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen jacobi_hermitian(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix w = a.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = 1e-13 * w.frobenius_norm();
  const int max_sweeps = 60;

  int sweep = 0;
  while (n > 1) {
    if (off_diagonal_frobenius(w) <= target) break;
    if (++sweep > max_sweeps)
      fail(ErrorCode::NoConvergence, "jacobi sweep budget exhausted");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx beta = w(p, q);
        if (std::abs(beta) == 0.0) continue;
        const PlaneRotation j = hermitian_block_rotation(
            w(p, p).real(), beta, w(q, q).real());
        // w <- J* w J
        for (int k = 0; k < n; ++k) {
          const cplx wp = w(k, p), wq = w(k, q);
          w(k, p) = wp * j.pp + wq * j.qp;
          w(k, q) = wp * j.pq + wq * j.qq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx wp = w(p, k), wq = w(q, k);
          w(p, k) = std::conj(j.pp) * wp + std::conj(j.qp) * wq;
          w(q, k) = std::conj(j.pq) * wp + std::conj(j.qq) * wq;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const cplx vp = v(k, p), vq = v(k, q);
          v(k, p) = vp * j.pp + vq * j.qp;
          v(k, q) = vp * j.pq + vq * j.qq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return w(i, i).real() < w(j, j).real();
  });

  HermitianEigen out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.eigenvectors = ComplexMatrix(n);
  for (int c = 0; c < n; ++c) {
    out.eigenvalues[static_cast<std::size_t>(c)] = w(order[c], order[c]).real();
    for (int r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

Svd one_sided_jacobi_svd(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double hpp = 0.0, hqq = 0.0;
        cplx hpq = 0.0;
        for (int k = 0; k < n; ++k) {
          hpp += std::norm(w(k, p));
          hqq += std::norm(w(k, q));
          hpq += std::conj(w(k, p)) * w(k, q);
        }
        if (std::abs(hpq) <= 1e-15 * std::sqrt(hpp * hqq) ||
            std::abs(hpq) == 0.0)
          continue;
        rotated = true;
        const PlaneRotation j = hermitian_block_rotation(hpp, hpq, hqq);
        for (int k = 0; k < n; ++k) {
          const cplx wp = w(k, p), wq = w(k, q);
          w(k, p) = wp * j.pp + wq * j.qp;
          w(k, q) = wp * j.pq + wq * j.qq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vp = v(k, p), vq = v(k, q);
          v(k, p) = vp * j.pp + vq * j.qp;
          v(k, q) = vp * j.pq + vq * j.qq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += std::norm(w(r, c));
    sigma[static_cast<std::size_t>(c)] = std::sqrt(s);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return sigma[static_cast<std::size_t>(i)] >
           sigma[static_cast<std::size_t>(j)];
  });

  Svd out;
  out.singular_values.resize(static_cast<std::size_t>(n));
  out.u = ComplexMatrix(n);
  out.v = ComplexMatrix(n);
  for (int c = 0; c < n; ++c) {
    const int src = order[c];
    const double s = sigma[static_cast<std::size_t>(src)];
    out.singular_values[static_cast<std::size_t>(c)] = s;
    for (int r = 0; r < n; ++r) {
      out.v(r, c) = v(r, src);
      out.u(r, c) = s > 0.0 ? w(r, src) / s : cplx(0.0, 0.0);
    }
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  return one_sided_jacobi_svd(a).singular_values;
}

std::vector<std::vector<cplx>> null_space(const ComplexMatrix& a,
                                          double sigma_threshold) {
  const Svd svd = one_sided_jacobi_svd(a);
  std::vector<std::vector<cplx>> basis;
  for (int c = 0; c < a.dim(); ++c) {
    if (svd.singular_values[static_cast<std::size_t>(c)] > sigma_threshold)
      continue;
    std::vector<cplx> col(static_cast<std::size_t>(a.dim()));
    for (int r = 0; r < a.dim(); ++r) col[static_cast<std::size_t>(r)] = svd.v(r, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

int nullity(const ComplexMatrix& a, double sigma_threshold) {
  const auto sv = singular_values(a);
  int k = 0;
  for (double s : sv)
    if (s <= sigma_threshold) ++k;
  return k;
}

namespace {

// Givens parameters with G * (a, b)^T = (r, 0)^T,
// G = [[conj(a)/r, conj(b)/r], [-b/r, a/r]].
struct Givens {
  cplx a, b;
  double r;
};

Givens make_givens(cplx a, cplx b) {
  const double r = std::hypot(std::abs(a), std::abs(b));
  return {a, b, r};
}

void apply_givens_rows(ComplexMatrix& h, const Givens& g, int i, int c0,
                       int c1) {
  if (g.r == 0.0) return;
  const cplx ga = g.a / g.r, gb = g.b / g.r;
  for (int c = c0; c <= c1; ++c) {
    const cplx x = h(i, c), y = h(i + 1, c);
    h(i, c) = std::conj(ga) * x + std::conj(gb) * y;
    h(i + 1, c) = -gb * x + ga * y;
  }
}

void apply_givens_cols(ComplexMatrix& h, const Givens& g, int i, int r0,
                       int r1) {
  if (g.r == 0.0) return;
  const cplx ga = g.a / g.r, gb = g.b / g.r;
  for (int r = r0; r <= r1; ++r) {
    const cplx x = h(r, i), y = h(r, i + 1);
    h(r, i) = x * ga + y * gb;
    h(r, i + 1) = -x * std::conj(gb) + y * std::conj(ga);
  }
}

void hessenberg_reduce(ComplexMatrix& h, ComplexMatrix& q) {
  const int n = h.dim();
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0, 0.0);
    const cplx alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = h(i, k);
      if (i == k + 1) v[static_cast<std::size_t>(i)] -= alpha;
      vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // left: h <- (I - beta v v*) h on rows k+1..n-1
    for (int c = k; c < n; ++c) {
      cplx s = 0.0;
      for (int i = k + 1; i < n; ++i)
        s += std::conj(v[static_cast<std::size_t>(i)]) * h(i, c);
      s *= beta;
      for (int i = k + 1; i < n; ++i) h(i, c) -= s * v[static_cast<std::size_t>(i)];
    }
    // right: h <- h (I - beta v v*) on columns k+1..n-1
    for (int r = 0; r < n; ++r) {
      cplx s = 0.0;
      for (int i = k + 1; i < n; ++i)
        s += h(r, i) * v[static_cast<std::size_t>(i)];
      s *= beta;
      for (int i = k + 1; i < n; ++i)
        h(r, i) -= s * std::conj(v[static_cast<std::size_t>(i)]);
    }
    for (int r = 0; r < n; ++r) {
      cplx s = 0.0;
      for (int i = k + 1; i < n; ++i)
        s += q(r, i) * v[static_cast<std::size_t>(i)];
      s *= beta;
      for (int i = k + 1; i < n; ++i)
        q(r, i) -= s * std::conj(v[static_cast<std::size_t>(i)]);
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

cplx wilkinson_shift(const ComplexMatrix& h, int hi) {
  const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
  const cplx c = h(hi, hi - 1), d = h(hi, hi);
  const cplx mid = 0.5 * (a + d);
  const cplx disc = std::sqrt(mid * mid - (a * d - b * c));
  const cplx l1 = mid + disc, l2 = mid - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

Schur complex_schur(const ComplexMatrix& a) {
  const int n = a.dim();
  Schur s{a, ComplexMatrix::identity(n)};
  if (n == 1) return s;
  ComplexMatrix& h = s.t;
  ComplexMatrix& q = s.q;
  hessenberg_reduce(h, q);

  const double scale = std::max(a.inf_norm(), 1e-300);
  const double defl = 1e-13 * scale;
  std::vector<Givens> rot(static_cast<std::size_t>(n));

  int hi = n - 1;
  int stagnation = 0;
  long total = 0;
  const long budget = 60L * n + 200;
  while (hi > 0) {
    if (std::abs(h(hi, hi - 1)) <= defl) {
      h(hi, hi - 1) = 0.0;
      --hi;
      stagnation = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && std::abs(h(lo, lo - 1)) > defl) --lo;
    if (lo > 0) h(lo, lo - 1) = 0.0;

    if (++total > budget)
      fail(ErrorCode::NoConvergence, "qr iteration budget exhausted");

    cplx sigma;
    if (++stagnation % 16 == 0)
      sigma = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    else
      sigma = wilkinson_shift(h, hi);

    for (int i = lo; i <= hi; ++i) h(i, i) -= sigma;
    for (int i = lo; i < hi; ++i) {
      rot[static_cast<std::size_t>(i)] = make_givens(h(i, i), h(i + 1, i));
      apply_givens_rows(h, rot[static_cast<std::size_t>(i)], i, i, n - 1);
    }
    for (int i = lo; i < hi; ++i) {
      apply_givens_cols(h, rot[static_cast<std::size_t>(i)], i, 0,
                        std::min(i + 1, hi));
      apply_givens_cols(q, rot[static_cast<std::size_t>(i)], i, 0, n - 1);
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += sigma;
  }

  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c) h(r, c) = 0.0;
  return s;
}

std::vector<cplx> general_eigenvalues(const ComplexMatrix& a) {
  const Schur s = complex_schur(a);
  std::vector<cplx> ev(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) ev[static_cast<std::size_t>(i)] = s.t(i, i);
  return ev;
}

std::vector<cplx> schur_eigenvector(const Schur& s, int index) {
  const int n = s.t.dim();
  if (index < 0 || index >= n)
    fail(ErrorCode::InvalidArgument, "eigenvector index out of range");
  const cplx lambda = s.t(index, index);
  const double smin = kEps * std::max(s.t.max_abs(), 1e-300);
  std::vector<cplx> x(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  x[static_cast<std::size_t>(index)] = 1.0;
  for (int i = index - 1; i >= 0; --i) {
    cplx acc = 0.0;
    for (int k = i + 1; k <= index; ++k)
      acc += s.t(i, k) * x[static_cast<std::size_t>(k)];
    cplx piv = s.t(i, i) - lambda;
    if (std::abs(piv) < smin) piv = smin;
    x[static_cast<std::size_t>(i)] = -acc / piv;
    const double mag = std::abs(x[static_cast<std::size_t>(i)]);
    if (mag > 1e100) {
      const double inv = 1.0 / mag;
      for (int k = i; k <= index; ++k) x[static_cast<std::size_t>(k)] *= inv;
    }
  }
  std::vector<cplx> out(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  for (int r = 0; r < n; ++r) {
    cplx acc = 0.0;
    for (int k = 0; k <= index; ++k) acc += s.q(r, k) * x[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(r)] = acc;
  }
  const double norm = vec_norm(out);
  if (norm > 0.0)
    for (auto& e : out) e /= norm;
  return out;
}

Lu lu_factor(ComplexMatrix a) {
  const int n = a.dim();
  Lu f{std::move(a), std::vector<int>(static_cast<std::size_t>(n)), false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  ComplexMatrix& m = f.m;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(m(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      std::swap(f.perm[static_cast<std::size_t>(k)],
                f.perm[static_cast<std::size_t>(piv)]);
    }
    if (std::abs(m(k, k)) < 1e-300) {
      m(k, k) = 1e-300;
      f.singular = true;
    }
    const cplx inv = 1.0 / m(k, k);
    for (int i = k + 1; i < n; ++i) {
      m(i, k) *= inv;
      const cplx l = m(i, k);
      if (l == cplx(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

std::vector<cplx> lu_solve(const Lu& f, std::span<const cplx> b) {
  const int n = f.m.dim();
  std::vector<cplx> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(f.perm[static_cast<std::size_t>(i)])];
  for (int i = 1; i < n; ++i) {
    cplx acc = x[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) acc -= f.m(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx acc = x[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= f.m(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc / f.m(i, i);
  }
  return x;
}

ComplexMatrix lu_solve(const Lu& f, const ComplexMatrix& b) {
  const int n = b.dim();
  ComplexMatrix x(n);
  std::vector<cplx> col(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = b(r, c);
    const auto sol = lu_solve(f, col);
    for (int r = 0; r < n; ++r) x(r, c) = sol[static_cast<std::size_t>(r)];
  }
  return x;
}

std::vector<std::vector<cplx>> pivoted_orthonormal_basis(
    std::vector<std::vector<cplx>> vectors, double threshold) {
  std::vector<std::vector<cplx>> basis;
  while (!vectors.empty()) {
    std::size_t best = 0;
    double best_norm = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const double n = vec_norm(vectors[i]);
      if (n > best_norm) {
        best_norm = n;
        best = i;
      }
    }
    if (best_norm <= threshold) break;
    std::vector<cplx> q = std::move(vectors[best]);
    vectors.erase(vectors.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& e : q) e /= best_norm;
    // re-orthogonalize against the accepted basis twice for stability
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const cplx c = vec_dot(b, q);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] -= c * b[i];
      }
      const double n = vec_norm(q);
      if (n <= threshold) {
        q.clear();
        break;
      }
      for (auto& e : q) e /= n;
    }
    if (q.empty()) continue;
    for (auto& rest : vectors) {
      const cplx c = vec_dot(q, rest);
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= c * q[i];
    }
    basis.push_back(std::move(q));
  }
  return basis;
}

}  // namespace pfmaps
