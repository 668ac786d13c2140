#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "linalg.hpp"
#include "test_support.hpp"

using namespace pfmaps;
using namespace pfmaps::testing;

namespace {

ComplexMatrix reconstruct(const HermitianEigen& eig) {
  const int n = eig.eigenvectors.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.eigenvectors(r, k) *
               eig.eigenvalues[static_cast<std::size_t>(k)] *
               std::conj(eig.eigenvectors(c, k));
      out(r, c) = acc;
    }
  return out;
}

}  // namespace

TEST_CASE("hermitian eigendecomposition: identity and diagonal cases") {
  const auto id = herm_eig(ComplexMatrix::identity(3));
  for (const double l : id.eigenvalues) CHECK(l == doctest::Approx(1.0));

  const double d[2] = {2.0, -1.0};
  const auto diag = herm_eig(ComplexMatrix::diagonal(std::span<const double>(d, 2)));
  CHECK(diag.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(diag.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("hermitian eigendecomposition: reconstruction and orthonormality") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_hermitian(5, rng);
    const auto eig = herm_eig(a);
    CHECK((reconstruct(eig) - a).max_abs() <=
          1e-10 * std::max(1.0, a.max_abs()));
    const ComplexMatrix vtv = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((vtv - ComplexMatrix::identity(5)).max_abs() <= 1e-10);
    for (std::size_t i = 1; i < eig.eigenvalues.size(); ++i)
      CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);
  }
}

TEST_CASE("hermitian eigendecomposition rejects non-Hermitian input") {
  ComplexMatrix a(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS((void)herm_eig(a), Error);
}

TEST_CASE("absolute value of an operator") {
  Rng rng(7);
  const ComplexMatrix p = random_psd(3, rng);
  CHECK((abs_op(p) - p).max_abs() <= 1e-10);

  const ComplexMatrix neg = -ComplexMatrix::identity(3);
  CHECK((abs_op(neg) - ComplexMatrix::identity(3)).max_abs() <= 1e-12);

  ComplexMatrix n(2);
  n(0, 1) = 1.0;
  const ComplexMatrix expected = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
  CHECK((abs_op(n) - expected).max_abs() <= 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_matrix(4, rng);
    const ComplexMatrix abs = abs_op(a);
    CHECK(min_eigenvalue(abs) >= -1e-10);
    CHECK((abs * abs - (a.adjoint() * a)).max_abs() <= 1e-9);
  }
}

TEST_CASE("polar decomposition") {
  Rng rng(17);
  SUBCASE("unitary input") {
    const ComplexMatrix u = random_unitary(3, rng);
    const PolarParts pp = polar(u);
    CHECK((pp.u - u).max_abs() <= 1e-10);
    CHECK((pp.abs - ComplexMatrix::identity(3)).max_abs() <= 1e-10);
  }
  SUBCASE("zero input follows the kernel convention") {
    const PolarParts pp = polar(ComplexMatrix(3));
    CHECK(pp.u.max_abs() <= 1e-12);
    CHECK(pp.abs.max_abs() <= 1e-12);
  }
  SUBCASE("rank-one worked example") {
    ComplexMatrix a(2);
    a(0, 1) = 2.0;
    const PolarParts pp = polar(a);
    CHECK((pp.abs - ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 2.0}})).max_abs() <=
          1e-12);
    CHECK((pp.u - ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})).max_abs() <=
          1e-12);
    CHECK((pp.u * pp.abs - a).max_abs() <= 1e-12);
  }
  SUBCASE("invariants on random and rank-deficient input") {
    for (int trial = 0; trial < 12; ++trial) {
      ComplexMatrix a = random_matrix(4, rng);
      if (trial % 3 == 0) {  // force a kernel
        for (int r = 0; r < 4; ++r) a(r, 0) = a(r, 1);
      }
      const PolarParts pp = polar(a);
      CHECK((pp.u * pp.abs - a).max_abs() <= 1e-10);
      // u vanishes on the kernel of |a| and u* u is the range projector
      const auto eig = herm_eig(pp.abs);
      const double thr = rank_threshold(eig.eigenvalues.back());
      ComplexMatrix pker(4);
      for (int k = 0; k < 4; ++k) {
        if (eig.eigenvalues[static_cast<std::size_t>(k)] > thr) continue;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c)
            pker(r, c) += eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
      }
      CHECK((pp.u * pker).max_abs() <= 1e-10);
      const ComplexMatrix range = ComplexMatrix::identity(4) - pker;
      CHECK((pp.u.adjoint() * pp.u * range - range).max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("Schatten norms") {
  Rng rng(23);
  for (const double p : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(schatten_norm(ComplexMatrix::identity(4), p) ==
          doctest::Approx(std::pow(4.0, 1.0 / p)).epsilon(1e-12));
  }
  const double d[2] = {3.0, -4.0};
  CHECK(schatten_norm(ComplexMatrix::diagonal(std::span<const double>(d, 2)),
                      kSchattenInf) == doctest::Approx(4.0));

  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_matrix(5, rng);
    CHECK(schatten_norm(a, 2.0) ==
          doctest::Approx(a.frobenius_norm()).epsilon(1e-11));
  }

  CHECK_THROWS_AS((void)schatten_norm(ComplexMatrix::identity(2), 0.5), Error);
  CHECK(schatten_norm(ComplexMatrix(3), 1.0) == 0.0);
}

TEST_CASE("positive and negative parts") {
  Rng rng(31);
  const ComplexMatrix p = random_psd(3, rng);
  const auto [pp, pn] = pos_neg_parts(p);
  CHECK((pp - p).max_abs() <= 1e-9);
  CHECK(pn.max_abs() <= 1e-9);

  const double d[2] = {1.0, -2.0};
  const auto [dp, dn] =
      pos_neg_parts(ComplexMatrix::diagonal(std::span<const double>(d, 2)));
  CHECK((dp - ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}})).max_abs() <= 1e-12);
  CHECK((dn - ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 2.0}})).max_abs() <= 1e-12);

  for (int trial = 0; trial < 15; ++trial) {
    const ComplexMatrix a = random_hermitian(4, rng);
    const auto [ap, an] = pos_neg_parts(a);
    CHECK((a - (ap - an)).max_abs() <= 1e-10);
    CHECK((ap * an).max_abs() <= 1e-9);
    CHECK(min_eigenvalue(ap) >= -1e-10);
    CHECK(min_eigenvalue(an) >= -1e-10);
    // the same parts from the absolute-value identity
    const ComplexMatrix abs = abs_op(a);
    CHECK((ap - cplx(0.5, 0.0) * (abs + a)).max_abs() <= 1e-10);
    CHECK((an - cplx(0.5, 0.0) * (abs - a)).max_abs() <= 1e-10);
    for (const double q : {1.0, 2.0, kSchattenInf}) {
      CHECK(schatten_norm(ap, q) <= schatten_norm(a, q) + 1e-9);
      CHECK(schatten_norm(an, q) <= schatten_norm(a, q) + 1e-9);
    }
  }
  CHECK_THROWS_AS((void)pos_neg_parts(ComplexMatrix::unit(2, 0, 1)), Error);
}

TEST_CASE("matrix exponential") {
  CHECK((expm(ComplexMatrix(3)) - ComplexMatrix::identity(3)).max_abs() == 0.0);

  const double d[2] = {1.25, -0.75};
  const ComplexMatrix ed = expm(ComplexMatrix::diagonal(std::span<const double>(d, 2)));
  CHECK(std::abs(ed(0, 0) - std::exp(1.25)) <= 1e-14 * std::exp(1.25));
  CHECK(std::abs(ed(1, 1) - std::exp(-0.75)) <= 1e-14);
  CHECK(std::abs(ed(0, 1)) <= 1e-15);

  ComplexMatrix n(2);
  n(0, 1) = 1.0;
  const ComplexMatrix en = expm(n);
  CHECK((en - ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})).max_abs() <= 1e-14);

  Rng rng(41);
  SUBCASE("agrees with the eigendecomposition route for Hermitian input") {
    for (const double scale : {1.0, 10.0, 60.0}) {
      ComplexMatrix h = random_hermitian(5, rng);
      h *= cplx(scale, 0.0);
      const auto eig = herm_eig(h);
      ComplexMatrix viaeig(5);
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
          cplx acc = 0.0;
          for (int k = 0; k < 5; ++k)
            acc += eig.eigenvectors(r, k) *
                   std::exp(eig.eigenvalues[static_cast<std::size_t>(k)]) *
                   std::conj(eig.eigenvectors(c, k));
          viaeig(r, c) = acc;
        }
      const ComplexMatrix got = expm(h);
      CHECK((got - viaeig).max_abs() <= 1e-9 * viaeig.max_abs());
    }
  }
  SUBCASE("inverse identity") {
    const ComplexMatrix a = random_matrix(6, rng);
    CHECK((expm(a) * expm(-a) - ComplexMatrix::identity(6)).max_abs() <= 1e-12);
  }
  SUBCASE("guard bound") {
    ComplexMatrix big = ComplexMatrix::identity(2);
    big *= cplx(1e3, 0.0);
    CHECK_THROWS_AS((void)expm(big), Error);
  }
}

TEST_CASE("general spectrum") {
  const double d[3] = {1.0, 2.0, 3.0};
  const auto ev = general_spectrum(ComplexMatrix::diagonal(std::span<const double>(d, 3)));
  CHECK(std::abs(ev[0] - cplx(3.0, 0.0)) <= 1e-12);
  CHECK(std::abs(ev[1] - cplx(2.0, 0.0)) <= 1e-12);
  CHECK(std::abs(ev[2] - cplx(1.0, 0.0)) <= 1e-12);

  ComplexMatrix n(2);
  n(0, 1) = 1.0;
  for (const auto& l : general_spectrum(n)) CHECK(std::abs(l) <= 1e-10);

  // companion matrix of z^3 - 1: eigenvalues are the cube roots of unity
  ComplexMatrix c(3);
  c(0, 2) = 1.0;
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  auto roots = general_spectrum(c);
  for (const auto& l : roots) CHECK(std::abs(std::pow(l, 3) - cplx(1.0, 0.0)) <= 1e-9);

  Rng rng(59);
  SUBCASE("Schur residuals on random matrices") {
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix a = random_matrix(12, rng);
      const Schur s = complex_schur(a);
      CHECK((s.q * s.t * s.q.adjoint() - a).max_abs() <= 1e-11 * a.max_abs());
      for (int j = 0; j < 12; ++j) {
        const auto v = schur_eigenvector(s, j);
        auto mv = mat_vec(a, v);
        for (std::size_t i = 0; i < mv.size(); ++i)
          mv[i] -= s.t(j, j) * v[i];
        CHECK(vec_norm(mv) <= 1e-8 * a.inf_norm());
      }
    }
  }
}

TEST_CASE("norm identities and scalar inequalities") {
  Rng rng(71);
  const double orders[5] = {1.0, 1.5, 2.0, 3.0, kSchattenInf};

  SUBCASE("||A||_p = |||A|||_p = ||A*||_p") {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = random_matrix(4, rng);
      const ComplexMatrix abs = abs_op(a);
      const ComplexMatrix adj = a.adjoint();
      for (const double p : orders) {
        const double base = schatten_norm(a, p);
        CHECK(schatten_norm(abs, p) == doctest::Approx(base).epsilon(1e-9));
        CHECK(schatten_norm(adj, p) == doctest::Approx(base).epsilon(1e-9));
      }
    }
  }

  SUBCASE("Hoelder pairing bound") {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = random_matrix(3, rng);
      const ComplexMatrix b = random_matrix(3, rng);
      const double pairing = std::abs((a.adjoint() * b).trace());
      for (const double p : orders) {
        const double q = p == kSchattenInf ? 1.0
                         : p == 1.0        ? kSchattenInf
                                           : p / (p - 1.0);
        CHECK(pairing <= schatten_norm(a, q) * schatten_norm(b, p) + 1e-9);
      }
    }
  }

  SUBCASE("quadratic form power bound") {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = random_hermitian(3, rng);
      const auto v = rng.unit_vector(3);
      const double form = vec_dot(v, mat_vec(a, v)).real();
      const auto eig = herm_eig(a);
      for (const double p : {1.0, 1.5, 2.0, 3.0}) {
        double rhs = 0.0;
        for (int k = 0; k < 3; ++k) {
          cplx overlap = 0.0;
          for (int r = 0; r < 3; ++r)
            overlap += std::conj(eig.eigenvectors(r, k)) * v[static_cast<std::size_t>(r)];
          rhs += std::pow(std::abs(eig.eigenvalues[static_cast<std::size_t>(k)]), p) *
                 std::norm(overlap);
        }
        CHECK(std::pow(std::abs(form), p) <= rhs + 1e-9);
      }
    }
  }

  SUBCASE("norm monotonicity on the positive cone") {
    for (int trial = 0; trial < 30; ++trial) {
      const ComplexMatrix b = random_psd(4, rng);
      const ComplexMatrix bp = b + random_psd(4, rng);
      for (const double p : orders)
        CHECK(schatten_norm(b, p) <= schatten_norm(bp, p) + 1e-9);
    }
  }

  SUBCASE("strict cone inequality away from the boundary") {
    for (int trial = 0; trial < 30; ++trial) {
      ComplexMatrix b = random_psd(3, rng);
      b += cplx(0.1, 0.0) * ComplexMatrix::identity(3);
      ComplexMatrix bp = random_psd(3, rng);
      const auto v = rng.unit_vector(3);
      bp += cplx(0.1, 0.0) * outer_product(v, v);
      for (const double p : {1.0, 1.5, 2.0, 3.0})
        CHECK(schatten_norm(b + bp, p) - schatten_norm(b - bp, p) >= 1e-12);
    }
  }
}
