#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "constructors.hpp"
#include "doctest.h"
#include "positivity.hpp"
#include "test_support.hpp"

using namespace pfmaps;
using namespace pfmaps::testing;

namespace {

KrausChannel pauli_mixing_channel(double pi, double px, double py, double pz) {
  std::vector<ComplexMatrix> ops{
      cplx(std::sqrt(pi), 0.0) * ComplexMatrix::identity(2),
      cplx(std::sqrt(px), 0.0) * pauli_x(),
      cplx(std::sqrt(py), 0.0) * pauli_y(),
      cplx(std::sqrt(pz), 0.0) * pauli_z()};
  return KrausChannel(2, std::move(ops));
}

}  // namespace

TEST_CASE("spectrum of the basic exhibits") {
  SUBCASE("pinned channel: eigenvalue one and a zero block") {
    const double d[3] = {0.5, 0.3, 0.2};
    const KrausChannel phi =
        pinned_channel(density_from_diagonal(std::span<const double>(d, 3)));
    const SpectralReport rep = spectrum(phi);
    CHECK(rep.radius == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.gap == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.radius_multiplicity == 1);
    CHECK(rep.peripheral.size() == 1);
    for (std::size_t i = 1; i < rep.eigenvalues.size(); ++i)
      CHECK(std::abs(rep.eigenvalues[i]) <= 1e-8);
    CHECK(rep.pf_simple);
    CHECK(rep.pf_positive_definite);
  }
  SUBCASE("diagonal unitary conjugation") {
    const double theta = 0.7;
    ComplexMatrix u(2);
    u(0, 0) = 1.0;
    u(1, 1) = std::exp(cplx(0.0, theta));
    const SpectralReport rep = spectrum(KrausChannel(2, {u}));
    CHECK(rep.radius == doctest::Approx(1.0));
    CHECK(rep.peripheral.size() == 4);
    int ones = 0, plus = 0, minus = 0;
    for (const auto& l : rep.eigenvalues) {
      if (std::abs(l - cplx(1.0, 0.0)) <= 1e-9) ++ones;
      if (std::abs(l - std::exp(cplx(0.0, theta))) <= 1e-9) ++plus;
      if (std::abs(l - std::exp(cplx(0.0, -theta))) <= 1e-9) ++minus;
    }
    CHECK(ones == 2);
    CHECK(plus == 1);
    CHECK(minus == 1);
  }
  SUBCASE("identity channel: every eigenvalue is one") {
    const SpectralReport rep = spectrum(KrausChannel::identity(3));
    for (const auto& l : rep.eigenvalues)
      CHECK(std::abs(l - cplx(1.0, 0.0)) <= 1e-10);
    CHECK(rep.gap == 0.0);
  }
}

TEST_CASE("spectral radius estimates from iterated norms") {
  const auto id_seq = spectral_radius_estimate(KrausChannel::identity(2), 10);
  for (const double a : id_seq) CHECK(a == doctest::Approx(1.0).epsilon(1e-10));

  const double lambda = 0.6;
  const KrausChannel scaled(
      2, {cplx(std::sqrt(lambda), 0.0) * ComplexMatrix::identity(2)});
  const auto sc_seq = spectral_radius_estimate(scaled, 10);
  for (const double a : sc_seq) CHECK(a == doctest::Approx(lambda).epsilon(1e-10));

  const double d[2] = {0.25, 0.75};
  const KrausChannel pinned =
      pinned_channel(density_from_diagonal(std::span<const double>(d, 2)));
  const auto seq = spectral_radius_estimate(pinned, 40);
  CHECK(std::abs(seq.back() - 1.0) <= 0.05);
  const SpectralReport rep = spectrum(pinned);
  CHECK(std::abs(seq.back() - rep.radius) <= 0.05);
}

TEST_CASE("fixed points") {
  SUBCASE("column-constant weights pin the squared weights") {
    const std::vector<double> c{0.6, 0.6, 0.8, 0.8};  // c_ik = c_i
    const KrausChannel phi = weighted_basis_channel(make_weight_matrix(2, c));
    const FixedPointResult fp = fixed_point(phi);
    CHECK(fp.multiplicity == 1);
    CHECK(fp.residual <= 1e-9);
    CHECK(std::abs(fp.rho.matrix(0, 0) - cplx(0.36, 0.0)) <= 1e-10);
    CHECK(std::abs(fp.rho.matrix(1, 1) - cplx(0.64, 0.0)) <= 1e-10);
  }
  SUBCASE("fully mixing Pauli channel fixes the maximally mixed state") {
    const KrausChannel phi = pauli_mixing_channel(0.4, 0.3, 0.2, 0.1);
    const FixedPointResult fp = fixed_point(phi);
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= cplx(0.5, 0.0);
    CHECK((fp.rho.matrix - half).max_abs() <= 1e-10);
  }
  SUBCASE("hand-solvable weights: rho_2 = 2 rho_1") {
    // squared weights [[1/2, 1/4], [1/2, 3/4]]
    const std::vector<double> c{std::sqrt(0.5), std::sqrt(0.25),
                                std::sqrt(0.5), std::sqrt(0.75)};
    const KrausChannel phi = weighted_basis_channel(make_weight_matrix(2, c));
    const FixedPointResult fp = fixed_point(phi);
    CHECK(std::abs(fp.rho.matrix(0, 0) - cplx(1.0 / 3.0, 0.0)) <= 1e-10);
    CHECK(std::abs(fp.rho.matrix(1, 1) - cplx(2.0 / 3.0, 0.0)) <= 1e-10);
  }
  SUBCASE("general weights match the dominant vector of the squared matrix") {
    Rng rng(91);
    for (int trial = 0; trial < 6; ++trial) {
      const int d = 2 + trial % 3;
      std::vector<double> c(static_cast<std::size_t>(d) * d);
      for (int k = 0; k < d; ++k) {
        double col = 0.0;
        for (int i = 0; i < d; ++i) {
          const double w = 0.2 + rng.uniform();
          c[static_cast<std::size_t>(i) * d + k] = w;
          col += w * w;
        }
        for (int i = 0; i < d; ++i)
          c[static_cast<std::size_t>(i) * d + k] /= std::sqrt(col);
      }
      const KrausChannel phi = weighted_basis_channel(make_weight_matrix(d, c));
      const FixedPointResult fp = fixed_point(phi);
      // independent oracle: power iteration on the d x d matrix (c_ik^2)
      std::vector<double> v(static_cast<std::size_t>(d), 1.0 / d);
      for (int it = 0; it < 4000; ++it) {
        std::vector<double> next(static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < d; ++i)
          for (int k = 0; k < d; ++k)
            next[static_cast<std::size_t>(i)] +=
                c[static_cast<std::size_t>(i) * d + k] *
                c[static_cast<std::size_t>(i) * d + k] *
                v[static_cast<std::size_t>(k)];
        double sum = 0.0;
        for (const double x : next) sum += x;
        for (auto& x : next) x /= sum;
        v = std::move(next);
      }
      for (int i = 0; i < d; ++i)
        CHECK(std::abs(fp.rho.matrix(i, i).real() - v[static_cast<std::size_t>(i)]) <=
              1e-8);
      CHECK(fp.residual <= 1e-9);
    }
  }
  SUBCASE("non-trace-preserving input is rejected") {
    const KrausChannel half(2, {cplx(0.5, 0.0) * ComplexMatrix::identity(2)});
    CHECK_THROWS_AS((void)fixed_point(half), Error);
  }
  SUBCASE("pinching has a degenerate fixed space") {
    const KrausChannel phi = projective_channel(
        {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)});
    const FixedPointResult fp = fixed_point(phi);
    CHECK(fp.multiplicity == 2);
    CHECK(fp.residual <= 1e-9);
  }
}

TEST_CASE("peripheral analysis") {
  SUBCASE("ergodic pinned channel: single simple peripheral eigenvalue") {
    const double d[2] = {0.25, 0.75};
    const DensityMatrix rho = density_from_diagonal(std::span<const double>(d, 2));
    const KrausChannel phi = pinned_channel(rho);
    const auto modes = peripheral_analysis(phi);
    REQUIRE(modes.size() == 1);
    CHECK(std::abs(modes[0].eigenvalue - cplx(1.0, 0.0)) <= 1e-9);
    CHECK(modes[0].abs_fixed_residual <= 1e-8);
    CHECK(modes[0].normality_residual <= 1e-8);
    // the eigenvector is rho up to normalization, hence positive definite
    ComplexMatrix scaled = rho.matrix;
    scaled *= cplx(1.0 / rho.matrix.frobenius_norm(), 0.0);
    CHECK((modes[0].eigenvector - scaled).max_abs() <= 1e-8);
  }
  SUBCASE("non-ergodic unitary conjugation: |A| is still fixed") {
    const double theta = 0.9;
    ComplexMatrix u(2);
    u(0, 0) = 1.0;
    u(1, 1) = std::exp(cplx(0.0, theta));
    const KrausChannel phi(2, {u});
    const auto modes = peripheral_analysis(phi);
    REQUIRE(modes.size() == 4);
    bool saw_off_diagonal_mode = false;
    for (const auto& mode : modes) {
      CHECK(mode.eigen_residual <= 1e-8);
      // |A| stays a fixed point even without ergodicity
      CHECK(mode.abs_fixed_residual <= 1e-8);
      if (std::abs(mode.eigenvalue - std::exp(cplx(0.0, -theta))) <= 1e-9) {
        saw_off_diagonal_mode = true;
        // eigenvector E_12 is not normal; recorded, not asserted
        CHECK(mode.normality_residual > 0.5);
      }
    }
    CHECK(saw_off_diagonal_mode);
  }
  SUBCASE("cyclic shift: roots of unity, each |A| a fixed point") {
    std::vector<ComplexMatrix> ops;
    for (int i = 0; i < 3; ++i)
      ops.push_back(ComplexMatrix::unit(3, (i + 1) % 3, i));
    const KrausChannel phi(3, ops);
    CHECK(check_ergodic(phi, 40, 3).pass);
    const auto modes = peripheral_analysis(phi);
    REQUIRE(modes.size() == 3);
    for (const auto& mode : modes) {
      CHECK(std::abs(std::pow(mode.eigenvalue, 3) - cplx(1.0, 0.0)) <= 1e-8);
      CHECK(mode.abs_fixed_residual <= 1e-8);
      CHECK(mode.normality_residual <= 1e-8);  // ergodic: modes stay normal
    }
  }
}

TEST_CASE("radius versus norm") {
  const KrausChannel tp = random_channel(3, 4, 21);
  const RadiusNormCheck c1 = check_radius_equals_norm(tp, 1.0);
  CHECK(c1.radius == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c1.norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c1.equal);

  const double lambda = 1.3;
  const KrausChannel scaled(
      2, {cplx(std::sqrt(lambda), 0.0) * ComplexMatrix::identity(2)});
  const RadiusNormCheck c2 = check_radius_equals_norm(scaled, 2.0);
  CHECK(c2.radius == doctest::Approx(lambda));
  CHECK(c2.norm == doctest::Approx(lambda));
  CHECK(c2.equal);

  // nilpotent channel: radius 0 but norm 1
  const KrausChannel nil(2, {ComplexMatrix::unit(2, 0, 1)});
  const RadiusNormCheck c3 = check_radius_equals_norm(nil, 1.0);
  CHECK(c3.radius <= 1e-9);
  CHECK(c3.norm == doctest::Approx(1.0));
  CHECK_FALSE(c3.equal);
}

TEST_CASE("spectral structure of trace-preserving channels") {
  Rng rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + trial % 3;
    const KrausChannel phi = random_channel(d, 1 + trial % (d * d), 3000 + trial);
    const ComplexMatrix t = transfer_matrix(phi).transfer();
    const SpectralReport rep = spectrum(phi);

    // eigenvalue 1 present, radius 1
    CHECK(rep.trace_preserving);
    CHECK(rep.radius == doctest::Approx(1.0).epsilon(1e-8));
    bool has_one = false;
    for (const auto& l : rep.eigenvalues)
      if (std::abs(l - cplx(1.0, 0.0)) <= 1e-8) has_one = true;
    CHECK(has_one);

    // conjugation symmetry of the spectrum
    for (const auto& l : rep.eigenvalues) {
      double best = 1e9;
      for (const auto& m : rep.eigenvalues)
        best = std::min(best, std::abs(std::conj(l) - m));
      CHECK(best <= 1e-8);
    }

    // real eigenvalues admit Hermitian eigenvectors; traceless off the
    // eigenvalue one
    const Schur s = complex_schur(t);
    for (int j = 0; j < t.dim(); ++j) {
      const cplx lambda = s.t(j, j);
      const auto v = schur_eigenvector(s, j);
      ComplexMatrix a = unvec(v, d);
      if (std::abs(lambda - cplx(1.0, 0.0)) > 1e-6)
        CHECK(std::abs(a.trace()) <= 1e-8 * a.frobenius_norm());
      if (std::abs(lambda.imag()) <= 1e-8) {
        // phase-align, then one of the Hermitian or anti-Hermitian parts is
        // itself an eigenvector
        cplx top = 0.0;
        for (const auto& e : a.data())
          if (std::abs(e) > std::abs(top)) top = e;
        if (std::abs(top) > 0.0) a *= std::conj(top) / std::abs(top);
        const ComplexMatrix h = a.hermitian_part();
        const ComplexMatrix k = a.anti_hermitian_part();
        const ComplexMatrix& cand = h.frobenius_norm() >= k.frobenius_norm() ? h : k;
        const auto cv = vec(cand);
        auto tv = mat_vec(t, cv);
        for (std::size_t i = 0; i < tv.size(); ++i) tv[i] -= lambda * cv[i];
        CHECK(vec_norm(tv) <= 1e-8 * std::max(1.0, cand.frobenius_norm()));
      }
    }
  }
}
