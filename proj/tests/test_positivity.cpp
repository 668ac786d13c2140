#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "constructors.hpp"
#include "doctest.h"
#include "positivity.hpp"
#include "test_support.hpp"

using namespace pfmaps;
using namespace pfmaps::testing;

namespace {

SuperOperator traceless_shift_map(int d) {
  // A -> A - tr(A) I
  ComplexMatrix t = ComplexMatrix::identity(d * d);
  const auto vi = vec(ComplexMatrix::identity(d));
  for (int r = 0; r < d * d; ++r)
    for (int c = 0; c < d * d; ++c)
      t(r, c) -= vi[static_cast<std::size_t>(r)] *
                 std::conj(vi[static_cast<std::size_t>(c)]);
  return SuperOperator(d, std::move(t));
}

KrausChannel cyclic_shift_channel(int d) {
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < d; ++i)
    ops.push_back(ComplexMatrix::unit(d, (i + 1) % d, i));
  return KrausChannel(d, std::move(ops));
}

}  // namespace

TEST_CASE("positivity sampler") {
  SUBCASE("Kraus channels short-circuit") {
    const KrausChannel phi = random_channel(3, 2, 1);
    const Verdict v = check_positive(phi, 100, 1);
    CHECK(v.pass);
    CHECK(v.trials == 0);
  }
  SUBCASE("the transpose map is positive") {
    const Verdict v = check_positive(SuperOperator::transpose_map(2), 1000, 2);
    CHECK(v.pass);
    CHECK(v.trials == 1000);
  }
  SUBCASE("A - tr(A) I is refuted with a witness") {
    const Verdict v = check_positive(traceless_shift_map(2), 1000, 3);
    CHECK_FALSE(v.pass);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value <= -0.9);  // output eigenvalue -1 on any projector
  }
}

TEST_CASE("n-positivity sampler") {
  SUBCASE("CP channels pass for every ancilla") {
    const KrausChannel phi = random_channel(2, 3, 4);
    CHECK(check_n_positive(phi, 2, 50, 1).pass);
    CHECK(check_n_positive(phi, 7, 50, 1).pass);
  }
  SUBCASE("transpose is refuted at n = 2 by the entangled input") {
    const Verdict v = check_n_positive(SuperOperator::transpose_map(2), 2, 50, 1);
    CHECK_FALSE(v.pass);
    REQUIRE(v.witness.has_value());
    // the first probe is the maximally entangled vector
    CHECK(v.trials == 1);
    CHECK(v.witness->value == doctest::Approx(-0.5));
  }
  SUBCASE("the identity map passes at n = 7") {
    CHECK(check_n_positive(SuperOperator::identity(2), 7, 30, 1).pass);
  }
}

TEST_CASE("positivity improving sampler") {
  SUBCASE("pinned channels with positive definite targets improve") {
    const double d[3] = {0.5, 0.3, 0.2};
    const KrausChannel phi =
        pinned_channel(density_from_diagonal(std::span<const double>(d, 3)));
    CHECK(check_positivity_improving(phi, 50, 1).pass);
  }
  SUBCASE("unitary channels never improve") {
    Rng rng(2);
    const KrausChannel phi(3, {random_unitary(3, rng)});
    const Verdict v = check_positivity_improving(phi, 50, 1);
    CHECK_FALSE(v.pass);
    CHECK(v.trials == 0);  // exact finite-family refutation
  }
  SUBCASE("the diagonal pinching is refuted with the first basis vector") {
    const KrausChannel phi = projective_channel(
        {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)});
    const Verdict v = check_positivity_improving(phi, 50, 1);
    CHECK_FALSE(v.pass);
    REQUIRE(v.witness.has_value());
    CHECK(std::abs(v.witness->vector[0] - cplx(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(v.witness->vector[1]) <= 1e-12);
  }
}

TEST_CASE("ergodicity via the adjoint-family algebra") {
  SUBCASE("pinched decompositions are never ergodic") {
    const KrausChannel phi = projective_channel(
        {ComplexMatrix::unit(3, 0, 0),
         ComplexMatrix::unit(3, 1, 1) + ComplexMatrix::unit(3, 2, 2)});
    const Verdict v = check_ergodic(phi, 50, 1);
    CHECK_FALSE(v.pass);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value < 3.0);  // the reachable span stalls
  }
  SUBCASE("pinned channels are ergodic") {
    const double d[2] = {0.25, 0.75};
    const KrausChannel phi =
        pinned_channel(density_from_diagonal(std::span<const double>(d, 2)));
    CHECK(check_ergodic(phi, 50, 1).pass);
  }
  SUBCASE("the local update channel is ergodic") {
    const double d[4] = {0.4, 0.3, 0.2, 0.1};
    const KrausChannel phi = local_update_channel(std::span<const double>(d, 4));
    CHECK(check_ergodic(phi, 50, 1).pass);
  }
  SUBCASE("the cyclic shift is ergodic but not improving") {
    const KrausChannel phi = cyclic_shift_channel(3);
    CHECK(check_ergodic(phi, 50, 1).pass);
    CHECK_FALSE(check_positivity_improving(phi, 50, 1).pass);
  }
  SUBCASE("deterministic given channel, seed and trials") {
    const KrausChannel phi = random_channel(3, 2, 77);
    const Verdict a = check_ergodic(phi, 25, 42);
    const Verdict b = check_ergodic(phi, 25, 42);
    CHECK(a.pass == b.pass);
    CHECK(a.trials == b.trials);
  }
}

TEST_CASE("polynomial positivity criterion matches ergodicity") {
  const double d2[2] = {0.25, 0.75};
  const KrausChannel pinned =
      pinned_channel(density_from_diagonal(std::span<const double>(d2, 2)));
  CHECK(eh_criterion(pinned, 50, 1).pass);

  const KrausChannel proj = projective_channel(
      {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)});
  CHECK_FALSE(eh_criterion(proj, 50, 1).pass);

  // diagonal unitary: diagonal projectors stay diagonal
  ComplexMatrix u(2);
  u(0, 0) = 1.0;
  u(1, 1) = std::exp(cplx(0.0, 1.0));
  CHECK_FALSE(eh_criterion(KrausChannel(2, {u}), 50, 1).pass);

  SUBCASE("agreement with the algebraic check across a mixed corpus") {
    std::vector<KrausChannel> corpus;
    corpus.push_back(pinned);
    corpus.push_back(proj);
    corpus.push_back(cyclic_shift_channel(3));
    const double d4[4] = {0.4, 0.3, 0.2, 0.1};
    corpus.push_back(local_update_channel(std::span<const double>(d4, 4)));
    corpus.push_back(
        group_average_channel({ComplexMatrix::identity(2), pauli_z()}));
    corpus.push_back(group_average_channel(
        {ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()}));
    for (int s = 0; s < 12; ++s)
      corpus.push_back(random_channel(2 + s % 3, 1 + s % 4, 1000 + s));
    for (const auto& phi : corpus)
      CHECK(check_ergodic(phi, 40, 9).pass == eh_criterion(phi, 40, 9).pass);
  }
}

TEST_CASE("necessary conditions for ergodicity") {
  SUBCASE("a single matrix-unit family has singular phi(I)") {
    const KrausChannel phi(2, {ComplexMatrix::unit(2, 0, 0)});
    const NecessaryChecks nec = necessary_checks(phi);
    CHECK(nec.phi_of_identity_min_eig <= 1e-12);
    const ClassificationReport rep = classify(phi, 50, 1);
    CHECK_FALSE(rep.ergodic.pass);
  }
  SUBCASE("trace-preserving channels keep the cone kernel trivial") {
    const KrausChannel phi = random_channel(3, 4, 5);
    CHECK(necessary_checks(phi).kernel_on_cone_trivial.pass);
  }
  SUBCASE("the converse fails: phi(I) = I yet not ergodic") {
    const KrausChannel phi = projective_channel(
        {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)});
    const NecessaryChecks nec = necessary_checks(phi);
    CHECK(nec.phi_of_identity_min_eig == doctest::Approx(1.0));
    CHECK(nec.kernel_on_cone_trivial.pass);
    CHECK_FALSE(check_ergodic(phi, 50, 1).pass);
  }
}

TEST_CASE("classification reports respect the implication lattice") {
  std::vector<KrausChannel> corpus;
  corpus.push_back(random_channel(2, 4, 1));
  corpus.push_back(random_channel(3, 2, 2));
  corpus.push_back(cyclic_shift_channel(3));
  corpus.push_back(projective_channel(
      {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)}));
  const double d3[3] = {0.2, 0.3, 0.5};
  corpus.push_back(pinned_channel(density_from_diagonal(std::span<const double>(d3, 3))));
  Rng rng(8);
  corpus.push_back(KrausChannel(3, {random_unitary(3, rng)}));

  for (const auto& phi : corpus) {
    const ClassificationReport rep = classify(phi, 60, 11);
    CHECK(rep.cp);
    // CP implies every sampled positivity level passes
    CHECK(rep.positive.pass);
    CHECK(rep.two_positive.pass);
    // improving implies ergodic
    if (rep.positivity_improving.pass) CHECK(rep.ergodic.pass);
    // ergodic implies both necessary checks
    if (rep.ergodic.pass) {
      CHECK(rep.kernel_on_cone_trivial.pass);
      CHECK(rep.phi_of_identity_min_eig > 0.0);
    }
  }

  SUBCASE("superoperator route: transpose") {
    const ClassificationReport rep =
        classify(SuperOperator::transpose_map(2), 200, 13);
    CHECK_FALSE(rep.cp);
    CHECK(rep.positive.pass);
    CHECK_FALSE(rep.two_positive.pass);
    CHECK(rep.tp_residual <= 1e-12);
  }
}
