#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "constructors.hpp"
#include "doctest.h"
#include "test_support.hpp"
#include "verify.hpp"

using namespace pfmaps;
using namespace pfmaps::testing;

namespace {
const std::vector<int> kDims{2, 3, 4};
}

TEST_CASE("the registry carries every named property") {
  const auto& names = property_names();
  for (const char* expected :
       {"star_commutation", "abs_domination", "abs_domination_norms",
        "part_bounds", "part_bounds_norms", "norm_monotonicity", "holder",
        "strict_cone", "pos40", "scalar_2pos", "norm_2pos", "kernel_lemma"}) {
    CHECK(std::find(names.begin(), names.end(), std::string(expected)) !=
          names.end());
  }
  CHECK_THROWS_AS((void)run_property("no_such_property", 10, 1, kDims), Error);
}

TEST_CASE("proved inequalities run clean") {
  for (const char* name :
       {"star_commutation", "abs_domination_norms", "part_bounds_norms",
        "norm_monotonicity", "holder", "pos40", "scalar_2pos", "norm_2pos",
        "kernel_lemma"}) {
    const PropertyRun run = run_property(name, 250, 1, kDims);
    CHECK_MESSAGE(run.violations.empty(), name);
    CHECK(run.worst_margin >= run.required_margin);
  }
  const PropertyRun cone = run_property("strict_cone", 250, 1, kDims);
  CHECK(cone.violations.empty());
  CHECK(cone.worst_margin >= 1e-12);
}

TEST_CASE("operator-order forms are refuted, with witnesses recorded") {
  // These margins encode |phi(A)| <= phi(|A|) and phi(A)_pm <= phi(A_pm) in
  // the matrix order; both fail for completely positive maps, so violations
  // are expected and carry reproducible witnesses.
  for (const char* name : {"abs_domination", "part_bounds"}) {
    const PropertyRun run = run_property(name, 400, 1, kDims);
    CHECK_MESSAGE(!run.violations.empty(), name);
    CHECK(run.worst_margin < run.required_margin);
    for (const auto& v : run.violations) {
      CHECK(v.digest.size() == 16);
      CHECK(!v.witness_json.empty());
      CHECK(v.margin < run.required_margin);
    }
  }
}

TEST_CASE("runs are deterministic per seed") {
  const PropertyRun a = run_property("norm_2pos", 120, 9, kDims);
  const PropertyRun b = run_property("norm_2pos", 120, 9, kDims);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.violations.size() == b.violations.size());
  const PropertyRun c = run_property("norm_2pos", 120, 10, kDims);
  CHECK(c.worst_margin != a.worst_margin);
}

TEST_CASE("dimension validation") {
  CHECK_THROWS_AS((void)run_property("holder", 10, 1, std::vector<int>{1}),
                  Error);
  CHECK_THROWS_AS((void)run_property("holder", 10, 1, std::vector<int>{9}),
                  Error);
  CHECK_THROWS_AS((void)run_property("holder", 0, 1, kDims), Error);
}

TEST_CASE("the two-positivity scalar bound degenerates to equality") {
  // A PSD, phi the identity and matching probe vectors: both sides agree.
  Rng rng(19);
  const ComplexMatrix a = random_psd(3, rng);
  const auto v = rng.unit_vector(3);
  const KrausChannel id = KrausChannel::identity(3);
  const PolarParts pp = polar(a);
  const ComplexMatrix rotated = pp.u * pp.abs * pp.u.adjoint();
  const double lhs = std::norm(vec_dot(v, mat_vec(apply(id, a), v)));
  const double rhs = vec_dot(v, mat_vec(apply(id, pp.abs), v)).real() *
                     vec_dot(v, mat_vec(apply(id, rotated), v)).real();
  CHECK(rhs - lhs >= -1e-9);
  CHECK(rhs - lhs <= 1e-6);  // equality up to the kernel-edge round-off
}

TEST_CASE("falsification probe reports without asserting") {
  const auto& names = probe_names();
  REQUIRE(!names.empty());
  const PropertyRun run = falsification_probe(names.front(), 400, 3, kDims);
  CHECK_FALSE(run.asserted);
  CHECK(run.trials == 400);
  // for general (non-Hermitian) inputs the domination gap goes negative;
  // the probe records the sightings as data
  CHECK(run.worst_margin < 0.0);
  CHECK(!run.violations.empty());

  CHECK_THROWS_AS((void)falsification_probe("unknown", 10, 1, kDims), Error);
}

TEST_CASE("probe sanity on hand-computable inputs") {
  // A = E_12 under the identity map: |A| = |phi(A)|, the gap vanishes.
  const ComplexMatrix a = ComplexMatrix::unit(2, 0, 1);
  const KrausChannel id = KrausChannel::identity(2);
  const ComplexMatrix gap = apply(id, abs_op(a)) - abs_op(apply(id, a));
  CHECK(gap.max_abs() <= 1e-12);
}
