#include "verify.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "constructors.hpp"
#include "rng.hpp"
#include "serialize.hpp"

namespace pfmaps {

namespace {

const std::array<double, 5> kOrders{1.0, 1.5, 2.0, 3.0, kSchattenInf};
const std::array<double, 4> kFiniteOrders{1.0, 1.5, 2.0, 3.0};

ComplexMatrix random_gaussian(int d, Rng& rng) {
  ComplexMatrix m(d);
  for (auto& x : m.data()) x = rng.complex_gaussian();
  return m;
}

ComplexMatrix random_hermitian(int d, Rng& rng) {
  return random_gaussian(d, rng).hermitian_part();
}

// Square of a Gaussian Hermitian draw; one trial in ten gets its smallest
// eigenvalue clamped to zero so boundary ranks are exercised.
ComplexMatrix random_psd(int d, Rng& rng) {
  const ComplexMatrix h = random_hermitian(d, rng);
  ComplexMatrix p = h * h;
  if (rng.uniform() < 0.1 && d > 1) {
    const HermitianEigen eig = jacobi_hermitian(p);
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        cplx acc = 0.0;
        for (int k = 1; k < d; ++k)  // drop the smallest eigenvalue
          acc += eig.eigenvectors(r, k) *
                 eig.eigenvalues[static_cast<std::size_t>(k)] *
                 std::conj(eig.eigenvectors(c, k));
        out(r, c) = acc;
      }
    return out;
  }
  return p;
}

KrausChannel random_cp(int d, Rng& rng) {
  const int k = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d * d));
  KrausChannel phi = random_channel(d, k, rng.next_u64());
  // Random positive scale: the bounds under test need 2-positivity only,
  // not trace preservation.
  const double scale = std::sqrt(0.5 + 1.5 * rng.uniform());
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.kraus().size());
  for (const auto& op : phi.kraus()) ops.push_back(cplx(scale, 0.0) * op);
  return KrausChannel(d, std::move(ops));
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  std::vector<std::vector<cplx>> cols(static_cast<std::size_t>(d));
  for (auto& col : cols) {
    col.resize(static_cast<std::size_t>(d));
    for (auto& x : col) x = rng.complex_gaussian();
  }
  const auto basis = pivoted_orthonormal_basis(std::move(cols), 1e-12);
  ComplexMatrix u(d);
  for (int c = 0; c < d && c < static_cast<int>(basis.size()); ++c)
    for (int r = 0; r < d; ++r)
      u(r, c) = basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  return u;
}

double quadratic_form(const ComplexMatrix& m, std::span<const cplx> v) {
  return vec_dot(v, mat_vec(m, v)).real();
}

// Each trial returns the margin and, when asked, a witness description.
using TrialFn = std::function<double(int dim, Rng rng, json* witness)>;

struct PropertySpec {
  std::string name;
  double required_margin;
  TrialFn trial;
};

double star_commutation_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_gaussian(d, rng);
  const double resid =
      (apply(phi, a.adjoint()) - apply(phi, a).adjoint()).max_abs();
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return -resid;
}

double abs_domination_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_hermitian(d, rng);
  const ComplexMatrix gap =
      apply(phi, abs_op(a)) - abs_op(apply(phi, a));
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return min_eigenvalue(gap.hermitian_part());
}

double part_bounds_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_hermitian(d, rng);
  const auto [ap, an] = pos_neg_parts(a);
  const auto [fp, fn] = pos_neg_parts(apply(phi, a).hermitian_part());
  const double m1 = min_eigenvalue((apply(phi, ap) - fp).hermitian_part());
  const double m2 = min_eigenvalue((apply(phi, an) - fn).hermitian_part());
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return std::min(m1, m2);
}

// Schatten-norm domination ||phi(A)||_p <= ||phi(|A|)||_p. The operator-order
// form checked by abs_domination_trial fails for completely positive maps
// (see the 2x2 counterexample pinned in the tests); this form is the one the
// spectral theory rests on and it holds for every p.
double abs_domination_norms_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_hermitian(d, rng);
  const ComplexMatrix fa = apply(phi, a);
  const ComplexMatrix fabs = apply(phi, abs_op(a));
  double margin = std::numeric_limits<double>::infinity();
  for (const double p : kOrders)
    margin = std::min(margin, schatten_norm(fabs, p) - schatten_norm(fa, p));
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return margin;
}

// ||phi(A)_pm||_p <= ||phi(A_pm)||_p; again the norm form of the part
// bounds, which survives where the operator order does not.
double part_bounds_norms_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_hermitian(d, rng);
  const auto [ap, an] = pos_neg_parts(a);
  const auto [fp, fn] = pos_neg_parts(apply(phi, a).hermitian_part());
  const ComplexMatrix fap = apply(phi, ap);
  const ComplexMatrix fan = apply(phi, an);
  double margin = std::numeric_limits<double>::infinity();
  for (const double p : kOrders) {
    margin = std::min(margin, schatten_norm(fap, p) - schatten_norm(fp, p));
    margin = std::min(margin, schatten_norm(fan, p) - schatten_norm(fn, p));
  }
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return margin;
}

double norm_monotonicity_trial(int d, Rng rng, json* w) {
  const ComplexMatrix b = random_psd(d, rng);
  const ComplexMatrix bp = b + random_psd(d, rng);
  double margin = std::numeric_limits<double>::infinity();
  for (const double p : kOrders)
    margin = std::min(margin, schatten_norm(bp, p) - schatten_norm(b, p));
  if (w) *w = {{"b", matrix_to_json(b)}, {"b_prime", matrix_to_json(bp)}};
  return margin;
}

double holder_trial(int d, Rng rng, json* w) {
  const ComplexMatrix a = random_gaussian(d, rng);
  const ComplexMatrix b = random_gaussian(d, rng);
  const double pairing = std::abs((a.adjoint() * b).trace());
  double margin = std::numeric_limits<double>::infinity();
  for (const double p : kOrders) {
    const double q = p == kSchattenInf ? 1.0
                     : p == 1.0        ? kSchattenInf
                                       : p / (p - 1.0);
    margin = std::min(margin,
                      schatten_norm(a, q) * schatten_norm(b, p) - pairing);
  }
  if (w) *w = {{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}};
  return margin;
}

double strict_cone_trial(int d, Rng rng, json* w) {
  ComplexMatrix b = random_psd(d, rng);
  b += cplx(0.1, 0.0) * ComplexMatrix::identity(d);
  ComplexMatrix bp = random_psd(d, rng);
  const auto v = rng.unit_vector(d);
  bp += cplx(0.1, 0.0) * outer_product(v, v);
  double margin = std::numeric_limits<double>::infinity();
  for (const double p : kFiniteOrders)
    margin = std::min(margin,
                      schatten_norm(b + bp, p) - schatten_norm(b - bp, p));
  if (w) *w = {{"b", matrix_to_json(b)}, {"b_prime", matrix_to_json(bp)}};
  return margin;
}

double pos40_trial(int d, Rng rng, json* w) {
  const ComplexMatrix a = random_hermitian(d, rng);
  const auto v = rng.unit_vector(d);
  const HermitianEigen eig = jacobi_hermitian(a);
  double margin = std::numeric_limits<double>::infinity();
  std::vector<double> weights(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    cplx overlap = 0.0;
    for (int r = 0; r < d; ++r)
      overlap += std::conj(eig.eigenvectors(r, k)) * v[static_cast<std::size_t>(r)];
    weights[static_cast<std::size_t>(k)] = std::norm(overlap);
  }
  double form = 0.0;
  for (int k = 0; k < d; ++k)
    form += eig.eigenvalues[static_cast<std::size_t>(k)] *
            weights[static_cast<std::size_t>(k)];
  for (const double p : kFiniteOrders) {
    double power_form = 0.0;
    for (int k = 0; k < d; ++k)
      power_form +=
          std::pow(std::abs(eig.eigenvalues[static_cast<std::size_t>(k)]), p) *
          weights[static_cast<std::size_t>(k)];
    margin = std::min(margin, power_form - std::pow(std::abs(form), p));
  }
  if (w) {
    json re = json::array(), im = json::array();
    for (const auto& x : v) {
      re.push_back(x.real());
      im.push_back(x.imag());
    }
    *w = {{"a", matrix_to_json(a)}, {"v_re", re}, {"v_im", im}};
  }
  return margin;
}

double scalar_2pos_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_gaussian(d, rng);
  const PolarParts pp = polar(a);
  const ComplexMatrix rotated = pp.u * pp.abs * pp.u.adjoint();
  const auto v = rng.unit_vector(d);
  const auto u = rng.unit_vector(d);
  const double lhs = std::norm(vec_dot(u, mat_vec(apply(phi, a), v)));
  const double rhs = quadratic_form(apply(phi, pp.abs), v) *
                     quadratic_form(apply(phi, rotated), u);
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return rhs - lhs;
}

double norm_2pos_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_gaussian(d, rng);
  const PolarParts pp = polar(a);
  const ComplexMatrix rotated = pp.u * pp.abs * pp.u.adjoint();
  const ComplexMatrix fa = apply(phi, a);
  const ComplexMatrix fabs = apply(phi, pp.abs);
  const ComplexMatrix frot = apply(phi, rotated);
  double margin = std::numeric_limits<double>::infinity();
  for (const double p : kOrders) {
    const double rhs =
        std::sqrt(schatten_norm(fabs, p) * schatten_norm(frot, p));
    margin = std::min(margin, rhs - schatten_norm(fa, p));
  }
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return margin;
}

double kernel_lemma_trial(int d, Rng rng, json* w) {
  if (d < 2) return 0.0;
  // Channel that kills everything supported outside a proper subspace.
  const int rank = 1 + static_cast<int>(rng.next_u64() %
                                        static_cast<std::uint64_t>(d - 1));
  const ComplexMatrix q = random_unitary(d, rng);
  ComplexMatrix proj(d);
  for (int k = 0; k < rank; ++k)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        proj(r, c) += q(r, k) * std::conj(q(c, k));
  const KrausChannel base = random_cp(d, rng);
  std::vector<ComplexMatrix> ops;
  for (const auto& op : base.kraus()) ops.push_back(op * proj);
  const KrausChannel phi(d, std::move(ops));

  // |A| supported on the complementary subspace, so |A| lies in Ker phi.
  const ComplexMatrix comp = ComplexMatrix::identity(d) - proj;
  const ComplexMatrix s = random_psd(d, rng);
  const ComplexMatrix abs_a = (comp * s * comp).hermitian_part();
  const ComplexMatrix a = random_unitary(d, rng) * abs_a;
  const double image_norm = apply(phi, a).max_abs();
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return -image_norm;
}

double abs_nonhermitian_probe_trial(int d, Rng rng, json* w) {
  const KrausChannel phi = random_cp(d, rng);
  const ComplexMatrix a = random_gaussian(d, rng);
  const ComplexMatrix gap = apply(phi, abs_op(a)) - abs_op(apply(phi, a));
  if (w) *w = {{"channel", channel_to_json(phi)}, {"a", matrix_to_json(a)}};
  return min_eigenvalue(gap.hermitian_part());
}

const std::vector<PropertySpec>& registry() {
  static const std::vector<PropertySpec> specs = {
      {"star_commutation", -1e-10, star_commutation_trial},
      {"abs_domination", -1e-9, abs_domination_trial},
      {"abs_domination_norms", -1e-9, abs_domination_norms_trial},
      {"part_bounds", -1e-9, part_bounds_trial},
      {"part_bounds_norms", -1e-9, part_bounds_norms_trial},
      {"norm_monotonicity", -1e-9, norm_monotonicity_trial},
      {"holder", -1e-9, holder_trial},
      {"strict_cone", 1e-12, strict_cone_trial},
      {"pos40", -1e-9, pos40_trial},
      {"scalar_2pos", -1e-9, scalar_2pos_trial},
      {"norm_2pos", -1e-9, norm_2pos_trial},
      {"kernel_lemma", -1e-9, kernel_lemma_trial},
  };
  return specs;
}

const std::vector<PropertySpec>& probes() {
  static const std::vector<PropertySpec> specs = {
      {"abs_domination_nonhermitian", -1e-9, abs_nonhermitian_probe_trial},
  };
  return specs;
}

PropertyRun run_spec(const PropertySpec& spec, int trials, std::uint64_t seed,
                     std::span<const int> dims, bool asserted) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (dims.empty()) fail(ErrorCode::InvalidArgument, "need at least one dimension");
  for (const int d : dims)
    if (d < 2 || d > 8)
      fail(ErrorCode::InvalidArgument, "property dimensions must lie in [2, 8]");

  PropertyRun run;
  run.property = spec.name;
  run.trials = trials;
  run.seed = seed;
  run.dims.assign(dims.begin(), dims.end());
  run.required_margin = spec.required_margin;
  run.worst_margin = std::numeric_limits<double>::infinity();
  run.asserted = asserted;

  for (int t = 0; t < trials; ++t) {
    const int d = dims[static_cast<std::size_t>(t) % dims.size()];
    const Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    const double margin = spec.trial(d, rng, nullptr);
    run.worst_margin = std::min(run.worst_margin, margin);
    if (margin < spec.required_margin) {
      json witness;
      spec.trial(d, rng, &witness);
      witness["trial"] = t;
      witness["margin"] = margin;
      const std::string text = canonical_dump(witness);
      run.violations.push_back({digest_hex(text), margin, text});
    }
  }
  return run;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& probe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : probes()) out.push_back(s.name);
    return out;
  }();
  return names;
}

PropertyRun run_property(const std::string& name, int trials,
                         std::uint64_t seed, std::span<const int> dims) {
  for (const auto& spec : registry())
    if (spec.name == name) return run_spec(spec, trials, seed, dims, true);
  fail(ErrorCode::UnknownProperty, "no property named '" + name + "'");
}

PropertyRun falsification_probe(const std::string& name, int trials,
                                std::uint64_t seed, std::span<const int> dims) {
  for (const auto& spec : probes())
    if (spec.name == name) return run_spec(spec, trials, seed, dims, false);
  fail(ErrorCode::UnknownProperty, "no probe named '" + name + "'");
}

}  // namespace pfmaps
