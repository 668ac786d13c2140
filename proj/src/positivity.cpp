#include "positivity.hpp"

#include <cmath>

namespace pfmaps {

namespace {

constexpr double kNegativityTol = 1e-9;
constexpr double kImprovingTol = 1e-10;
constexpr double kSpanTol = 1e-10;

std::vector<cplx> basis_vector(int dim, int i) {
  std::vector<cplx> v(static_cast<std::size_t>(dim), cplx(0.0, 0.0));
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

std::vector<cplx> maximally_entangled(int d, int n) {
  const int m = std::min(d, n);
  std::vector<cplx> v(static_cast<std::size_t>(d) * n, cplx(0.0, 0.0));
  const double w = 1.0 / std::sqrt(static_cast<double>(m));
  for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i) * n + i] = w;
  return v;
}

template <typename Map>
Verdict sample_positive(const Map& m, int trials, std::uint64_t seed,
                        const std::vector<std::vector<cplx>>& fixed_inputs) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  Verdict out;
  int done = 0;
  auto probe = [&](const std::vector<cplx>& v) -> bool {
    const ComplexMatrix image = apply(m, outer_product(v, v));
    const double nonherm = (image - image.adjoint()).max_abs();
    const double lmin = min_eigenvalue(image.hermitian_part());
    ++done;
    if (lmin < -kNegativityTol || nonherm > 1e-8) {
      out.pass = false;
      out.witness = Witness{v, lmin};
      return false;
    }
    return true;
  };
  for (const auto& v : fixed_inputs)
    if (!probe(v)) {
      out.trials = done;
      return out;
    }
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    if (!probe(rng.unit_vector(m.dim()))) break;
  }
  out.trials = done;
  return out;
}

}  // namespace

Verdict check_positive(const SuperOperator& m, int trials, std::uint64_t seed) {
  return sample_positive(m, trials, seed, {});
}

Verdict check_positive(const KrausChannel& m, int trials, std::uint64_t seed) {
  (void)m;
  (void)seed;
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  return {};  // Kraus form certifies complete positivity exactly
}

Verdict check_n_positive(const SuperOperator& m, int n, int trials,
                         std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "ancilla dimension must be >= 1");
  const SuperOperator big = tensor_with_identity(m, n);
  return sample_positive(big, trials, seed, {maximally_entangled(m.dim(), n)});
}

Verdict check_n_positive(const KrausChannel& m, int n, int trials,
                         std::uint64_t seed) {
  (void)m;
  (void)seed;
  if (n < 1) fail(ErrorCode::InvalidArgument, "ancilla dimension must be >= 1");
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  return {};
}

Verdict check_positivity_improving(const KrausChannel& phi, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  const int d = phi.dim();
  Verdict out;
  if (phi.kraus_count() < d) {
    // The image of a rank-1 projector has rank at most the family size.
    out.pass = false;
    out.trials = 0;
    out.witness = Witness{basis_vector(d, 0), 0.0};
    return out;
  }
  int done = 0;
  auto probe = [&](const std::vector<cplx>& v) -> bool {
    const double lmin =
        min_eigenvalue(apply(phi, outer_product(v, v)).hermitian_part());
    ++done;
    if (lmin <= kImprovingTol) {
      out.pass = false;
      out.witness = Witness{v, lmin};
      return false;
    }
    return true;
  };
  for (int i = 0; i < d; ++i)
    if (!probe(basis_vector(d, i))) {
      out.trials = done;
      return out;
    }
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    if (!probe(rng.unit_vector(d))) break;
  }
  out.trials = done;
  return out;
}

namespace {

// Dimension of the smallest invariant subspace containing v for the algebra
// generated by the adjoint Kraus operators (with the identity word).
int reachable_span_dim(const KrausChannel& phi, const std::vector<cplx>& v) {
  const int d = phi.dim();
  std::vector<ComplexMatrix> adjoints;
  adjoints.reserve(phi.kraus().size());
  for (const auto& k : phi.kraus()) adjoints.push_back(k.adjoint());

  std::vector<std::vector<cplx>> basis;
  std::vector<std::vector<cplx>> frontier;
  {
    std::vector<cplx> q = v;
    const double n = vec_norm(q);
    if (n == 0.0) return 0;
    for (auto& e : q) e /= n;
    basis.push_back(q);
    frontier.push_back(std::move(q));
  }
  while (!frontier.empty() && static_cast<int>(basis.size()) < d) {
    std::vector<std::vector<cplx>> next;
    for (const auto& q : frontier) {
      for (const auto& a : adjoints) {
        std::vector<cplx> w = mat_vec(a, q);
        if (vec_norm(w) <= 1e-12) continue;
        {
          const double n0 = vec_norm(w);
          for (auto& e : w) e /= n0;
        }
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& b : basis) {
            const cplx c = vec_dot(b, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
          }
        const double rn = vec_norm(w);
        if (rn <= kSpanTol) continue;
        for (auto& e : w) e /= rn;
        basis.push_back(w);
        next.push_back(std::move(w));
        if (static_cast<int>(basis.size()) == d) return d;
      }
    }
    frontier = std::move(next);
  }
  return static_cast<int>(basis.size());
}

}  // namespace

Verdict check_ergodic(const KrausChannel& phi, int trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  const int d = phi.dim();
  Verdict out;
  int done = 0;
  auto probe = [&](const std::vector<cplx>& v) -> bool {
    const int span = reachable_span_dim(phi, v);
    ++done;
    if (span < d) {
      out.pass = false;
      out.witness = Witness{v, static_cast<double>(span)};
      return false;
    }
    return true;
  };
  for (int i = 0; i < d; ++i)
    if (!probe(basis_vector(d, i))) {
      out.trials = done;
      return out;
    }
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    if (!probe(rng.unit_vector(d))) break;
  }
  out.trials = done;
  return out;
}

namespace {

Verdict eh_criterion_impl(const ComplexMatrix& transfer, int dim, int trials,
                          std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  const int n2 = dim * dim;
  ComplexMatrix base = ComplexMatrix::identity(n2) + transfer;
  ComplexMatrix power = ComplexMatrix::identity(n2);
  for (int k = 0; k < dim - 1; ++k) power = power * base;

  Verdict out;
  int done = 0;
  auto probe = [&](const std::vector<cplx>& v) -> bool {
    const ComplexMatrix image =
        unvec(mat_vec(power, vec(outer_product(v, v))), dim);
    const ComplexMatrix h = image.hermitian_part();
    const double lmin = min_eigenvalue(h);
    ++done;
    if (lmin <= kImprovingTol * std::max(1.0, h.max_abs())) {
      out.pass = false;
      out.witness = Witness{v, lmin};
      return false;
    }
    return true;
  };
  for (int i = 0; i < dim; ++i)
    if (!probe(basis_vector(dim, i))) {
      out.trials = done;
      return out;
    }
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    if (!probe(rng.unit_vector(dim))) break;
  }
  out.trials = done;
  return out;
}

}  // namespace

Verdict eh_criterion(const KrausChannel& phi, int trials, std::uint64_t seed) {
  return eh_criterion_impl(transfer_matrix(phi).transfer(), phi.dim(), trials,
                           seed);
}

Verdict eh_criterion(const SuperOperator& phi, int trials, std::uint64_t seed) {
  return eh_criterion_impl(phi.transfer(), phi.dim(), trials, seed);
}

NecessaryChecks necessary_checks(const KrausChannel& phi, int trials,
                                 std::uint64_t seed) {
  const int d = phi.dim();
  NecessaryChecks out;
  out.phi_of_identity_min_eig =
      min_eigenvalue(apply(phi, ComplexMatrix::identity(d)).hermitian_part());

  int done = 0;
  auto probe = [&](const std::vector<cplx>& v) -> bool {
    const ComplexMatrix image = apply(phi, outer_product(v, v));
    ++done;
    if (image.max_abs() <= 1e-10) {
      out.kernel_on_cone_trivial.pass = false;
      out.kernel_on_cone_trivial.witness = Witness{v, image.max_abs()};
      return false;
    }
    return true;
  };
  for (int i = 0; i < d; ++i)
    if (!probe(basis_vector(d, i))) {
      out.kernel_on_cone_trivial.trials = done;
      return out;
    }
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    if (!probe(rng.unit_vector(d))) break;
  }
  out.kernel_on_cone_trivial.trials = done;
  return out;
}

ClassificationReport classify(const KrausChannel& phi, int trials,
                              std::uint64_t seed) {
  ClassificationReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.cp = true;  // Kraus form
  rep.tp_residual = is_trace_preserving(phi, 1e-9).residual;
  rep.positive = check_positive(phi, trials, seed);
  rep.two_positive = check_n_positive(phi, 2, trials, seed);
  rep.positivity_improving =
      check_positivity_improving(phi, trials, Rng::derive(seed, 1));
  rep.ergodic = check_ergodic(phi, trials, Rng::derive(seed, 2));
  const NecessaryChecks nec = necessary_checks(phi, trials, Rng::derive(seed, 3));
  rep.phi_of_identity_min_eig = nec.phi_of_identity_min_eig;
  rep.kernel_on_cone_trivial = nec.kernel_on_cone_trivial;
  // Failed necessary conditions force the ergodic verdict.
  if (!nec.kernel_on_cone_trivial.pass ||
      nec.phi_of_identity_min_eig <= kImprovingTol) {
    if (rep.ergodic.pass) {
      rep.ergodic.pass = false;
      rep.ergodic.witness = nec.kernel_on_cone_trivial.witness;
    }
  }
  return rep;
}

ClassificationReport classify(const SuperOperator& phi, int trials,
                              std::uint64_t seed) {
  ClassificationReport rep;
  rep.trials = trials;
  rep.seed = seed;
  const ChoiMatrix c = choi(phi);
  rep.cp = is_hermitian(c.choi, 1e-8) && min_eigenvalue(c.choi.hermitian_part()) >= -1e-9;
  rep.tp_residual = is_trace_preserving(phi, 1e-9).residual;
  rep.positive = check_positive(phi, trials, seed);
  rep.two_positive = check_n_positive(phi, 2, trials, seed);
  // Without a Kraus family the improving check is the direct sampler and the
  // ergodic check falls back to the polynomial criterion.
  {
    Verdict v;
    int done = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(Rng::derive(Rng::derive(seed, 1), static_cast<std::uint64_t>(t)));
      const auto u = rng.unit_vector(phi.dim());
      const double lmin =
          min_eigenvalue(apply(phi, outer_product(u, u)).hermitian_part());
      ++done;
      if (lmin <= kImprovingTol) {
        v.pass = false;
        v.witness = Witness{u, lmin};
        break;
      }
    }
    v.trials = done;
    rep.positivity_improving = v;
  }
  rep.ergodic = eh_criterion(phi, trials, Rng::derive(seed, 2));
  rep.phi_of_identity_min_eig = min_eigenvalue(
      apply(phi, ComplexMatrix::identity(phi.dim())).hermitian_part());
  {
    Verdict v;
    int done = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(Rng::derive(Rng::derive(seed, 3), static_cast<std::uint64_t>(t)));
      const auto u = rng.unit_vector(phi.dim());
      const ComplexMatrix image = apply(phi, outer_product(u, u));
      ++done;
      if (image.max_abs() <= 1e-10) {
        v.pass = false;
        v.witness = Witness{u, image.max_abs()};
        break;
      }
    }
    v.trials = done;
    rep.kernel_on_cone_trivial = v;
  }
  if (!rep.kernel_on_cone_trivial.pass ||
      rep.phi_of_identity_min_eig <= kImprovingTol) {
    if (rep.ergodic.pass) {
      rep.ergodic.pass = false;
      rep.ergodic.witness = rep.kernel_on_cone_trivial.witness;
    }
  }
  return rep;
}

}  // namespace pfmaps
