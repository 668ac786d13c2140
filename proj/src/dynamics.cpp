#include "dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "positivity.hpp"

namespace pfmaps {

Trajectory iterate(const KrausChannel& phi, const ComplexMatrix& a0,
                   int n_steps) {
  if (n_steps < 0) fail(ErrorCode::InvalidArgument, "n_steps must be >= 0");
  if (!is_trace_preserving(phi, 1e-8).trace_preserving)
    fail(ErrorCode::NotTracePreserving, "iteration needs a trace-preserving channel");
  if (a0.dim() != phi.dim())
    fail(ErrorCode::DimMismatch, "state dimension differs from channel");

  Trajectory out;
  out.limit = a0.trace() * fixed_point(phi).rho.matrix;
  out.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.states.push_back(a0);
  for (int k = 0; k < n_steps; ++k) out.states.push_back(apply(phi, out.states.back()));
  for (int k = 0; k <= n_steps; ++k) {
    out.times.push_back(static_cast<double>(k));
    out.distances.push_back(
        trace_norm(out.states[static_cast<std::size_t>(k)] - out.limit));
  }
  return out;
}

namespace {

struct SemigroupSetup {
  ComplexMatrix generator;  // T - sigma1 * I
  ComplexMatrix pf_vector;  // unit Hilbert-Schmidt norm, positive definite
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

SemigroupSetup prepare_semigroup(const KrausChannel& phi) {
  const int d = phi.dim();
  const ComplexMatrix t = transfer_matrix(phi).transfer();
  if ((t - t.adjoint()).max_abs() > 1e-8)
    fail(ErrorCode::NotSelfAdjointMap,
         "semigroup evolution needs a self-adjoint map (transfer matrix not Hermitian)");
  if (!check_ergodic(phi, 50, 0x5e).pass)
    fail(ErrorCode::NotErgodic, "semigroup evolution needs an ergodic channel");

  const double norm2 = norm_two(phi);
  const auto eig = jacobi_hermitian(t);
  const double sigma1 = eig.eigenvalues.back();
  const double sigma2 = eig.eigenvalues[eig.eigenvalues.size() - 2];
  if (std::abs(norm2 - sigma1) > 1e-8)
    fail(ErrorCode::NotSelfAdjointMap,
         "largest singular value and top eigenvalue disagree");

  SemigroupSetup setup;
  setup.sigma1 = sigma1;
  setup.sigma2 = sigma2;
  setup.generator = t - cplx(norm2, 0.0) * ComplexMatrix::identity(d * d);
  ComplexMatrix pf = fixed_point(phi).rho.matrix;
  pf *= cplx(1.0 / pf.frobenius_norm(), 0.0);
  setup.pf_vector = std::move(pf);
  return setup;
}

}  // namespace

Trajectory semigroup_evolve(const KrausChannel& phi, const ComplexMatrix& b,
                            std::span<const double> t_grid) {
  if (b.dim() != phi.dim())
    fail(ErrorCode::DimMismatch, "state dimension differs from channel");
  const SemigroupSetup setup = prepare_semigroup(phi);
  const ComplexMatrix& a = setup.pf_vector;
  const cplx overlap = (a.adjoint() * b).trace();  // <A, B>_2
  const ComplexMatrix limit = overlap * a;
  const double bnorm = b.frobenius_norm();
  const double gap = setup.sigma1 - setup.sigma2;

  Trajectory out;
  out.limit = limit;
  const auto vb = vec(b);
  for (const double t : t_grid) {
    if (t < 0.0) fail(ErrorCode::InvalidArgument, "time grid must be nonnegative");
    ComplexMatrix propagator = setup.generator;
    propagator *= cplx(t, 0.0);
    const ComplexMatrix state = unvec(mat_vec(expm(propagator), vb), phi.dim());
    out.times.push_back(t);
    out.distances.push_back((state - limit).frobenius_norm());
    out.bounds.push_back(std::exp(-t * gap) * bnorm);
    out.states.push_back(state);
  }
  return out;
}

RateCheck rate_check(const KrausChannel& phi, const ComplexMatrix& b,
                     std::span<const double> t_grid) {
  const Trajectory traj = semigroup_evolve(phi, b, t_grid);
  const SemigroupSetup setup = prepare_semigroup(phi);

  RateCheck out;
  out.gap = setup.sigma1 - setup.sigma2;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.distances.size(); ++i)
    out.worst_slack =
        std::min(out.worst_slack, traj.bounds[i] - traj.distances[i]);
  out.bound_satisfied = out.worst_slack >= -1e-9;

  // Least-squares slope of log(distance) over the tail half of the grid,
  // skipping points at numerical zero.
  std::vector<double> ts, ys;
  for (std::size_t i = traj.times.size() / 2; i < traj.times.size(); ++i) {
    if (traj.distances[i] <= 1e-12) continue;
    ts.push_back(traj.times[i]);
    ys.push_back(std::log(traj.distances[i]));
  }
  if (ts.size() >= 2) {
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      mt += ts[i];
      my += ys[i];
    }
    mt /= static_cast<double>(ts.size());
    my /= static_cast<double>(ts.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      num += (ts[i] - mt) * (ys[i] - my);
      den += (ts[i] - mt) * (ts[i] - mt);
    }
    out.measured_slope = den > 0.0 ? num / den : 0.0;
  }
  return out;
}

}  // namespace pfmaps
