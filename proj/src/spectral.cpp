#include "spectral.hpp"

#include <algorithm>
#include <cmath>

namespace pfmaps {

namespace {

constexpr double kPeripheralTol = 1e-8;
constexpr double kNullityTol = 1e-8;

void fill_eigen_fields(SpectralReport& rep, const ComplexMatrix& transfer) {
  rep.eigenvalues = general_spectrum(transfer);
  rep.radius = std::abs(rep.eigenvalues.front());
  double next = 0.0;
  for (const auto& l : rep.eigenvalues) {
    const double m = std::abs(l);
    if (m >= rep.radius - kPeripheralTol)
      rep.peripheral.push_back(l);
    else
      next = std::max(next, m);
  }
  rep.gap = rep.peripheral.size() == rep.eigenvalues.size()
                ? 0.0
                : rep.radius - next;
  rep.radius_multiplicity = 0;
  for (const auto& l : rep.eigenvalues)
    if (std::abs(l - cplx(rep.radius, 0.0)) <= kPeripheralTol)
      ++rep.radius_multiplicity;
}

}  // namespace

DensityMatrix make_density(const ComplexMatrix& m) {
  if (!is_hermitian(m, 1e-10))
    fail(ErrorCode::BadDensity, "density matrix must be Hermitian");
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > 1e-10)
    fail(ErrorCode::BadDensity, "density matrix must have unit trace");
  if (min_eigenvalue(m.hermitian_part()) < -1e-10)
    fail(ErrorCode::BadDensity, "density matrix must be positive semidefinite");
  return {m.hermitian_part()};
}

DensityMatrix density_from_diagonal(std::span<const double> diag) {
  return make_density(ComplexMatrix::diagonal(diag));
}

SpectralReport spectrum(const SuperOperator& phi, double tp_tol) {
  SpectralReport rep;
  fill_eigen_fields(rep, phi.transfer());
  rep.trace_preserving = is_trace_preserving(phi, tp_tol).trace_preserving;
  return rep;
}

SpectralReport spectrum(const KrausChannel& phi, double tp_tol) {
  const SuperOperator t = transfer_matrix(phi);
  SpectralReport rep;
  fill_eigen_fields(rep, t.transfer());
  rep.trace_preserving = is_trace_preserving(phi, tp_tol).trace_preserving;
  if (rep.trace_preserving) {
    const FixedPointResult fp = fixed_point(phi);
    rep.fixed_point = fp.rho;
    rep.fixed_point_multiplicity = fp.multiplicity;
    rep.fixed_point_residual = fp.residual;
    rep.pf_simple = fp.multiplicity == 1;
    rep.pf_min_eig = min_eigenvalue(fp.rho.matrix);
    rep.pf_positive_definite = rep.pf_min_eig > 0.0;
  }
  return rep;
}

std::vector<double> spectral_radius_estimate(const KrausChannel& phi,
                                             int n_max) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
  const ComplexMatrix t = transfer_matrix(phi).transfer();
  std::vector<double> seq;
  seq.reserve(static_cast<std::size_t>(n_max));
  ComplexMatrix power = ComplexMatrix::identity(t.dim());
  double log_scale = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    power = power * t;
    const double mag = power.max_abs();
    if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
      power *= cplx(1.0 / mag, 0.0);
      log_scale += std::log(mag);
    }
    const double sigma = singular_values(power).front();
    seq.push_back(std::exp((std::log(std::max(sigma, 1e-300)) + log_scale) /
                           static_cast<double>(n)));
  }
  return seq;
}

FixedPointResult fixed_point(const KrausChannel& phi) {
  const TraceCheck tc = is_trace_preserving(phi, 1e-8);
  if (!tc.trace_preserving)
    fail(ErrorCode::NotTracePreserving,
         "fixed point is defined for trace-preserving channels");
  const int d = phi.dim();
  const ComplexMatrix t = transfer_matrix(phi).transfer();

  const int multiplicity =
      nullity(t - ComplexMatrix::identity(d * d), kNullityTol);

  ComplexMatrix rho = ComplexMatrix::identity(d);
  rho *= cplx(1.0 / d, 0.0);
  bool converged = false;
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  for (long k = 0; k < 100000; ++k) {
    ComplexMatrix next = apply(phi, rho);
    const cplx tr = next.trace();
    if (std::abs(tr) > 1e-12) next *= cplx(1.0, 0.0) / tr;
    const ComplexMatrix diff = next - rho;
    rho = std::move(next);
    const double fro = diff.frobenius_norm();
    if (fro * sqrt_d <= 1e-12 ||
        (fro <= 1e-12 && trace_norm(diff) <= 1e-12)) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    // Null space of T - I, trace-normalized Hermitian representative.
    const auto basis =
        null_space(t - ComplexMatrix::identity(d * d), kNullityTol);
    ComplexMatrix best;
    double best_trace = 0.0;
    for (const auto& b : basis) {
      const ComplexMatrix cand = unvec(b, d);
      const double tr = std::abs(cand.trace());
      if (tr > best_trace) {
        best_trace = tr;
        best = cand;
      }
    }
    if (best_trace > 1e-10) {
      best *= cplx(1.0, 0.0) / best.trace();
      rho = best.hermitian_part();
    }
  }

  rho = rho.hermitian_part();
  const double residual = trace_norm(apply(phi, rho) - rho);
  FixedPointResult out;
  out.multiplicity = std::max(multiplicity, 1);
  out.residual = residual;
  if (multiplicity == 1) {
    out.rho = make_density(rho);
  } else {
    out.rho = DensityMatrix{rho};  // non-unique; representative only
  }
  return out;
}

namespace {

std::vector<PeripheralMode> peripheral_modes(const ComplexMatrix& transfer,
                                             int dim,
                                             const KrausChannel* kraus,
                                             const SuperOperator* super) {
  const Schur s = complex_schur(transfer);
  const int n = transfer.dim();
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(s.t(i, i)));

  std::vector<PeripheralMode> modes;
  for (int i = 0; i < n; ++i) {
    const cplx lambda = s.t(i, i);
    if (std::abs(lambda) < radius - kPeripheralTol) continue;
    std::vector<cplx> v = schur_eigenvector(s, i);
    ComplexMatrix a = unvec(v, dim);

    // Transfer eigenvectors carry an arbitrary global phase; align it on the
    // largest entry, then keep the Hermitian part when it is dominant.
    cplx top = 0.0;
    for (const auto& e : a.data())
      if (std::abs(e) > std::abs(top)) top = e;
    if (std::abs(top) > 0.0) a *= std::conj(top) / std::abs(top);
    if ((a - a.adjoint()).frobenius_norm() <= 1e-6 * a.frobenius_norm())
      a = a.hermitian_part();
    const double fro = a.frobenius_norm();
    if (fro > 0.0) a *= cplx(1.0 / fro, 0.0);

    PeripheralMode mode;
    mode.eigenvalue = lambda;
    {
      const auto av = vec(a);
      auto tv = mat_vec(transfer, av);
      for (std::size_t k = 0; k < tv.size(); ++k) tv[k] -= lambda * av[k];
      mode.eigen_residual = vec_norm(tv);
    }
    const ComplexMatrix abs_a = abs_op(a);
    const ComplexMatrix image =
        kraus ? apply(*kraus, abs_a) : apply(*super, abs_a);
    mode.abs_fixed_residual = trace_norm(image - cplx(radius, 0.0) * abs_a);
    mode.normality_residual =
        (a * a.adjoint() - a.adjoint() * a).max_abs();
    mode.eigenvector = std::move(a);
    modes.push_back(std::move(mode));
  }
  std::sort(modes.begin(), modes.end(), [](const auto& x, const auto& y) {
    if (std::abs(x.eigenvalue) != std::abs(y.eigenvalue))
      return std::abs(x.eigenvalue) > std::abs(y.eigenvalue);
    return std::arg(x.eigenvalue) < std::arg(y.eigenvalue);
  });
  return modes;
}

}  // namespace

std::vector<PeripheralMode> peripheral_analysis(const KrausChannel& phi) {
  return peripheral_modes(transfer_matrix(phi).transfer(), phi.dim(), &phi,
                          nullptr);
}

std::vector<PeripheralMode> peripheral_analysis(const SuperOperator& phi) {
  return peripheral_modes(phi.transfer(), phi.dim(), nullptr, &phi);
}

RadiusNormCheck check_radius_equals_norm(const KrausChannel& phi, double p,
                                         double tol) {
  RadiusNormCheck out;
  const auto ev = general_spectrum(transfer_matrix(phi).transfer());
  out.radius = std::abs(ev.front());
  if (p == 1.0) {
    out.norm = norm_one(phi);
  } else if (p == 2.0) {
    out.norm = norm_two(phi);
  } else if (p == kSchattenInf) {
    // For positive maps ||phi||_inf = ||phi(I)||_inf.
    out.norm = schatten_norm(apply(phi, ComplexMatrix::identity(phi.dim())),
                             kSchattenInf);
  } else {
    fail(ErrorCode::InvalidOrder, "only p in {1, 2, inf} is supported");
  }
  out.equal = std::abs(out.radius - out.norm) <= tol;
  return out;
}

}  // namespace pfmaps
