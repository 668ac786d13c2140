#pragma once

#include <optional>

#include "channel.hpp"

namespace pfmaps {

/// Positive semidefinite, trace-one matrix.
struct DensityMatrix {
  ComplexMatrix matrix;
};

/// Throws BadDensity unless `m` is Hermitian, PSD within 1e-10 and has unit
/// trace within 1e-10.
DensityMatrix make_density(const ComplexMatrix& m);
DensityMatrix density_from_diagonal(std::span<const double> diag);

struct SpectralReport {
  std::vector<cplx> eigenvalues;  // moduli descending
  double radius = 0.0;
  std::vector<cplx> peripheral;   // |lambda| >= radius - 1e-8
  double gap = 0.0;               // 0 when every eigenvalue is peripheral
  int radius_multiplicity = 0;    // eigenvalues within 1e-8 of the radius point
  std::optional<DensityMatrix> fixed_point;  // TP channels only
  int fixed_point_multiplicity = 0;          // nullity of T - I
  double fixed_point_residual = 0.0;         // ||phi(rho) - rho||_1
  bool pf_simple = false;
  bool pf_positive_definite = false;
  double pf_min_eig = 0.0;
  bool trace_preserving = false;
};

SpectralReport spectrum(const KrausChannel& phi, double tp_tol = 1e-8);
SpectralReport spectrum(const SuperOperator& phi, double tp_tol = 1e-8);

/// The sequence ||phi^n||_2^(1/n), n = 1..n_max; tends to the spectral
/// radius.
std::vector<double> spectral_radius_estimate(const KrausChannel& phi,
                                             int n_max);

struct FixedPointResult {
  DensityMatrix rho;
  int multiplicity = 1;  // > 1 carries the non-uniqueness warning
  double residual = 0.0;
};

/// Invariant density matrix of a trace-preserving channel: power iteration
/// from I/d, with the null space of T - I as fallback and as the
/// multiplicity arbiter.
FixedPointResult fixed_point(const KrausChannel& phi);

struct PeripheralMode {
  cplx eigenvalue;
  ComplexMatrix eigenvector;    // phase-aligned, Hermitized when possible, unit Frobenius norm
  double abs_fixed_residual;    // ||phi(|A|) - r |A|||_1
  double normality_residual;    // max entry of A A* - A* A
  double eigen_residual;        // ||T vec(A) - lambda vec(A)||
};

std::vector<PeripheralMode> peripheral_analysis(const KrausChannel& phi);
std::vector<PeripheralMode> peripheral_analysis(const SuperOperator& phi);

struct RadiusNormCheck {
  double radius = 0.0;
  double norm = 0.0;
  bool equal = false;
};

/// Compares the spectral radius against ||phi||_p for p in {1, 2, inf}.
RadiusNormCheck check_radius_equals_norm(const KrausChannel& phi, double p,
                                         double tol = 1e-8);

}  // namespace pfmaps
