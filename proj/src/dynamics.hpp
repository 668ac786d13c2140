#pragma once

#include "spectral.hpp"

namespace pfmaps {

struct Trajectory {
  std::vector<double> times;  // step indices for discrete runs
  std::vector<ComplexMatrix> states;
  std::vector<double> distances;  // to the limit, in the relevant norm
  std::vector<double> bounds;     // semigroup decay bound; empty for discrete
  ComplexMatrix limit;
};

/// States phi^k(A0), k = 0..n_steps, with trace-norm distances to
/// tr(A0) * fixed_point(phi).
Trajectory iterate(const KrausChannel& phi, const ComplexMatrix& a0,
                   int n_steps);

/// exp(t (phi - ||phi||_2)) applied to B over the grid, for a self-adjoint
/// ergodic channel; distances are Hilbert-Schmidt distances to <A,B>_2 A
/// with A the unit Perron-Frobenius vector, and bounds[i] is
/// exp(-t (sigma1 - sigma2)) ||B||_2.
Trajectory semigroup_evolve(const KrausChannel& phi, const ComplexMatrix& b,
                            std::span<const double> t_grid);

struct RateCheck {
  double measured_slope = 0.0;  // least-squares slope of log distance (tail)
  double gap = 0.0;             // sigma1 - sigma2
  bool bound_satisfied = false;
  double worst_slack = 0.0;  // min over grid of bound - distance
};

/// Verifies the exponential decay bound on the grid and fits the tail rate.
RateCheck rate_check(const KrausChannel& phi, const ComplexMatrix& b,
                     std::span<const double> t_grid);

}  // namespace pfmaps
