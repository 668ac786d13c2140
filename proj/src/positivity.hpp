#pragma once

#include <cstdint>
#include <optional>

#include "channel.hpp"
#include "rng.hpp"

namespace pfmaps {

/// Refuting input of a sampled positivity-type check.
struct Witness {
  std::vector<cplx> vector;
  double value = 0.0;  // offending minimum eigenvalue (or reached span size)
};

/// Outcome of a refutation-complete sampler: `pass` is probabilistic,
/// refutation is exact. trials == 0 marks an exact short-circuit.
struct Verdict {
  bool pass = true;
  int trials = 0;
  std::optional<Witness> witness;
};

/// Samples Haar-random rank-1 projectors and checks the output stays PSD.
Verdict check_positive(const SuperOperator& m, int trials, std::uint64_t seed);
Verdict check_positive(const KrausChannel& m, int trials, std::uint64_t seed);

/// Positivity of m tensor I_n, probed with rank-1 inputs on the enlarged
/// space; the maximally entangled vector is always tried first.
Verdict check_n_positive(const SuperOperator& m, int n, int trials,
                         std::uint64_t seed);
Verdict check_n_positive(const KrausChannel& m, int n, int trials,
                         std::uint64_t seed);

/// phi(|v><v|) positive definite for every sampled unit v. Fewer Kraus
/// operators than dim forces an exact refutation (rank of the image).
Verdict check_positivity_improving(const KrausChannel& phi, int trials,
                                   std::uint64_t seed);

/// Cyclicity of every sampled vector for the (non-star) algebra generated by
/// the adjoint Kraus operators; refuted when the reachable span stalls below
/// the full dimension.
Verdict check_ergodic(const KrausChannel& phi, int trials, std::uint64_t seed);

/// (1 + phi)^(dim-1) applied to rank-1 projectors must be positive definite;
/// agrees with check_ergodic at finite dimension.
Verdict eh_criterion(const KrausChannel& phi, int trials, std::uint64_t seed);
Verdict eh_criterion(const SuperOperator& phi, int trials, std::uint64_t seed);

struct NecessaryChecks {
  Verdict kernel_on_cone_trivial;
  double phi_of_identity_min_eig = 0.0;
};
/// Necessary conditions for ergodicity: no PSD input may map to zero, and
/// phi(I) must be positive definite.
NecessaryChecks necessary_checks(const KrausChannel& phi, int trials = 64,
                                 std::uint64_t seed = 0x6b);

struct ClassificationReport {
  bool cp = false;
  double tp_residual = 0.0;
  Verdict positive;
  Verdict two_positive;
  Verdict positivity_improving;
  Verdict ergodic;
  double phi_of_identity_min_eig = 0.0;
  Verdict kernel_on_cone_trivial;
  int trials = 0;
  std::uint64_t seed = 0;
};

ClassificationReport classify(const KrausChannel& phi, int trials,
                              std::uint64_t seed);
ClassificationReport classify(const SuperOperator& phi, int trials,
                              std::uint64_t seed);

}  // namespace pfmaps
