#pragma once

#include <cstdint>
#include <string>

#include "channel.hpp"

namespace pfmaps {

struct Violation {
  std::string digest;
  double margin = 0.0;
  std::string witness_json;
};

struct PropertyRun {
  std::string property;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  double required_margin = 0.0;  // a trial violates when margin < this
  double worst_margin = 0.0;
  std::vector<Violation> violations;
  bool asserted = true;  // false for falsification probes
};

/// Registered inequality checks. Margins follow the convention
/// RHS - LHS (or the smallest eigenvalue of RHS - LHS), so proved
/// inequalities must stay above -tolerance.
const std::vector<std::string>& property_names();

/// Runs `trials` seeded random instances of the named check over the given
/// dimensions (cycled per trial). Throws UnknownProperty for a bad name.
PropertyRun run_property(const std::string& name, int trials,
                         std::uint64_t seed, std::span<const int> dims);

/// Observational probes for statements the theory leaves open; nothing is
/// asserted, the worst margin and any negative-margin sightings are recorded.
const std::vector<std::string>& probe_names();
PropertyRun falsification_probe(const std::string& name, int trials,
                                std::uint64_t seed, std::span<const int> dims);

}  // namespace pfmaps
