#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "positivity.hpp"
#include "spectral.hpp"

namespace pfmaps {

using json = nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json channel_to_json(const KrausChannel& phi);
json superoperator_to_json(const SuperOperator& phi);

/// A map file holds either {"dim", "kraus": [...]} or {"dim", "transfer": ...}.
struct ParsedMap {
  std::optional<KrausChannel> channel;
  std::optional<SuperOperator> super;
  int dim = 0;
};
ParsedMap map_from_json(const json& j);
ParsedMap map_from_string(const std::string& text);

/// Density matrix from a full matrix object or the {"diag": [...]} shorthand.
DensityMatrix density_from_json(const json& j);

json verdict_to_json(const Verdict& v);
json classification_to_json(const ClassificationReport& rep);
json spectral_to_json(const SpectralReport& rep);

/// Canonical text form: sorted keys, shortest round-trip numbers.
std::string canonical_dump(const json& j);

std::uint64_t fnv1a64(std::string_view text);
std::string digest_hex(std::string_view text);

}  // namespace pfmaps
