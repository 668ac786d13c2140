#include "serialize.hpp"

#include <cmath>

namespace pfmaps {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::ParseError, what);
}

std::vector<double> real_array(const json& j, const std::string& key,
                               std::size_t expected) {
  require(j.contains(key), "missing field '" + key + "'");
  const json& arr = j.at(key);
  require(arr.is_array(), "field '" + key + "' must be an array");
  require(arr.size() == expected,
          "field '" + key + "' must have " + std::to_string(expected) + " entries");
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& x : arr) {
    require(x.is_number(), "field '" + key + "' must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  require(j.is_object(), "matrix must be a JSON object");
  require(j.contains("dim") && j.at("dim").is_number_integer(),
          "matrix needs an integer 'dim'");
  const int d = j.at("dim").get<int>();
  require(d >= 1, "matrix dimension must be >= 1");
  const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  const auto re = real_array(j, "re", n);
  const auto im = real_array(j, "im", n);
  std::vector<cplx> entries(n);
  for (std::size_t i = 0; i < n; ++i) entries[i] = cplx(re[i], im[i]);
  return ComplexMatrix(d, std::move(entries));
}

json channel_to_json(const KrausChannel& phi) {
  json kraus = json::array();
  for (const auto& k : phi.kraus()) kraus.push_back(matrix_to_json(k));
  return json{{"dim", phi.dim()}, {"kraus", std::move(kraus)}};
}

json superoperator_to_json(const SuperOperator& phi) {
  return json{{"dim", phi.dim()}, {"transfer", matrix_to_json(phi.transfer())}};
}

ParsedMap map_from_json(const json& j) {
  require(j.is_object(), "channel file must hold a JSON object");
  require(j.contains("dim") && j.at("dim").is_number_integer(),
          "channel needs an integer 'dim'");
  const int d = j.at("dim").get<int>();
  require(d >= 1, "channel dimension must be >= 1");
  ParsedMap out;
  out.dim = d;
  if (j.contains("kraus")) {
    const json& arr = j.at("kraus");
    require(arr.is_array() && !arr.empty(),
            "field 'kraus' must be a nonempty array of matrices");
    std::vector<ComplexMatrix> ops;
    ops.reserve(arr.size());
    for (const auto& k : arr) {
      ComplexMatrix m = matrix_from_json(k);
      require(m.dim() == d, "Kraus operator dimension differs from 'dim'");
      ops.push_back(std::move(m));
    }
    out.channel = KrausChannel(d, std::move(ops));
  } else if (j.contains("transfer")) {
    ComplexMatrix t = matrix_from_json(j.at("transfer"));
    require(t.dim() == d * d, "transfer matrix must be dim^2 x dim^2");
    out.super = SuperOperator(d, std::move(t));
  } else {
    require(false, "channel object needs a 'kraus' or 'transfer' field");
  }
  return out;
}

ParsedMap map_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "input is not valid JSON");
  return map_from_json(j);
}

DensityMatrix density_from_json(const json& j) {
  if (j.is_object() && j.contains("diag")) {
    const json& arr = j.at("diag");
    require(arr.is_array() && !arr.empty(), "'diag' must be a nonempty array");
    std::vector<double> diag;
    for (const auto& x : arr) {
      require(x.is_number(), "'diag' must contain numbers");
      diag.push_back(x.get<double>());
    }
    return density_from_diagonal(diag);
  }
  return make_density(matrix_from_json(j));
}

namespace {

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

json witness_to_json(const Witness& w) {
  json re = json::array(), im = json::array();
  for (const auto& x : w.vector) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}, {"value", w.value}};
}

}  // namespace

json verdict_to_json(const Verdict& v) {
  json out{{"verdict", v.pass ? "pass" : "refuted"}, {"trials", v.trials}};
  if (v.witness) out["witness"] = witness_to_json(*v.witness);
  return out;
}

json classification_to_json(const ClassificationReport& rep) {
  return json{{"cp", rep.cp},
              {"tp_residual", rep.tp_residual},
              {"positive", verdict_to_json(rep.positive)},
              {"two_positive", verdict_to_json(rep.two_positive)},
              {"positivity_improving", verdict_to_json(rep.positivity_improving)},
              {"ergodic", verdict_to_json(rep.ergodic)},
              {"phi_of_identity_min_eig", rep.phi_of_identity_min_eig},
              {"kernel_on_cone_trivial", verdict_to_json(rep.kernel_on_cone_trivial)},
              {"trials", rep.trials},
              {"seed", rep.seed}};
}

json spectral_to_json(const SpectralReport& rep) {
  json ev = json::array(), per = json::array();
  for (const auto& l : rep.eigenvalues) ev.push_back(complex_pair(l));
  for (const auto& l : rep.peripheral) per.push_back(complex_pair(l));
  json out{{"eigenvalues", std::move(ev)},
           {"radius", rep.radius},
           {"peripheral", std::move(per)},
           {"gap", rep.gap},
           {"radius_multiplicity", rep.radius_multiplicity},
           {"trace_preserving", rep.trace_preserving}};
  if (rep.fixed_point) {
    out["fixed_point"] = matrix_to_json(rep.fixed_point->matrix);
    out["fixed_point_multiplicity"] = rep.fixed_point_multiplicity;
    out["fixed_point_residual"] = rep.fixed_point_residual;
    out["pf_simple"] = rep.pf_simple;
    out["pf_positive_definite"] = rep.pf_positive_definite;
    out["pf_min_eig"] = rep.pf_min_eig;
  } else {
    out["fixed_point"] = nullptr;
  }
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::string_view text) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(text);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace pfmaps
