#include "pfmaps.h"

#include <cstring>
#include <new>
#include <string>

#include "constructors.hpp"
#include "dynamics.hpp"
#include "serialize.hpp"
#include "verify.hpp"

namespace {

using namespace pfmaps;

constexpr int kDimCap = 16;

thread_local std::string g_last_error;

pfm_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return PFM_ERR_PARSE;
    case ErrorCode::DimLimit:
      return PFM_ERR_DIM_LIMIT;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidOrder:
    case ErrorCode::DimMismatch:
    case ErrorCode::NotPSD:
    case ErrorCode::SingularDensity:
    case ErrorCode::BadWeights:
    case ErrorCode::BadDensity:
    case ErrorCode::NotADecomposition:
    case ErrorCode::NotAGroup:
    case ErrorCode::UnknownProperty:
      return PFM_ERR_INVALID_ARG;
    case ErrorCode::NotHermitian:
    case ErrorCode::NotTracePreserving:
    case ErrorCode::NotSelfAdjointMap:
    case ErrorCode::NotErgodic:
    case ErrorCode::NormExceedsOne:
      return PFM_ERR_PRECONDITION;
    case ErrorCode::NoConvergence:
    case ErrorCode::Overflow:
      return PFM_ERR_NUMERIC;
  }
  return PFM_ERR_INTERNAL;
}

template <typename Fn>
pfm_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PFM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PFM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PFM_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_json(const char* text, const char* what) {
  if (text == nullptr) fail(ErrorCode::ParseError, std::string(what) + " is null");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorCode::ParseError, std::string(what) + " is not valid JSON");
  return j;
}

void check_dim_cap(int dim) {
  if (dim > kDimCap)
    fail(ErrorCode::DimLimit,
         "dimension " + std::to_string(dim) + " exceeds the cap of " +
             std::to_string(kDimCap));
}

std::uint64_t require_seed(const json& options) {
  if (!options.contains("seed") || !options.at("seed").is_number())
    fail(ErrorCode::InvalidArgument,
         "a 'seed' is required; randomness has no wall-clock default");
  return options.at("seed").get<std::uint64_t>();
}

json trajectory_rows(const Trajectory& traj, bool semigroup) {
  json rows = json::array();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    json row{{semigroup ? "t" : "step", traj.times[i]},
             {"distance", traj.distances[i]}};
    if (semigroup) row["bound"] = traj.bounds[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

json property_run_to_json(const PropertyRun& run) {
  json violations = json::array();
  for (const auto& v : run.violations) {
    json witness = json::parse(v.witness_json, nullptr, false);
    violations.push_back({{"digest", v.digest},
                          {"margin", v.margin},
                          {"witness", witness.is_discarded() ? json() : witness}});
  }
  return json{{"property", run.property},
              {"trials", run.trials},
              {"seed", run.seed},
              {"dims", run.dims},
              {"required_margin", run.required_margin},
              {"worst_margin", run.worst_margin},
              {"asserted", run.asserted},
              {"violations", std::move(violations)}};
}

ComplexMatrix pauli(int which) {
  switch (which) {
    case 1:
      return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    case 2:
      return ComplexMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
    default:
      return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  }
}

KrausChannel construct_from_params(const json& p) {
  if (!p.is_object() || !p.contains("kind") || !p.at("kind").is_string())
    fail(ErrorCode::ParseError, "construction parameters need a 'kind'");
  const std::string kind = p.at("kind").get<std::string>();

  if (kind == "pinned") {
    if (!p.contains("rho"))
      fail(ErrorCode::InvalidArgument, "pinned construction needs 'rho'");
    const DensityMatrix rho = density_from_json(p.at("rho"));
    check_dim_cap(rho.matrix.dim());
    return pinned_channel(rho);
  }
  if (kind == "weighted") {
    if (p.contains("ci")) {
      const auto ci = p.at("ci").get<std::vector<double>>();
      const int d = static_cast<int>(ci.size());
      check_dim_cap(d);
      std::vector<double> c(static_cast<std::size_t>(d) * d);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
          c[static_cast<std::size_t>(i) * d + k] = ci[static_cast<std::size_t>(i)];
      return weighted_basis_channel(make_weight_matrix(d, std::move(c)));
    }
    if (!p.contains("dim") || !p.contains("c"))
      fail(ErrorCode::InvalidArgument, "weighted construction needs 'dim' and 'c'");
    const int d = p.at("dim").get<int>();
    check_dim_cap(d);
    return weighted_basis_channel(
        make_weight_matrix(d, p.at("c").get<std::vector<double>>()));
  }
  if (kind == "local") {
    if (!p.contains("diag"))
      fail(ErrorCode::InvalidArgument, "local construction needs 'diag'");
    const auto diag = p.at("diag").get<std::vector<double>>();
    check_dim_cap(static_cast<int>(diag.size()));
    return local_update_channel(diag);
  }
  if (kind == "projective") {
    if (p.contains("ranks")) {
      if (!p.contains("dim"))
        fail(ErrorCode::InvalidArgument, "projective ranks need a 'dim'");
      const int d = p.at("dim").get<int>();
      check_dim_cap(d);
      const auto ranks = p.at("ranks").get<std::vector<int>>();
      std::vector<ComplexMatrix> projections;
      int offset = 0;
      for (const int r : ranks) {
        if (r < 1) fail(ErrorCode::InvalidArgument, "ranks must be positive");
        ComplexMatrix proj(d);
        for (int i = 0; i < r; ++i) {
          if (offset + i >= d)
            fail(ErrorCode::InvalidArgument, "ranks exceed the dimension");
          proj(offset + i, offset + i) = 1.0;
        }
        offset += r;
        projections.push_back(std::move(proj));
      }
      if (offset != d)
        fail(ErrorCode::NotADecomposition, "ranks must sum to the dimension");
      return projective_channel(projections);
    }
    if (!p.contains("projections"))
      fail(ErrorCode::InvalidArgument,
           "projective construction needs 'ranks' or 'projections'");
    std::vector<ComplexMatrix> projections;
    for (const auto& m : p.at("projections"))
      projections.push_back(matrix_from_json(m));
    if (!projections.empty()) check_dim_cap(projections.front().dim());
    return projective_channel(projections);
  }
  if (kind == "group") {
    if (p.contains("preset")) {
      const std::string preset = p.at("preset").get<std::string>();
      if (preset == "pauli")
        return group_average_channel(
            {ComplexMatrix::identity(2), pauli(1), pauli(2), pauli(3)});
      if (preset == "iz")
        return group_average_channel({ComplexMatrix::identity(2), pauli(3)});
      if (preset == "trivial") {
        const int d = p.contains("dim") ? p.at("dim").get<int>() : 2;
        check_dim_cap(d);
        return group_average_channel({ComplexMatrix::identity(d)});
      }
      fail(ErrorCode::InvalidArgument, "unknown group preset '" + preset + "'");
    }
    if (!p.contains("unitaries"))
      fail(ErrorCode::InvalidArgument,
           "group construction needs 'unitaries' or 'preset'");
    std::vector<ComplexMatrix> unitaries;
    for (const auto& m : p.at("unitaries"))
      unitaries.push_back(matrix_from_json(m));
    if (!unitaries.empty()) check_dim_cap(unitaries.front().dim());
    return group_average_channel(unitaries);
  }
  if (kind == "random") {
    if (!p.contains("dim") || !p.contains("kraus"))
      fail(ErrorCode::InvalidArgument, "random construction needs 'dim' and 'kraus'");
    const int d = p.at("dim").get<int>();
    check_dim_cap(d);
    return random_channel(d, p.at("kraus").get<int>(), require_seed(p));
  }
  fail(ErrorCode::InvalidArgument, "unknown construction kind '" + kind + "'");
}

}  // namespace

struct pfm_channel {
  pfmaps::ParsedMap map;
};

extern "C" {

pfm_status pfm_channel_from_json(const char* json_text, pfm_channel** out) {
  return guarded([&] {
    if (out == nullptr) fail(ErrorCode::InvalidArgument, "output pointer is null");
    const json j = parse_json(json_text, "channel");
    ParsedMap map = map_from_json(j);
    check_dim_cap(map.dim);
    *out = new pfm_channel{std::move(map)};
  });
}

pfm_status pfm_channel_construct(const char* params_json, pfm_channel** out) {
  return guarded([&] {
    if (out == nullptr) fail(ErrorCode::InvalidArgument, "output pointer is null");
    const json p = parse_json(params_json, "parameters");
    KrausChannel phi = construct_from_params(p);
    ParsedMap map;
    map.dim = phi.dim();
    map.channel = std::move(phi);
    *out = new pfm_channel{std::move(map)};
  });
}

void pfm_channel_free(pfm_channel* ch) { delete ch; }

int pfm_channel_dim(const pfm_channel* ch) { return ch ? ch->map.dim : 0; }

int pfm_channel_kraus_count(const pfm_channel* ch) {
  return ch && ch->map.channel ? ch->map.channel->kraus_count() : 0;
}

pfm_status pfm_channel_to_json(const pfm_channel* ch, char** out_json) {
  return guarded([&] {
    if (ch == nullptr || out_json == nullptr)
      fail(ErrorCode::InvalidArgument, "null argument");
    const json j = ch->map.channel ? channel_to_json(*ch->map.channel)
                                   : superoperator_to_json(*ch->map.super);
    *out_json = copy_string(canonical_dump(j));
  });
}

pfm_status pfm_analyze(const pfm_channel* ch, const char* options_json,
                       char** out_json) {
  return guarded([&] {
    if (ch == nullptr || out_json == nullptr)
      fail(ErrorCode::InvalidArgument, "null argument");
    const json options = parse_json(options_json, "options");
    const int trials = options.value("trials", 1000);
    const std::uint64_t seed = require_seed(options);
    const ClassificationReport cls =
        ch->map.channel ? classify(*ch->map.channel, trials, seed)
                        : classify(*ch->map.super, trials, seed);
    const double tol = options.value("tol", 1e-8);
    const SpectralReport spec = ch->map.channel
                                    ? spectrum(*ch->map.channel, tol)
                                    : spectrum(*ch->map.super, tol);
    const json j{{"classification", classification_to_json(cls)},
                 {"spectral", spectral_to_json(spec)}};
    *out_json = copy_string(canonical_dump(j));
  });
}

pfm_status pfm_spectrum(const pfm_channel* ch, const char* options_json,
                        char** out_json) {
  return guarded([&] {
    if (ch == nullptr || out_json == nullptr)
      fail(ErrorCode::InvalidArgument, "null argument");
    double tol = 1e-8;
    if (options_json != nullptr) {
      const json options = parse_json(options_json, "options");
      tol = options.value("tol", 1e-8);
    }
    const SpectralReport spec = ch->map.channel
                                    ? spectrum(*ch->map.channel, tol)
                                    : spectrum(*ch->map.super, tol);
    *out_json = copy_string(canonical_dump(spectral_to_json(spec)));
  });
}

pfm_status pfm_evolve(const pfm_channel* ch, const char* options_json,
                      char** out_json) {
  return guarded([&] {
    if (ch == nullptr || out_json == nullptr)
      fail(ErrorCode::InvalidArgument, "null argument");
    if (!ch->map.channel)
      fail(ErrorCode::NotTracePreserving,
           "evolution needs a Kraus channel, not a bare transfer matrix");
    const json options = parse_json(options_json, "options");
    const std::string mode = options.value("mode", "discrete");
    if (!options.contains("initial"))
      fail(ErrorCode::InvalidArgument, "evolution needs an 'initial' matrix");
    const ComplexMatrix b = matrix_from_json(options.at("initial"));

    json out;
    if (mode == "discrete") {
      const int steps = options.value("steps", 20);
      if (steps < 0) fail(ErrorCode::InvalidArgument, "steps must be >= 0");
      const Trajectory traj = iterate(*ch->map.channel, b, steps);
      out = json{{"mode", "discrete"},
                 {"limit", matrix_to_json(traj.limit)},
                 {"rows", trajectory_rows(traj, false)}};
    } else if (mode == "semigroup") {
      std::vector<double> grid;
      if (options.contains("t_grid"))
        grid = options.at("t_grid").get<std::vector<double>>();
      else
        for (int i = 0; i < 50; ++i) grid.push_back(0.2 * i);
      const Trajectory traj = semigroup_evolve(*ch->map.channel, b, grid);
      const RateCheck rc = rate_check(*ch->map.channel, b, grid);
      out = json{{"mode", "semigroup"},
                 {"limit", matrix_to_json(traj.limit)},
                 {"rows", trajectory_rows(traj, true)},
                 {"gap", rc.gap},
                 {"measured_slope", rc.measured_slope},
                 {"bound_satisfied", rc.bound_satisfied},
                 {"worst_slack", rc.worst_slack}};
    } else {
      fail(ErrorCode::InvalidArgument, "mode must be 'discrete' or 'semigroup'");
    }
    *out_json = copy_string(canonical_dump(out));
  });
}

pfm_status pfm_verify(const char* options_json, char** out_json) {
  return guarded([&] {
    if (out_json == nullptr) fail(ErrorCode::InvalidArgument, "null argument");
    const json options = parse_json(options_json, "options");
    const int trials = options.value("trials", 1000);
    const std::uint64_t seed = require_seed(options);
    std::vector<int> dims = options.value("dims", std::vector<int>{2, 3, 4, 5});

    std::vector<std::string> names;
    if (!options.contains("properties") ||
        (options.at("properties").is_string() &&
         options.at("properties").get<std::string>() == "all")) {
      names = property_names();
    } else if (options.at("properties").is_array()) {
      names = options.at("properties").get<std::vector<std::string>>();
    } else {
      names.push_back(options.at("properties").get<std::string>());
    }

    bool ok = true;
    json runs = json::array();
    for (const auto& name : names) {
      const PropertyRun run = run_property(name, trials, seed, dims);
      ok = ok && run.violations.empty();
      runs.push_back(property_run_to_json(run));
    }
    json probes = json::array();
    if (options.value("probes", false)) {
      for (const auto& name : probe_names())
        probes.push_back(
            property_run_to_json(falsification_probe(name, trials, seed, dims)));
    }
    const json out{{"ok", ok}, {"runs", std::move(runs)}, {"probes", std::move(probes)}};
    *out_json = copy_string(canonical_dump(out));
  });
}

void pfm_string_free(char* text) { delete[] text; }

const char* pfm_last_error(void) { return g_last_error.c_str(); }

const char* pfm_version(void) { return "pfmaps 1.0.0"; }

}  // extern "C"
