// Command-line front end; talks to the library exclusively through the
// public C interface.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfmaps.h"

namespace {

using nlohmann::json;

int fail_with(pfm_status status) {
  std::cerr << "error: " << pfm_last_error() << "\n";
  return static_cast<int>(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    std::exit(1);
  }
  out << text << "\n";
}

struct Handle {
  pfm_channel* ch = nullptr;
  ~Handle() { pfm_channel_free(ch); }
};

struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { pfm_string_free(text); }
};

int load_channel(const std::string& path, Handle& handle) {
  const std::string text = read_file(path);
  const pfm_status st = pfm_channel_from_json(text.c_str(), &handle.ch);
  if (st != PFM_OK) return fail_with(st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pfmaps - positive maps and quantum channels: classification, "
               "spectra, fixed points, dynamics, inequality suite"};
  app.require_subcommand(1);
  app.fallthrough();  // shared flags may follow the subcommand

  std::string out_path;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option("--out", out_path, "write the JSON report to a file")
      ->capture_default_str();
  app.add_option("--tol", tol, "tolerance for trace-preservation verdicts")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for every randomized computation")
      ->each([&](const std::string&) { seed_given = true; });

  auto require_seed = [&]() {
    if (!seed_given) {
      std::cerr << "error: this command uses randomness; --seed is required\n";
      std::exit(4);
    }
  };

  // analyze ---------------------------------------------------------------
  std::string analyze_file;
  int analyze_trials = 1000;
  auto* analyze = app.add_subcommand(
      "analyze", "classification and spectral report for a channel file");
  analyze->add_option("channel", analyze_file, "channel JSON file")->required();
  analyze->add_option("--trials", analyze_trials, "sampler trials")
      ->capture_default_str();

  // construct ---------------------------------------------------------------
  auto* construct =
      app.add_subcommand("construct", "emit one of the named channel families");
  construct->require_subcommand(1);
  std::vector<double> diag_values;
  std::string rho_file;
  auto* c_pinned = construct->add_subcommand(
      "pinned", "channel with action A -> tr(A) rho");
  c_pinned->add_option("--diag", diag_values, "diagonal of rho");
  c_pinned->add_option("--rho-file", rho_file, "full density matrix JSON file");

  int w_dim = 0;
  std::vector<double> w_c, w_ci;
  auto* c_weighted = construct->add_subcommand(
      "weighted", "weighted basis family c_ik |e_i><e_k|");
  c_weighted->add_option("--dim", w_dim, "dimension");
  c_weighted->add_option("--c", w_c, "row-major weights (dim^2 values)");
  c_weighted->add_option("--ci", w_ci, "column-constant weights c_ik = c_i");

  std::vector<double> local_diag;
  auto* c_local = construct->add_subcommand(
      "local", "nearest-neighbour update channel for a diagonal density");
  c_local->add_option("--diag", local_diag, "diagonal entries")->required();

  int p_dim = 0;
  std::vector<int> p_ranks;
  std::string p_file;
  auto* c_proj = construct->add_subcommand(
      "projective", "pinching by a decomposition of unity");
  c_proj->add_option("--dim", p_dim, "dimension");
  c_proj->add_option("--ranks", p_ranks, "block ranks in the standard basis");
  c_proj->add_option("--file", p_file, "JSON file with explicit projections");

  std::string g_preset, g_file;
  int g_dim = 2;
  auto* c_group =
      construct->add_subcommand("group", "average over a finite unitary group");
  c_group->add_option("--preset", g_preset, "pauli | iz | trivial");
  c_group->add_option("--dim", g_dim, "dimension for the trivial preset");
  c_group->add_option("--file", g_file, "JSON file with a list of unitaries");

  int r_dim = 0, r_kraus = 0;
  auto* c_random = construct->add_subcommand(
      "random", "Haar-like trace-preserving channel, deterministic per seed");
  c_random->add_option("--dim", r_dim, "dimension")->required();
  c_random->add_option("--kraus", r_kraus, "number of Kraus operators")
      ->required();

  // spectrum ----------------------------------------------------------------
  std::string spectrum_file;
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "eigenvalues, radius, gap and fixed point of a channel");
  spectrum_cmd->add_option("channel", spectrum_file, "channel JSON file")
      ->required();

  // evolve ------------------------------------------------------------------
  std::string evolve_file, evolve_initial, evolve_mode = "discrete";
  int evolve_steps = 20;
  std::vector<double> t_grid;
  auto* evolve = app.add_subcommand(
      "evolve", "discrete iteration or semigroup trajectory");
  evolve->add_option("channel", evolve_file, "channel JSON file")->required();
  evolve->add_option("--initial", evolve_initial, "initial matrix JSON file")
      ->required();
  evolve->add_option("--mode", evolve_mode, "discrete | semigroup")
      ->capture_default_str();
  evolve->add_option("--steps", evolve_steps, "steps for discrete mode")
      ->capture_default_str();
  evolve->add_option("--t-grid", t_grid, "time grid for semigroup mode");

  // verify ------------------------------------------------------------------
  std::vector<std::string> properties;
  std::vector<int> dims{2, 3, 4, 5};
  int verify_trials = 1000;
  bool probes = false;
  auto* verify = app.add_subcommand(
      "verify", "randomized inequality suite over seeded corpora");
  verify->add_option("--property", properties,
                     "property name (repeatable; default: all)");
  verify->add_option("--trials", verify_trials, "trials per property")
      ->capture_default_str();
  verify->add_option("--dims", dims, "matrix dimensions to cycle through")
      ->capture_default_str();
  verify->add_flag("--probes", probes, "also run the observational probes");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    require_seed();
    Handle h;
    if (const int rc = load_channel(analyze_file, h)) return rc;
    const json options{{"trials", analyze_trials}, {"seed", seed}, {"tol", tol}};
    OwnedString report;
    const pfm_status st =
        pfm_analyze(h.ch, options.dump().c_str(), &report.text);
    if (st != PFM_OK) return fail_with(st);
    emit(report.text, out_path);
    return 0;
  }

  if (construct->parsed()) {
    json params;
    if (c_pinned->parsed()) {
      params["kind"] = "pinned";
      if (!rho_file.empty())
        params["rho"] = json::parse(read_file(rho_file), nullptr, false);
      else
        params["rho"] = json{{"diag", diag_values}};
    } else if (c_weighted->parsed()) {
      params["kind"] = "weighted";
      if (!w_ci.empty()) {
        params["ci"] = w_ci;
      } else {
        params["dim"] = w_dim;
        params["c"] = w_c;
      }
    } else if (c_local->parsed()) {
      params["kind"] = "local";
      params["diag"] = local_diag;
    } else if (c_proj->parsed()) {
      params["kind"] = "projective";
      if (!p_file.empty()) {
        params["projections"] = json::parse(read_file(p_file), nullptr, false);
      } else {
        params["dim"] = p_dim;
        params["ranks"] = p_ranks;
      }
    } else if (c_group->parsed()) {
      params["kind"] = "group";
      if (!g_file.empty()) {
        params["unitaries"] = json::parse(read_file(g_file), nullptr, false);
      } else {
        params["preset"] = g_preset;
        params["dim"] = g_dim;
      }
    } else if (c_random->parsed()) {
      require_seed();
      params["kind"] = "random";
      params["dim"] = r_dim;
      params["kraus"] = r_kraus;
      params["seed"] = seed;
    }
    Handle h;
    pfm_status st = pfm_channel_construct(params.dump().c_str(), &h.ch);
    if (st != PFM_OK) return fail_with(st);
    OwnedString text;
    st = pfm_channel_to_json(h.ch, &text.text);
    if (st != PFM_OK) return fail_with(st);
    emit(text.text, out_path);
    return 0;
  }

  if (spectrum_cmd->parsed()) {
    Handle h;
    if (const int rc = load_channel(spectrum_file, h)) return rc;
    const json options{{"tol", tol}};
    OwnedString report;
    const pfm_status st =
        pfm_spectrum(h.ch, options.dump().c_str(), &report.text);
    if (st != PFM_OK) return fail_with(st);
    emit(report.text, out_path);
    return 0;
  }

  if (evolve->parsed()) {
    Handle h;
    if (const int rc = load_channel(evolve_file, h)) return rc;
    json initial = json::parse(read_file(evolve_initial), nullptr, false);
    if (initial.is_discarded()) {
      std::cerr << "error: initial matrix file is not valid JSON\n";
      return 2;
    }
    json options{{"mode", evolve_mode}, {"initial", std::move(initial)},
                 {"steps", evolve_steps}};
    if (!t_grid.empty()) options["t_grid"] = t_grid;
    OwnedString report;
    const pfm_status st = pfm_evolve(h.ch, options.dump().c_str(), &report.text);
    if (st != PFM_OK) return fail_with(st);
    emit(report.text, out_path);
    return 0;
  }

  if (verify->parsed()) {
    require_seed();
    json options{{"trials", verify_trials},
                 {"seed", seed},
                 {"dims", dims},
                 {"probes", probes}};
    if (!properties.empty()) options["properties"] = properties;
    OwnedString report;
    const pfm_status st = pfm_verify(options.dump().c_str(), &report.text);
    if (st != PFM_OK) return fail_with(st);
    emit(report.text, out_path);
    const json parsed = json::parse(report.text);
    // full witnesses of any violated property go to a side file
    for (const auto& run : parsed.at("runs")) {
      if (run.at("violations").empty()) continue;
      const std::string path =
          "violations_" + run.at("property").get<std::string>() + ".json";
      std::ofstream side(path);
      side << run.at("violations").dump(2) << "\n";
      std::cerr << "witnesses for " << run.at("property").get<std::string>()
                << " written to " << path << "\n";
    }
    return parsed.value("ok", false) ? 0 : 1;
  }

  return 0;
}
