// Command line front end: scenario runner plus thin wrappers over the
// library operations, emitting plot-ready CSV/JSON.
//
// Exit codes: 0 success, 2 validation error, 3 numerical/resource failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>

#include "qfim/connection.hpp"
#include "qfim/io.hpp"
#include "qfim/scenario.hpp"
#include "qfim/su4.hpp"

namespace {

using namespace qfim;
using nlohmann::json;

struct ScenarioArgs {
  std::string config_file;
  std::string scenario = "oat";
  int modes = 0;
  int particles = 20;
  double chi = 1.0;
  double t_max = -1.0;
  int t_steps = 201;
  std::string format = "both";
  std::string out_dir = ".";
  std::vector<double> report_times;
  bool emit_commuting_sets = false;
  bool emit_qgt = false;
  double min_qfi = -1.0;
  double commute_tol = 1e-8;
  std::string hamiltonian_file;
  std::string state_file;
};

ScenarioConfig make_config(const ScenarioArgs& args) {
  if (!args.config_file.empty()) {
    return scenario_config_from_json(io::load_json_file(args.config_file));
  }
  json j;
  j["scenario"] = args.scenario;
  j["n"] = args.modes;
  j["N"] = args.particles;
  j["chi"] = args.chi;
  j["t_max"] = args.t_max;
  j["t_steps"] = args.t_steps;
  j["format"] = args.format;
  j["output_dir"] = args.out_dir;
  j["report_times"] = args.report_times;
  j["outputs"] = {{"eigenvalues", true},
                  {"leading_vector", true},
                  {"commuting_sets", args.emit_commuting_sets},
                  {"qgt", args.emit_qgt}};
  j["min_qfi"] = args.min_qfi;
  j["commute_tol"] = args.commute_tol;
  if (!args.hamiltonian_file.empty()) j["custom_hamiltonian_file"] = args.hamiltonian_file;
  if (!args.state_file.empty()) j["custom_state_file"] = args.state_file;
  return scenario_config_from_json(j);
}

void add_scenario_flags(CLI::App* cmd, ScenarioArgs& args, bool with_grid) {
  cmd->add_option("--config", args.config_file, "scenario config JSON (overrides inline flags)");
  cmd->add_option("--scenario", args.scenario, "oat|tat|custom")->check(CLI::IsMember({"oat", "tat", "custom"}));
  cmd->add_option("--n", args.modes, "mode count (defaults by scenario)");
  cmd->add_option("--N", args.particles, "particle count");
  cmd->add_option("--chi", args.chi, "coupling strength (display scaling)");
  if (with_grid) {
    cmd->add_option("--t-max", args.t_max, "grid end time (default pi/(2 chi))");
    cmd->add_option("--t-steps", args.t_steps, "grid point count");
  }
  cmd->add_option("--format", args.format, "csv|json|both")->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--hamiltonian-file", args.hamiltonian_file, "custom scenario Hamiltonian (operator JSON)");
  cmd->add_option("--state-file", args.state_file, "custom scenario probe state (state JSON)");
}

/// Probe state, Hamiltonian and basis for a scenario at one time.
struct SnapshotContext {
  SpacePtr space;
  LieBasis basis;
  StateVector state;
};

SnapshotContext snapshot(const ScenarioArgs& args, double t) {
  ScenarioConfig config = make_config(args);
  config.t_steps = 2;
  config.t_max = t > 0 ? t : 1.0;
  validate(config);

  SpacePtr space;
  std::optional<StateVector> probe;
  HamiltonianSpec hspec;
  hspec.chi = 1.0;
  switch (config.scenario) {
    case ScenarioKind::Oat:
      space = SymmetricSpace::create(2, config.particles);
      probe = coherent_spin_state(space, M_PI / 2.0, 0.0);
      hspec.kind = HamiltonianKind::Oat;
      break;
    case ScenarioKind::Tat:
      space = SymmetricSpace::create(4, config.particles);
      probe = su4_initial_state(space);
      hspec.kind = HamiltonianKind::Tat;
      break;
    case ScenarioKind::Custom: {
      probe = io::state_from_json(io::load_json_file(config.custom_state_file));
      space = probe->space();
      hspec.kind = HamiltonianKind::Custom;
      HermitianOperator h = io::operator_from_json(io::load_json_file(config.custom_hamiltonian_file));
      require_compatible(h.space(), space, "snapshot");
      hspec.custom_matrix = h.matrix();
      break;
    }
  }
  LieBasis basis = build_lie_basis(space);
  const double tau = config.chi * t;
  if (tau == 0.0) {
    return {space, std::move(basis), *probe};
  }
  const HermitianOperator h = build_hamiltonian(hspec, space);
  EvolutionResult evo = evolve(h, *probe, {0.0, tau});
  return {space, std::move(basis), std::move(evo.states.back())};
}

/// Resolve a named operator: basis label, su(4) catalog name, or an
/// operator JSON file.
HermitianOperator resolve_operator(const std::string& name_or_file, const LieBasis& basis) {
  const int idx = basis.label_index(name_or_file);
  if (idx >= 0) return basis.generator(idx);
  if (basis.modes() == 4) {
    Su4Catalog catalog(basis.space());
    if (catalog.has(name_or_file)) return catalog.get(name_or_file);
  }
  return io::operator_from_json(io::load_json_file(name_or_file));
}

int run_dispatch(int argc, char** argv) {
  CLI::App app{"QFIM diagnostics for symmetric SU(n) probes: optimal sensing generators,\n"
               "commuting generator sets, and unitary connections."};
  app.require_subcommand(1);

  // ---- run ----------------------------------------------------------------
  ScenarioArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run a full scenario over a time grid");
  add_scenario_flags(run_cmd, run_args, true);
  run_cmd->add_option("--report-time", run_args.report_times,
                      "time(s) for commuting-set/qgt reports (repeatable)");
  run_cmd->add_flag("--emit-commuting-sets", run_args.emit_commuting_sets,
                    "emit commuting-set reports at the report times");
  run_cmd->add_flag("--emit-qgt", run_args.emit_qgt, "emit the geometric tensor at the report times");
  run_cmd->add_option("--min-qfi", run_args.min_qfi, "QFI threshold for commuting sets (default: N)");
  run_cmd->add_option("--commute-tol", run_args.commute_tol, "relative commutator tolerance");
  run_cmd->callback([&] {
    const ScenarioResult result = run_scenario(make_config(run_args));
    for (const auto& file : result.files) std::cout << file.string() << "\n";
  });

  // ---- basis-dump ---------------------------------------------------------
  int bd_modes = 4, bd_particles = 2;
  std::string bd_out = "basis";
  std::string bd_format = "bin";
  auto* bd_cmd = app.add_subcommand("basis-dump", "write the operator basis to disk");
  bd_cmd->add_option("--n", bd_modes, "mode count")->required();
  bd_cmd->add_option("--N", bd_particles, "particle count")->required();
  bd_cmd->add_option("--out", bd_out, "output directory");
  bd_cmd->add_option("--format", bd_format, "bin|csv")->check(CLI::IsMember({"bin", "csv"}));
  bd_cmd->callback([&] {
    const LieBasis basis = build_lie_basis(SymmetricSpace::create(bd_modes, bd_particles));
    const auto manifest = io::write_basis_dump(
        basis, bd_out, bd_format == "bin" ? io::MatrixDumpFormat::Binary : io::MatrixDumpFormat::Csv);
    std::cout << manifest.dump(2) << "\n";
  });

  // ---- evolve -------------------------------------------------------------
  ScenarioArgs evolve_args;
  auto* evolve_cmd = app.add_subcommand("evolve", "evolve the scenario probe state over the grid");
  add_scenario_flags(evolve_cmd, evolve_args, true);
  evolve_cmd->callback([&] {
    ScenarioConfig config = make_config(evolve_args);
    validate(config);
    SnapshotContext ctx = snapshot(evolve_args, 0.0);
    const double t_max = config.t_max < 0.0 ? M_PI / (2.0 * config.chi) : config.t_max;
    std::vector<double> times(static_cast<std::size_t>(config.t_steps));
    for (int s = 0; s < config.t_steps; ++s) {
      times[static_cast<std::size_t>(s)] = config.chi * t_max * s / (config.t_steps - 1);
    }
    HamiltonianSpec hspec;
    hspec.chi = 1.0;
    hspec.kind = config.scenario == ScenarioKind::Oat   ? HamiltonianKind::Oat
                 : config.scenario == ScenarioKind::Tat ? HamiltonianKind::Tat
                                                        : HamiltonianKind::Custom;
    if (hspec.kind == HamiltonianKind::Custom) {
      hspec.custom_matrix =
          io::operator_from_json(io::load_json_file(config.custom_hamiltonian_file)).matrix();
    }
    const HermitianOperator h = build_hamiltonian(hspec, ctx.space);
    const EvolutionResult evo = evolve(h, ctx.state, times);

    std::filesystem::create_directories(config.output_dir);
    const bool csv = config.format != OutputFormat::Json;
    const bool js = config.format != OutputFormat::Csv;
    if (csv) {
      std::vector<std::string> header{"t"};
      for (Index i = 0; i < ctx.space->dim(); ++i) {
        header.push_back("re_" + std::to_string(i));
        header.push_back("im_" + std::to_string(i));
      }
      io::CsvWriter writer(std::filesystem::path(config.output_dir) / "states.csv", header);
      for (std::size_t s = 0; s < evo.times.size(); ++s) {
        std::vector<double> row{evo.times[s] / config.chi};
        for (Index i = 0; i < ctx.space->dim(); ++i) {
          row.push_back(evo.states[s].amplitudes()[i].real());
          row.push_back(evo.states[s].amplitudes()[i].imag());
        }
        writer.row(row);
      }
      std::cout << writer.path().string() << "\n";
    }
    if (js) {
      json j;
      j["schema"] = "qfim-evolution.v1";
      j["n"] = ctx.space->modes();
      j["N"] = ctx.space->particles();
      j["dim"] = ctx.space->dim();
      j["times"] = json::array();
      j["states"] = json::array();
      for (std::size_t s = 0; s < evo.times.size(); ++s) {
        j["times"].push_back(evo.times[s] / config.chi);
        j["states"].push_back(io::state_to_json(evo.states[s]));
      }
      const auto path = std::filesystem::path(config.output_dir) / "evolution.json";
      io::write_json_file(path, j);
      std::cout << path.string() << "\n";
    }
  });

  // ---- qfim-at ------------------------------------------------------------
  ScenarioArgs at_args;
  double at_time = 0.0;
  std::string at_out;
  int rayleigh_samples = 0;
  unsigned rayleigh_seed = 1234;
  auto* at_cmd = app.add_subcommand("qfim-at", "QFIM spectrum of the scenario state at one time");
  add_scenario_flags(at_cmd, at_args, false);
  at_cmd->add_option("--t", at_time, "time (units of 1/chi)")->required();
  at_cmd->add_option("--output", at_out, "write JSON here instead of stdout");
  at_cmd->add_option("--rayleigh-samples", rayleigh_samples,
                     "also check v'Fv <= lambda_max over random unit directions");
  at_cmd->add_option("--seed", rayleigh_seed, "seed for the random directions");
  at_cmd->callback([&] {
    SnapshotContext ctx = snapshot(at_args, at_time);
    const Qfim f = qfim_pure(ctx.state, ctx.basis);
    const QfimEigen eig = diagonalize(f);
    json j = io::qfim_eigen_to_json(eig, ctx.basis.labels(), at_time);
    if (rayleigh_samples > 0) {
      std::mt19937_64 rng(rayleigh_seed);
      std::normal_distribution<double> gauss;
      double worst = 0.0;
      for (int s = 0; s < rayleigh_samples; ++s) {
        RVector v(ctx.basis.size());
        for (Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
        v.normalize();
        worst = std::max(worst, qfi_along(ctx.state, v, ctx.basis) - eig.eigenvalues[0]);
      }
      j["rayleigh_excess"] = worst;
      j["rayleigh_samples"] = rayleigh_samples;
      j["seed"] = rayleigh_seed;
    }
    if (at_out.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      io::write_json_file(at_out, j);
      std::cout << at_out << "\n";
    }
  });

  // ---- connect ------------------------------------------------------------
  std::string cn_generator, cn_target, cn_out;
  int cn_modes = 2, cn_particles = 4;
  auto* cn_cmd = app.add_subcommand("connect", "solve for the unitary connection between operators");
  cn_cmd->add_option("--n", cn_modes, "mode count for named operators");
  cn_cmd->add_option("--N", cn_particles, "particle count for named operators");
  cn_cmd->add_option("--generator", cn_generator, "source operator: basis label, su(4) name, or file")
      ->required();
  cn_cmd->add_option("--target", cn_target, "target operator: basis label, su(4) name, or file")->required();
  cn_cmd->add_option("--output", cn_out, "write JSON here instead of stdout");
  cn_cmd->callback([&] {
    const LieBasis basis = build_lie_basis(SymmetricSpace::create(cn_modes, cn_particles));
    const HermitianOperator g = resolve_operator(cn_generator, basis);
    const HermitianOperator z = resolve_operator(cn_target, basis);
    const ConnectionSolution solution = solve_connection(g, z, basis);
    const json j = io::connection_to_json(solution);
    if (cn_out.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      io::write_json_file(cn_out, j);
      std::cout << cn_out << "\n";
    }
  });

  // ---- commuting-sets -----------------------------------------------------
  ScenarioArgs cs_args;
  double cs_time = 0.0;
  double cs_min_qfi = -1.0, cs_tol = 1e-8;
  std::string cs_out;
  auto* cs_cmd = app.add_subcommand("commuting-sets", "maximal commuting generator sets at one time");
  add_scenario_flags(cs_cmd, cs_args, false);
  cs_cmd->add_option("--t", cs_time, "time (units of 1/chi)")->required();
  cs_cmd->add_option("--min-qfi", cs_min_qfi, "QFI threshold (default: N)");
  cs_cmd->add_option("--commute-tol", cs_tol, "relative commutator tolerance");
  cs_cmd->add_option("--output", cs_out, "write JSON here instead of stdout");
  cs_cmd->callback([&] {
    SnapshotContext ctx = snapshot(cs_args, cs_time);
    const Qfim f = qfim_pure(ctx.state, ctx.basis);
    const QfimEigen eig = diagonalize(f);
    CommutingSetOptions opts;
    opts.min_qfi = cs_min_qfi;
    opts.commute_tol = cs_tol;
    const auto sets = find_commuting_sets(eig, ctx.basis, opts);

    json j = io::commuting_sets_to_json(sets, ctx.basis, cs_time,
                                        opts.min_qfi < 0 ? ctx.basis.particles() : opts.min_qfi, cs_tol);
    // attach Uhlmann diagnostics per set
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto ops = sets[s].materialize(ctx.basis);
      const UhlmannMatrix u = uhlmann_curvature(ctx.state, ops);
      j["sets"][s]["uhlmann_max_abs"] = u.matrix.size() ? u.matrix.cwiseAbs().maxCoeff() : 0.0;
    }
    if (cs_out.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      io::write_json_file(cs_out, j);
      std::cout << cs_out << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_dispatch(argc, argv);
  } catch (const qfim::ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return 2;
  } catch (const qfim::ResourceError& err) {
    std::cerr << "resource error: " << err.what() << "\n";
    return 3;
  } catch (const qfim::NumericalError& err) {
    std::cerr << "numerical error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
