#include "qfim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "qfim/io.hpp"

namespace qfim {

namespace {

const char* kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Oat: return "oat";
    case ScenarioKind::Tat: return "tat";
    case ScenarioKind::Custom: return "custom";
  }
  return "?";
}

ScenarioKind kind_from_name(const std::string& name) {
  if (name == "oat") return ScenarioKind::Oat;
  if (name == "tat") return ScenarioKind::Tat;
  if (name == "custom") return ScenarioKind::Custom;
  throw ValidationError("scenario: expected one of oat|tat|custom, got '" + name + "'");
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double powi(double base, int exponent) {
  double out = 1.0;
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("QFIM_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

double oat_analytic_qfi(int particles, double chi, double t) {
  const double n = particles;
  const double a = 1.0 - powi(std::cos(2.0 * chi * t), particles - 2);
  const double b = 4.0 * std::sin(chi * t) * powi(std::cos(chi * t), particles - 2);
  return n + n * (n - 1.0) / 4.0 * (a + std::sqrt(a * a + b * b));
}

double oat_analytic_angle(int particles, double chi, double t) {
  const double a = 1.0 - powi(std::cos(2.0 * chi * t), particles - 2);
  const double b = 4.0 * std::sin(chi * t) * powi(std::cos(chi * t), particles - 2);
  if (a == 0.0 && b == 0.0) return 0.0;
  return 0.5 * std::atan2(b, a);
}

ScenarioConfig scenario_config_from_json(const nlohmann::json& j) {
  ScenarioConfig config;
  config.scenario = kind_from_name(j.at("scenario").get<std::string>());
  config.modes = j.value("n", 0);
  config.particles = j.value("N", 20);
  config.chi = j.value("chi", 1.0);
  config.t_max = j.value("t_max", -1.0);
  config.t_steps = j.value("t_steps", 201);
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    config.outputs.eigenvalues = o.value("eigenvalues", true);
    config.outputs.leading_vector = o.value("leading_vector", true);
    config.outputs.commuting_sets = o.value("commuting_sets", false);
    config.outputs.qgt = o.value("qgt", false);
  }
  config.output_dir = j.value("output_dir", ".");
  const std::string format = j.value("format", "both");
  if (format == "csv") config.format = OutputFormat::Csv;
  else if (format == "json") config.format = OutputFormat::Json;
  else if (format == "both") config.format = OutputFormat::Both;
  else throw ValidationError("format: expected csv|json|both, got '" + format + "'");
  config.report_times = j.value("report_times", std::vector<double>{});
  config.custom_hamiltonian_file = j.value("custom_hamiltonian_file", "");
  config.custom_state_file = j.value("custom_state_file", "");
  config.min_qfi = j.value("min_qfi", -1.0);
  config.commute_tol = j.value("commute_tol", 1e-8);
  return config;
}

nlohmann::json scenario_config_to_json(const ScenarioConfig& config) {
  nlohmann::json j;
  j["schema"] = "qfim-scenario-config.v1";
  j["scenario"] = kind_name(config.scenario);
  j["n"] = config.modes;
  j["N"] = config.particles;
  j["chi"] = config.chi;
  j["t_max"] = config.t_max;
  j["t_steps"] = config.t_steps;
  j["outputs"] = {{"eigenvalues", config.outputs.eigenvalues},
                  {"leading_vector", config.outputs.leading_vector},
                  {"commuting_sets", config.outputs.commuting_sets},
                  {"qgt", config.outputs.qgt}};
  j["output_dir"] = config.output_dir;
  j["format"] = config.format == OutputFormat::Csv    ? "csv"
                : config.format == OutputFormat::Json ? "json"
                                                      : "both";
  j["report_times"] = config.report_times;
  if (!config.custom_hamiltonian_file.empty()) j["custom_hamiltonian_file"] = config.custom_hamiltonian_file;
  if (!config.custom_state_file.empty()) j["custom_state_file"] = config.custom_state_file;
  j["min_qfi"] = config.min_qfi;
  j["commute_tol"] = config.commute_tol;
  return j;
}

void validate(const ScenarioConfig& config) {
  const int default_modes = config.scenario == ScenarioKind::Oat   ? 2
                            : config.scenario == ScenarioKind::Tat ? 4
                                                                   : config.modes;
  if (config.scenario == ScenarioKind::Oat && config.modes != 0 && config.modes != 2) {
    throw ValidationError("n: the oat scenario requires n = 2");
  }
  if (config.scenario == ScenarioKind::Tat && config.modes != 0 && config.modes != 4) {
    throw ValidationError("n: the tat scenario requires n = 4");
  }
  if (config.scenario == ScenarioKind::Custom) {
    if (config.custom_hamiltonian_file.empty()) {
      throw ValidationError("custom_hamiltonian_file: required for the custom scenario");
    }
    if (config.custom_state_file.empty()) {
      throw ValidationError("custom_state_file: required for the custom scenario");
    }
  } else if (default_modes < 2) {
    throw ValidationError("n: must be at least 2");
  }
  if (config.particles < 1) throw ValidationError("N: must be positive");
  if (config.chi <= 0.0) throw ValidationError("chi: must be positive");
  if (config.t_steps < 2) throw ValidationError("t_steps: must be at least 2");
  if (config.t_max == 0.0 || (config.t_max < 0.0 && config.t_max != -1.0)) {
    throw ValidationError("t_max: must be positive (or omitted for the default)");
  }
  for (double t : config.report_times) {
    if (t < 0.0) throw ValidationError("report_times: entries must be non-negative");
  }
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  validate(config);
  const double t_max = config.t_max < 0.0 ? M_PI / (2.0 * config.chi) : config.t_max;

  // Internal units: chi = 1; the emitted time column is physical.
  SpacePtr space;
  StateVector probe = [&]() -> StateVector {
    switch (config.scenario) {
      case ScenarioKind::Oat:
        space = SymmetricSpace::create(2, config.particles);
        return coherent_spin_state(space, M_PI / 2.0, 0.0);
      case ScenarioKind::Tat:
        space = SymmetricSpace::create(4, config.particles);
        return su4_initial_state(space);
      case ScenarioKind::Custom: {
        StateVector psi = io::state_from_json(io::load_json_file(config.custom_state_file));
        space = psi.space();
        return psi;
      }
    }
    throw ValidationError("scenario: unknown kind");
  }();

  HamiltonianSpec hspec;
  hspec.chi = 1.0;
  hspec.kind = config.scenario == ScenarioKind::Oat   ? HamiltonianKind::Oat
               : config.scenario == ScenarioKind::Tat ? HamiltonianKind::Tat
                                                      : HamiltonianKind::Custom;
  if (config.scenario == ScenarioKind::Custom) {
    HermitianOperator h = io::operator_from_json(io::load_json_file(config.custom_hamiltonian_file));
    require_compatible(h.space(), space, "run_scenario");
    hspec.custom_matrix = h.matrix();
  }
  const HermitianOperator hamiltonian = build_hamiltonian(hspec, space);

  const LieBasis basis = build_lie_basis(space);
  const int k = basis.size();

  // Time grid in scaled units tau = chi * t; report times appended.
  std::vector<double> grid(static_cast<std::size_t>(config.t_steps));
  for (int s = 0; s < config.t_steps; ++s) {
    grid[static_cast<std::size_t>(s)] = config.chi * t_max * s / (config.t_steps - 1);
  }
  std::vector<double> all_times = grid;
  for (double t : config.report_times) all_times.push_back(config.chi * t);
  std::sort(all_times.begin(), all_times.end());
  all_times.erase(std::unique(all_times.begin(), all_times.end()), all_times.end());
  if (all_times.front() != 0.0) all_times.insert(all_times.begin(), 0.0);

  const EvolutionResult evolution = evolve(hamiltonian, probe, all_times);

  std::vector<QfimEigen> eigens(all_times.size());
  parallel_for(static_cast<int>(all_times.size()), worker_threads(), [&](int idx) {
    const Qfim f = qfim_pure(evolution.states[static_cast<std::size_t>(idx)], basis);
    eigens[static_cast<std::size_t>(idx)] = diagonalize(f);
  });

  // Records follow the requested grid; tracked eigenvalues follow the
  // previous grid point's eigenframe through crossings.
  std::vector<std::size_t> grid_index;
  for (double t : grid) {
    const auto it = std::lower_bound(all_times.begin(), all_times.end(), t);
    grid_index.push_back(static_cast<std::size_t>(it - all_times.begin()));
  }

  ScenarioResult result;
  result.records.resize(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const QfimEigen& eig = eigens[grid_index[s]];
    ScenarioRecord& rec = result.records[s];
    rec.t = grid[s] / config.chi;
    rec.eigenvalues = eig.eigenvalues;
    rec.leading_vector = eig.eigenvectors.col(0);
    rec.degeneracy_groups = eig.degeneracy_groups;
    if (s == 0) {
      rec.tracked_eigenvalues = eig.eigenvalues;
    } else {
      const TrackAlignment align = track_eigenvectors(eigens[grid_index[s - 1]], eig);
      rec.tracked_eigenvalues = align.aligned_eigenvalues;
    }
  }

  // ---- emission ----------------------------------------------------------
  const std::filesystem::path out_dir(config.output_dir);
  std::filesystem::create_directories(out_dir);
  const bool write_csv = config.format != OutputFormat::Json;
  const bool write_json = config.format != OutputFormat::Csv;
  const bool oat = config.scenario == ScenarioKind::Oat;
  const std::vector<std::string> labels = basis.labels();

  if (write_csv && config.outputs.eigenvalues) {
    std::vector<std::string> header{"t"};
    for (int c = 1; c <= k; ++c) header.push_back("lambda_" + std::to_string(c));
    for (int c = 1; c <= k; ++c) header.push_back("group_" + std::to_string(c));
    if (oat) {
      header.emplace_back("f_oat");
      header.emplace_back("delta");
    }
    io::CsvWriter sorted_csv(out_dir / "eigenvalues_sorted.csv", header);
    for (const auto& rec : result.records) {
      std::vector<double> row{rec.t};
      for (int c = 0; c < k; ++c) row.push_back(rec.eigenvalues[c]);
      const QfimEigen tmp{rec.eigenvalues, RMatrix(), rec.degeneracy_groups};
      for (int c = 0; c < k; ++c) row.push_back(tmp.group_of(c));
      if (oat) {
        row.push_back(oat_analytic_qfi(config.particles, config.chi, rec.t));
        row.push_back(oat_analytic_angle(config.particles, config.chi, rec.t));
      }
      sorted_csv.row(row);
    }
    result.files.push_back(sorted_csv.path());

    std::vector<std::string> theader{"t"};
    for (int c = 1; c <= k; ++c) theader.push_back("lambda_" + std::to_string(c));
    io::CsvWriter tracked_csv(out_dir / "eigenvalues_tracked.csv", theader);
    for (const auto& rec : result.records) {
      std::vector<double> row{rec.t};
      for (int c = 0; c < k; ++c) row.push_back(rec.tracked_eigenvalues[c]);
      tracked_csv.row(row);
    }
    result.files.push_back(tracked_csv.path());
  }

  if (write_csv && config.outputs.leading_vector) {
    std::vector<std::string> header{"t"};
    for (const auto& label : labels) header.push_back("coeff_" + label);
    io::CsvWriter csv(out_dir / "leading_vector.csv", header);
    for (const auto& rec : result.records) {
      std::vector<double> row{rec.t};
      for (int c = 0; c < k; ++c) row.push_back(rec.leading_vector[c]);
      csv.row(row);
    }
    result.files.push_back(csv.path());
  }

  nlohmann::json records_json;
  if (write_json) {
    records_json["schema"] = "qfim-scenario-records.v1";
    records_json["config"] = scenario_config_to_json(config);
    records_json["basis"] = {{"n", basis.modes()},
                             {"N", basis.particles()},
                             {"dim", basis.space()->dim()},
                             {"ordering", "reverse-lex"},
                             {"norm_c", basis.norm_c()},
                             {"killing_norm_closed_form", basis.killing_norm_closed_form()},
                             {"labels", labels}};
    records_json["records"] = nlohmann::json::array();
    for (const auto& rec : result.records) {
      nlohmann::json r;
      r["t"] = rec.t;
      r["eigenvalues"] = std::vector<double>(rec.eigenvalues.begin(), rec.eigenvalues.end());
      r["tracked_eigenvalues"] =
          std::vector<double>(rec.tracked_eigenvalues.begin(), rec.tracked_eigenvalues.end());
      r["leading_vector"] = std::vector<double>(rec.leading_vector.begin(), rec.leading_vector.end());
      r["degeneracy_groups"] = rec.degeneracy_groups;
      if (oat) {
        r["f_oat"] = oat_analytic_qfi(config.particles, config.chi, rec.t);
        r["delta"] = oat_analytic_angle(config.particles, config.chi, rec.t);
      }
      records_json["records"].push_back(std::move(r));
    }
  }

  if (config.outputs.commuting_sets || config.outputs.qgt) {
    nlohmann::json reports = nlohmann::json::array();
    for (double t : config.report_times) {
      const double tau = config.chi * t;
      const auto it = std::lower_bound(all_times.begin(), all_times.end(), tau);
      const std::size_t idx = static_cast<std::size_t>(it - all_times.begin());
      const StateVector& psi = evolution.states[idx];
      nlohmann::json entry;
      entry["t"] = t;
      if (config.outputs.commuting_sets) {
        CommutingSetOptions opts;
        opts.min_qfi = config.min_qfi;
        opts.commute_tol = config.commute_tol;
        const auto sets = find_commuting_sets(eigens[idx], basis, opts);
        entry["commuting_sets"] = io::commuting_sets_to_json(
            sets, basis, t, opts.min_qfi < 0 ? config.particles : opts.min_qfi, opts.commute_tol);
      }
      if (config.outputs.qgt) {
        const QuantumGeometricTensor q = qgt(psi, basis);
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (Index r = 0; r < q.matrix.rows(); ++r) {
          std::vector<double> re_row(static_cast<std::size_t>(k)), im_row(static_cast<std::size_t>(k));
          for (Index c = 0; c < q.matrix.cols(); ++c) {
            re_row[static_cast<std::size_t>(c)] = q.matrix(r, c).real();
            im_row[static_cast<std::size_t>(c)] = q.matrix(r, c).imag();
          }
          re.push_back(re_row);
          im.push_back(im_row);
        }
        entry["qgt"] = {{"re", re}, {"im", im}};
      }
      reports.push_back(std::move(entry));

      if (config.outputs.commuting_sets && write_json) {
        // standalone report file per time, named by index
        char name[64];
        std::snprintf(name, sizeof name, "commuting_sets_%zu.json", reports.size() - 1);
        io::write_json_file(out_dir / name, reports.back()["commuting_sets"]);
        result.files.push_back(out_dir / name);
      }
    }
    if (write_json) records_json["reports"] = std::move(reports);
  }

  if (write_json) {
    io::write_json_file(out_dir / "records.json", records_json);
    result.files.push_back(out_dir / "records.json");
  }
  return result;
}

}  // namespace qfim
