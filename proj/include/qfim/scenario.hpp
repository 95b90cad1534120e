#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qfim/dynamics.hpp"
#include "qfim/multiparam.hpp"
#include "qfim/qfim.hpp"

namespace qfim {

enum class ScenarioKind { Oat, Tat, Custom };
enum class OutputFormat { Csv, Json, Both };

struct ScenarioOutputs {
  bool eigenvalues = true;
  bool leading_vector = true;
  bool commuting_sets = false;
  bool qgt = false;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::Oat;
  int modes = 0;      ///< 0 means the scenario default (oat: 2, tat: 4)
  int particles = 20;
  double chi = 1.0;
  double t_max = -1.0;  ///< < 0 means the default pi/(2 chi)
  int t_steps = 201;
  ScenarioOutputs outputs;
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::Both;
  std::vector<double> report_times;  ///< extra times for commuting sets / qgt
  std::string custom_hamiltonian_file;
  std::string custom_state_file;
  double min_qfi = -1.0;  ///< for commuting sets; negative means N
  double commute_tol = 1e-8;
};

ScenarioConfig scenario_config_from_json(const nlohmann::json& j);
nlohmann::json scenario_config_to_json(const ScenarioConfig& config);

/// Throws ValidationError with a field-level message when the config is
/// inconsistent.
void validate(const ScenarioConfig& config);

/// Analytic OAT quantum Fisher information, N + N(N-1)/4 (A + sqrt(A^2+B^2))
/// with A = 1 - cos^{N-2}(2 chi t), B = 4 sin(chi t) cos^{N-2}(chi t).
double oat_analytic_qfi(int particles, double chi, double t);

/// Optimal rotation-axis angle from Jy, arctan(B/A)/2.
double oat_analytic_angle(int particles, double chi, double t);

struct ScenarioRecord {
  double t = 0.0;
  RVector eigenvalues;          ///< sorted descending
  RVector tracked_eigenvalues;  ///< aligned to the previous grid point's frame
  RVector leading_vector;
  std::vector<std::vector<int>> degeneracy_groups;
};

struct ScenarioResult {
  std::vector<ScenarioRecord> records;
  std::vector<std::filesystem::path> files;
};

/// End-to-end scenario run: probe state and Hamiltonian from the config,
/// evolution over the grid, QFIM spectrum per time step, optional commuting
/// set and geometric tensor reports at the requested times, emitted as CSV
/// and/or JSON into output_dir.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Worker-thread count: the QFIM_THREADS environment variable when set,
/// otherwise the hardware concurrency.
int worker_threads();

}  // namespace qfim
