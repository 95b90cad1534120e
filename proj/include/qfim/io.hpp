#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "qfim/connection.hpp"
#include "qfim/multiparam.hpp"

namespace qfim::io {

using nlohmann::json;

/// Formats a double with 17 significant digits, enough to round-trip.
std::string format_double(double value);

/// Minimal CSV emitter; one row per call, fixed column order, deterministic
/// byte output for identical inputs.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t columns_;

public:
  ~CsvWriter();
};

// ---- operators and states ----------------------------------------------

json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const json& j);

json state_to_json(const StateVector& psi, const std::string& label = "");
StateVector state_from_json(const json& j);

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

// ---- basis dumps ---------------------------------------------------------

enum class MatrixDumpFormat { Binary, Csv };

/// Writes manifest.json plus one matrix dump per generator into dir.
/// Binary dumps are row-major little-endian doubles, real/imaginary
/// interleaved (2 D^2 values); CSV dumps hold one matrix row per line with
/// re,im pairs flattened. Returns the manifest.
json write_basis_dump(const LieBasis& basis, const std::filesystem::path& dir,
                      MatrixDumpFormat format = MatrixDumpFormat::Binary);

/// Reads back a matrix dump written by write_basis_dump.
CMatrix read_matrix_dump(const std::filesystem::path& path, Index dim, MatrixDumpFormat format);

// ---- reports -------------------------------------------------------------

json connection_to_json(const ConnectionSolution& solution);
json commuting_sets_to_json(const std::vector<CommutingSet>& sets, const LieBasis& basis,
                            double time, double min_qfi, double commute_tol);
json uhlmann_to_json(const UhlmannMatrix& u);
json qfim_eigen_to_json(const QfimEigen& eig, const std::vector<std::string>& labels, double time);

}  // namespace qfim::io
