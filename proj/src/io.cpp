#include "qfim/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace qfim::io {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) buffer_ += ',';
    buffer_ += header[k];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw ValidationError("CsvWriter: wrong column count");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) buffer_ += ',';
    buffer_ += format_double(values[k]);
  }
  buffer_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ValidationError("CsvWriter: wrong column count");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) buffer_ += ',';
    buffer_ += cells[k];
  }
  buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
  std::ofstream out(path_, std::ios::binary);
  out << buffer_;
}

namespace {

json matrix_to_json(const CMatrix& m) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return json{{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j, Index dim) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Index>(re.size()) != dim * dim || static_cast<Index>(im.size()) != dim * dim) {
    throw ValidationError("matrix payload has wrong length");
  }
  CMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      const std::size_t k = static_cast<std::size_t>(r * dim + c);
      m(r, c) = Complex(re[k].get<double>(), im[k].get<double>());
    }
  }
  return m;
}

}  // namespace

json operator_to_json(const HermitianOperator& op) {
  json j;
  j["schema"] = "qfim-operator.v1";
  j["n"] = op.space()->modes();
  j["N"] = op.space()->particles();
  j["dim"] = op.dim();
  j["ordering"] = "reverse-lex";
  j["label"] = op.label();
  j["matrix"] = matrix_to_json(op.matrix());
  return j;
}

HermitianOperator operator_from_json(const json& j) {
  if (j.value("schema", "") != "qfim-operator.v1") {
    throw ValidationError("operator file: unknown or missing schema tag");
  }
  const int n = j.at("n").get<int>();
  const int n_particles = j.at("N").get<int>();
  SpacePtr space = SymmetricSpace::create(n, n_particles);
  const Index dim = j.at("dim").get<Index>();
  if (dim != space->dim()) throw ValidationError("operator file: dim does not match (n, N)");
  return HermitianOperator(matrix_from_json(j.at("matrix"), dim), j.value("label", "op"), space);
}

json state_to_json(const StateVector& psi, const std::string& label) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(psi.dim()));
  im.reserve(static_cast<std::size_t>(psi.dim()));
  for (Index k = 0; k < psi.dim(); ++k) {
    re.push_back(psi.amplitudes()[k].real());
    im.push_back(psi.amplitudes()[k].imag());
  }
  json j;
  j["schema"] = "qfim-state.v1";
  j["n"] = psi.space()->modes();
  j["N"] = psi.space()->particles();
  j["dim"] = psi.dim();
  j["ordering"] = "reverse-lex";
  j["label"] = label;
  j["re"] = re;
  j["im"] = im;
  return j;
}

StateVector state_from_json(const json& j) {
  if (j.value("schema", "") != "qfim-state.v1") {
    throw ValidationError("state file: unknown or missing schema tag");
  }
  SpacePtr space = SymmetricSpace::create(j.at("n").get<int>(), j.at("N").get<int>());
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Index>(re.size()) != space->dim()) {
    throw ValidationError("state file: amplitude count does not match (n, N)");
  }
  CVector amp(space->dim());
  for (Index k = 0; k < space->dim(); ++k) {
    amp[k] = Complex(re[static_cast<std::size_t>(k)].get<double>(), im[static_cast<std::size_t>(k)].get<double>());
  }
  return StateVector(std::move(amp), space);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

json write_basis_dump(const LieBasis& basis, const std::filesystem::path& dir,
                      MatrixDumpFormat format) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["schema"] = "qfim-basis-manifest.v1";
  manifest["n"] = basis.modes();
  manifest["N"] = basis.particles();
  manifest["dim"] = basis.space()->dim();
  manifest["ordering"] = "reverse-lex";
  manifest["norm_c"] = basis.norm_c();
  manifest["killing_norm_closed_form"] = basis.killing_norm_closed_form();
  manifest["format"] = format == MatrixDumpFormat::Binary ? "bin" : "csv";
  manifest["labels"] = basis.labels();

  std::vector<std::string> files;
  const char* ext = format == MatrixDumpFormat::Binary ? "bin" : "csv";
  for (int mu = 0; mu < basis.size(); ++mu) {
    char name[64];
    std::snprintf(name, sizeof name, "G_%02d_%s.%s", mu, basis.generator(mu).label().c_str(), ext);
    const std::filesystem::path path = dir / name;
    const CMatrix& m = basis.generator(mu).matrix();
    if (format == MatrixDumpFormat::Binary) {
      std::ofstream out(path, std::ios::binary);
      for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
          const double re = m(r, c).real(), im = m(r, c).imag();
          out.write(reinterpret_cast<const char*>(&re), sizeof re);
          out.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
      }
    } else {
      std::ofstream out(path, std::ios::binary);
      for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
          if (c) out << ',';
          out << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
        }
        out << '\n';
      }
    }
    files.emplace_back(name);
  }
  manifest["files"] = files;
  write_json_file(dir / "manifest.json", manifest);
  return manifest;
}

CMatrix read_matrix_dump(const std::filesystem::path& path, Index dim, MatrixDumpFormat format) {
  CMatrix m(dim, dim);
  if (format == MatrixDumpFormat::Binary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    for (Index r = 0; r < dim; ++r) {
      for (Index c = 0; c < dim; ++c) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        if (!in) throw ValidationError("matrix dump '" + path.string() + "' is truncated");
        m(r, c) = Complex(re, im);
      }
    }
  } else {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    std::string line;
    for (Index r = 0; r < dim; ++r) {
      if (!std::getline(in, line)) throw ValidationError("matrix dump '" + path.string() + "' is truncated");
      const char* ptr = line.c_str();
      char* end = nullptr;
      for (Index c = 0; c < dim; ++c) {
        const double re = std::strtod(ptr, &end);
        ptr = *end == ',' ? end + 1 : end;
        const double im = std::strtod(ptr, &end);
        ptr = *end == ',' ? end + 1 : end;
        m(r, c) = Complex(re, im);
      }
    }
  }
  return m;
}

json connection_to_json(const ConnectionSolution& solution) {
  json j;
  j["schema"] = "qfim-connection.v1";
  j["sylvester_residual"] = solution.sylvester_residual;
  j["connection_fidelity"] = solution.connection_fidelity;
  j["hermitian_discard"] = solution.hermitian_discard;
  j["coefficient_residual"] = solution.coefficient_residual;
  j["refinement_steps"] = solution.refinement_steps;
  j["pinv_rank"] = solution.pinv_rank;
  j["pinv_truncated"] = solution.pinv_truncated;
  j["r_coefficients"] = std::vector<double>(solution.r_coefficients.begin(), solution.r_coefficients.end());
  j["r_operator"] = operator_to_json(solution.r_operator);
  return j;
}

json commuting_sets_to_json(const std::vector<CommutingSet>& sets, const LieBasis& basis,
                            double time, double min_qfi, double commute_tol) {
  json j;
  j["schema"] = "qfim-commuting-sets.v1";
  j["t"] = time;
  j["min_qfi"] = min_qfi;
  j["commute_tol"] = commute_tol;
  j["labels"] = basis.labels();
  j["sets"] = json::array();
  for (const auto& set : sets) {
    json s;
    s["member_ranks"] = set.member_ranks;
    s["qfis"] = std::vector<double>(set.qfis.begin(), set.qfis.end());
    s["total_qfi"] = set.total_qfi;
    s["max_pairwise_commutator"] = set.max_pairwise_commutator;
    s["exceeds_cartan"] = set.exceeds_cartan;
    s["from_degenerate_rotation"] = set.from_degenerate_rotation;
    s["coefficients"] = json::array();
    for (const auto& c : set.coefficients) {
      s["coefficients"].push_back(std::vector<double>(c.begin(), c.end()));
    }
    j["sets"].push_back(std::move(s));
  }
  return j;
}

json uhlmann_to_json(const UhlmannMatrix& u) {
  json rows = json::array();
  for (Index r = 0; r < u.matrix.rows(); ++r) {
    rows.push_back(std::vector<double>(u.matrix.row(r).begin(), u.matrix.row(r).end()));
  }
  return json{{"schema", "qfim-uhlmann.v1"}, {"matrix", rows}};
}

json qfim_eigen_to_json(const QfimEigen& eig, const std::vector<std::string>& labels, double time) {
  json j;
  j["schema"] = "qfim-eigen.v1";
  j["t"] = time;
  j["labels"] = labels;
  j["eigenvalues"] = std::vector<double>(eig.eigenvalues.begin(), eig.eigenvalues.end());
  j["degeneracy_groups"] = eig.degeneracy_groups;
  json vecs = json::array();
  for (Index c = 0; c < eig.eigenvectors.cols(); ++c) {
    vecs.push_back(std::vector<double>(eig.eigenvectors.col(c).begin(), eig.eigenvectors.col(c).end()));
  }
  j["eigenvectors"] = vecs;
  return j;
}

}  // namespace qfim::io
