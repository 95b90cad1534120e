// Python bindings for the core operations: spaces, bases, probe states,
// evolution, QFIM diagnostics, commuting sets and unitary connections.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "qfim/connection.hpp"
#include "qfim/dynamics.hpp"
#include "qfim/io.hpp"
#include "qfim/multiparam.hpp"
#include "qfim/qfim.hpp"
#include "qfim/scenario.hpp"
#include "qfim/su4.hpp"

namespace py = pybind11;
using namespace qfim;

namespace {

/// Value wrapper so python can hold the immutable shared space.
struct Space {
  SpacePtr ptr;
};

HamiltonianKind kind_from_string(const std::string& kind) {
  if (kind == "oat") return HamiltonianKind::Oat;
  if (kind == "tat") return HamiltonianKind::Tat;
  if (kind == "custom") return HamiltonianKind::Custom;
  throw ValidationError("hamiltonian kind must be oat|tat|custom");
}

py::dict eigen_to_dict(const QfimEigen& eig) {
  py::dict out;
  out["eigenvalues"] = eig.eigenvalues;
  out["eigenvectors"] = eig.eigenvectors;
  out["degeneracy_groups"] = eig.degeneracy_groups;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum Fisher information diagnostics for symmetric SU(n) probes";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<Space>(m, "SymmetricSpace")
      .def_property_readonly("n", [](const Space& s) { return s.ptr->modes(); })
      .def_property_readonly("N", [](const Space& s) { return s.ptr->particles(); })
      .def_property_readonly("dim", [](const Space& s) { return s.ptr->dim(); })
      .def("occupations", [](const Space& s, Index i) { return s.ptr->occupations(i); })
      .def("index_of", [](const Space& s, const OccupationState& occ) { return s.ptr->index_of(occ); })
      .def("states", [](const Space& s) { return s.ptr->states(); })
      .def("__repr__", [](const Space& s) {
        return "SymmetricSpace(n=" + std::to_string(s.ptr->modes()) +
               ", N=" + std::to_string(s.ptr->particles()) + ", dim=" + std::to_string(s.ptr->dim()) + ")";
      });

  m.def("enumerate_space",
        [](int n, int n_particles, std::size_t max_dim) {
          return Space{SymmetricSpace::create(n, n_particles, max_dim)};
        },
        py::arg("n"), py::arg("N"), py::arg("max_dim") = SymmetricSpace::kDefaultMaxDim,
        "Enumerate the N-particle symmetric space over n modes");

  m.def("transition_operator",
        [](const Space& space, int i, int j) { return transition_operator(*space.ptr, i, j); },
        py::arg("space"), py::arg("i"), py::arg("j"),
        "Schwinger-boson transition operator a_i' a_j (0-based modes)");

  py::class_<LieBasis>(m, "LieBasis")
      .def_property_readonly("n", &LieBasis::modes)
      .def_property_readonly("N", &LieBasis::particles)
      .def_property_readonly("size", &LieBasis::size)
      .def_property_readonly("norm_c", &LieBasis::norm_c)
      .def_property_readonly("killing_norm_closed_form", &LieBasis::killing_norm_closed_form)
      .def_property_readonly("labels", &LieBasis::labels)
      .def_property_readonly("space", [](const LieBasis& b) { return Space{b.space()}; })
      .def("generator", [](const LieBasis& b, int mu) { return b.generator(mu).matrix(); }, py::arg("mu"))
      .def("label_index", &LieBasis::label_index)
      .def("materialize",
           [](const LieBasis& b, const RVector& coeffs) { return b.materialize(coeffs, "combo").matrix(); },
           py::arg("coefficients"))
      .def("__repr__", [](const LieBasis& b) {
        return "LieBasis(n=" + std::to_string(b.modes()) + ", N=" + std::to_string(b.particles()) + ", " +
               std::to_string(b.size()) + " generators)";
      });

  m.def("build_lie_basis", [](const Space& space) { return build_lie_basis(space.ptr); },
        py::arg("space"));

  m.def("decompose_operator",
        [](const LieBasis& basis, const CMatrix& op, const std::string& label) {
          const Decomposition d = decompose_operator(basis, HermitianOperator(op, label, basis.space()));
          return py::make_tuple(d.coefficients, d.residual);
        },
        py::arg("basis"), py::arg("op"), py::arg("label") = "op",
        "Coefficients over the basis plus the out-of-span residual");

  py::class_<Su4Catalog>(m, "Su4Catalog")
      .def(py::init([](const Space& space) { return Su4Catalog(space.ptr); }), py::arg("space"))
      .def_property_readonly("names", &Su4Catalog::names)
      .def("get", [](const Su4Catalog& c, const std::string& name) { return c.get(name).matrix(); },
           py::arg("name"));

  m.def("coherent_spin_state",
        [](const Space& s, double theta, double phi) {
          return coherent_spin_state(s.ptr, theta, phi).amplitudes();
        },
        py::arg("space"), py::arg("theta"), py::arg("phi"));
  m.def("noon_state", [](const Space& s) { return noon_state(s.ptr).amplitudes(); }, py::arg("space"));
  m.def("su4_initial_state", [](const Space& s) { return su4_initial_state(s.ptr).amplitudes(); },
        py::arg("space"));

  m.def("build_hamiltonian",
        [](const Space& space, const std::string& kind, double chi, const std::optional<CMatrix>& custom) {
          return build_hamiltonian({kind_from_string(kind), chi, custom}, space.ptr).matrix();
        },
        py::arg("space"), py::arg("kind"), py::arg("chi") = 1.0, py::arg("custom") = std::nullopt);

  m.def("evolve",
        [](const Space& space, const CMatrix& h, const CVector& psi0, const std::vector<double>& times) {
          const EvolutionResult result =
              evolve(HermitianOperator(h, "H", space.ptr), StateVector(psi0, space.ptr), times);
          std::vector<CVector> states;
          states.reserve(result.states.size());
          for (const auto& s : result.states) states.push_back(s.amplitudes());
          return states;
        },
        py::arg("space"), py::arg("hamiltonian"), py::arg("psi0"), py::arg("times"));

  m.def("qfim_pure",
        [](const LieBasis& basis, const CVector& psi) {
          return qfim_pure(StateVector(psi, basis.space()), basis).matrix;
        },
        py::arg("basis"), py::arg("psi"));
  m.def("qfim_mixed",
        [](const LieBasis& basis, const CMatrix& rho, double support_threshold) {
          return qfim_mixed(DensityMatrix(rho, basis.space()), basis, support_threshold).matrix;
        },
        py::arg("basis"), py::arg("rho"), py::arg("support_threshold") = 1e-12);
  m.def("qgt",
        [](const LieBasis& basis, const CVector& psi) {
          return qgt(StateVector(psi, basis.space()), basis).matrix;
        },
        py::arg("basis"), py::arg("psi"));

  m.def("diagonalize",
        [](const RMatrix& f, double degeneracy_rtol) {
          return eigen_to_dict(diagonalize({f, "", {}}, degeneracy_rtol));
        },
        py::arg("qfim"), py::arg("degeneracy_rtol") = 1e-6,
        "Descending eigenvalues, sign-fixed eigenvector columns, degeneracy groups");

  m.def("qfi_along",
        [](const LieBasis& basis, const CVector& psi, const RVector& direction) {
          return qfi_along(StateVector(psi, basis.space()), direction, basis);
        },
        py::arg("basis"), py::arg("psi"), py::arg("direction"));

  m.def("find_commuting_sets",
        [](const LieBasis& basis, const CVector& psi, double min_qfi, double commute_tol) {
          const QfimEigen eig = diagonalize(qfim_pure(StateVector(psi, basis.space()), basis));
          CommutingSetOptions opts;
          opts.min_qfi = min_qfi;
          opts.commute_tol = commute_tol;
          py::list out;
          for (const auto& set : find_commuting_sets(eig, basis, opts)) {
            py::dict d;
            d["member_ranks"] = set.member_ranks;
            d["qfis"] = set.qfis;
            d["coefficients"] = set.coefficients;
            d["max_pairwise_commutator"] = set.max_pairwise_commutator;
            d["total_qfi"] = set.total_qfi;
            d["exceeds_cartan"] = set.exceeds_cartan;
            out.append(std::move(d));
          }
          return out;
        },
        py::arg("basis"), py::arg("psi"), py::arg("min_qfi") = -1.0, py::arg("commute_tol") = 1e-8);

  m.def("uhlmann_curvature",
        [](const Space& space, const CVector& psi, const std::vector<CMatrix>& generators) {
          std::vector<HermitianOperator> ops;
          ops.reserve(generators.size());
          for (std::size_t k = 0; k < generators.size(); ++k) {
            ops.emplace_back(generators[k], "G" + std::to_string(k), space.ptr);
          }
          return uhlmann_curvature(StateVector(psi, space.ptr), ops).matrix;
        },
        py::arg("space"), py::arg("psi"), py::arg("generators"));

  m.def("spectra_match",
        [](const Space& space, const CMatrix& g, const CMatrix& z, double tol) {
          return spectra_match(HermitianOperator(g, "G", space.ptr),
                               HermitianOperator(z, "Z", space.ptr), tol);
        },
        py::arg("space"), py::arg("g"), py::arg("z"), py::arg("tol") = 1e-8);

  m.def("pseudoinverse", &pseudoinverse, py::arg("matrix"), py::arg("rank_rtol") = 1e-10);

  m.def("solve_connection",
        [](const LieBasis& basis, const CMatrix& g, const CMatrix& z) {
          const ConnectionSolution sol =
              solve_connection(HermitianOperator(g, "G", basis.space()),
                               HermitianOperator(z, "Z", basis.space()), basis);
          py::dict out;
          out["r_operator"] = sol.r_operator.matrix();
          out["r_coefficients"] = sol.r_coefficients;
          out["coefficient_residual"] = sol.coefficient_residual;
          out["sylvester_residual"] = sol.sylvester_residual;
          out["connection_fidelity"] = sol.connection_fidelity;
          out["refinement_steps"] = sol.refinement_steps;
          return out;
        },
        py::arg("basis"), py::arg("g"), py::arg("z"));

  m.def("oat_analytic_qfi", &oat_analytic_qfi, py::arg("N"), py::arg("chi"), py::arg("t"));
  m.def("oat_analytic_angle", &oat_analytic_angle, py::arg("N"), py::arg("chi"), py::arg("t"));

  m.def("run_scenario",
        [](const std::string& config_json) {
          const ScenarioResult result =
              run_scenario(scenario_config_from_json(nlohmann::json::parse(config_json)));
          std::vector<std::string> files;
          files.reserve(result.files.size());
          for (const auto& f : result.files) files.push_back(f.string());
          return files;
        },
        py::arg("config_json"), "Run a scenario from a JSON config string; returns emitted files");
}
