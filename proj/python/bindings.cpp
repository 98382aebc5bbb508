// Python bindings. Results come back as plain dicts built from the same JSON
// documents the CLI writes; states carry their density matrix as a numpy array.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcorr/bounds.hpp"
#include "qcorr/serialize.hpp"

namespace py = pybind11;
using namespace qcorr;

namespace {

py::object to_python(const json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

Side parse_side(const std::string& s) {
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  throw InvalidArgument("side must be 'A' or 'B', got '" + s + "'");
}

DiscordConfig discord_config(int restarts, std::uint64_t seed, int workers) {
  DiscordConfig dc;
  dc.optimizer.restarts = restarts;
  dc.optimizer.seed = seed;
  dc.optimizer.workers = workers;
  return dc;
}

// Long solves run with the GIL released.
template <typename Fn>
auto without_gil(Fn&& fn) {
  py::gil_scoped_release release;
  return fn();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Witnessed entanglement and geometric discord in Schatten norms";

  // InvalidArgument derives from std::invalid_argument and arrives as ValueError.
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_RuntimeError);

  py::class_<BipartiteState>(m, "State")
      .def(py::init([](const CMatrix& rho, int d_a, int d_b, std::string label) {
             return make_state(rho, Cut(d_a, d_b), std::move(label));
           }),
           py::arg("rho"), py::arg("d_A"), py::arg("d_B"), py::arg("label") = "state")
      .def_readonly("rho", &BipartiteState::rho)
      .def_property_readonly("d_A", [](const BipartiteState& s) { return s.cut.dA; })
      .def_property_readonly("d_B", [](const BipartiteState& s) { return s.cut.dB; })
      .def_readonly("label", &BipartiteState::label)
      .def("to_dict", [](const BipartiteState& s) { return to_python(to_json(s)); })
      .def("__repr__", [](const BipartiteState& s) {
        return "<State " + s.label + " " + std::to_string(s.cut.dA) + "x" +
               std::to_string(s.cut.dB) + ">";
      });

  m.def("werner", &werner, py::arg("d_A"), py::arg("k"));
  m.def("max_entangled", &max_entangled, py::arg("d_A"));
  m.def("horodecki_3x3", &horodecki_3x3, py::arg("k"));
  m.def("upb_tiles_4x4", &upb_tiles_4x4);
  m.def("mix_with_noise", &mix_with_noise, py::arg("state"), py::arg("s"));
  m.def(
      "rebipartition",
      [](const BipartiteState& s, int d_a, int d_b) { return rebipartition(s, Cut(d_a, d_b)); },
      py::arg("state"), py::arg("d_A"), py::arg("d_B"));
  m.def(
      "state_from_dict",
      [](const py::object& doc) {
        const std::string text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
        return state_from_json(json::parse(text));
      },
      py::arg("doc"));

  m.def(
      "partial_transpose",
      [](const CMatrix& rho, int d_a, int d_b, const std::string& side) {
        return partial_transpose(rho, Cut(d_a, d_b), parse_side(side));
      },
      py::arg("rho"), py::arg("d_A"), py::arg("d_B"), py::arg("side") = "A");
  m.def("schatten", &schatten, py::arg("m"), py::arg("p"));

  m.def(
      "negativity", [](const BipartiteState& s) { return to_python(to_json(negativity(s))); },
      py::arg("state"));
  m.def(
      "random_robustness_decomposable",
      [](const BipartiteState& s) { return to_python(to_json(random_robustness_decomposable(s))); },
      py::arg("state"));
  m.def(
      "random_robustness_certified",
      [](const BipartiteState& s, int restarts, std::uint64_t seed) {
        CuttingPlaneConfig cfg;
        cfg.certification_restarts = restarts;
        cfg.seed = seed;
        const EntanglementResult r = without_gil([&] { return random_robustness_cutting_plane(s, cfg); });
        return to_python(to_json(r));
      },
      py::arg("state"), py::arg("restarts") = 200, py::arg("seed") = 0);

  m.def(
      "discord",
      [](const BipartiteState& s, double p, const std::string& side, int restarts,
         std::uint64_t seed, int workers) {
        const DiscordConfig dc = discord_config(restarts, seed, workers);
        const DiscordResult r = without_gil([&] { return dp_discord(s, p, parse_side(side), dc); });
        return to_python(to_json(r));
      },
      py::arg("state"), py::arg("p") = 2.0, py::arg("side") = "B", py::arg("restarts") = 32,
      py::arg("seed") = 0, py::arg("workers") = 1);

  m.def(
      "verify_bounds",
      [](const BipartiteState& s, const std::string& side, int restarts, std::uint64_t seed,
         bool certified, std::vector<double> general_p) {
        BoundsConfig bc;
        bc.side = parse_side(side);
        bc.discord = discord_config(restarts, seed, 1);
        bc.cutting_plane.seed = seed;
        bc.certified_robustness = certified;
        bc.general_p = std::move(general_p);
        const BoundReport r = without_gil([&] { return verify_bounds(s, bc); });
        return to_python(to_json(r));
      },
      py::arg("state"), py::arg("side") = "B", py::arg("restarts") = 32, py::arg("seed") = 0,
      py::arg("certified") = false, py::arg("general_p") = std::vector<double>{});

  m.def(
      "sweep",
      [](const std::string& family, const std::vector<double>& grid, int d_a, bool certified,
         int restarts, std::uint64_t seed) {
        BoundsConfig bc;
        bc.discord = discord_config(restarts, seed, 1);
        bc.cutting_plane.seed = seed;
        bc.certified_robustness = certified;
        const FamilySpec spec{family_from_string(family), d_a};
        const SweepResult r = without_gil([&] { return sweep_family(spec, grid, bc); });
        return to_python(to_json(r));
      },
      py::arg("family"), py::arg("grid"), py::arg("d_A") = 5, py::arg("certified") = false,
      py::arg("restarts") = 32, py::arg("seed") = 0);

  m.def(
      "reproduce_tables",
      [](int restarts, std::uint64_t seed, double tolerance_scale, bool include_table3_rr) {
        TablesConfig tc;
        tc.discord = discord_config(restarts, seed, 1);
        tc.tolerance_scale = tolerance_scale;
        tc.include_table3_rr = include_table3_rr;
        const TablesReport r = without_gil([&] { return reproduce_tables(tc); });
        return to_python(to_json(r));
      },
      py::arg("restarts") = 32, py::arg("seed") = 0, py::arg("tolerance_scale") = 1.0,
      py::arg("include_table3_rr") = false);
}
