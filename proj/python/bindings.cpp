#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "coherence_lab/cli.hpp"
#include "coherence_lab/closed_forms.hpp"
#include "coherence_lab/coherence.hpp"
#include "coherence_lab/dynamics_sim.hpp"
#include "coherence_lab/electrical.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/io.hpp"
#include "coherence_lab/selection.hpp"
#include "coherence_lab/treegrow.hpp"

namespace py = pybind11;
using namespace coherence_lab;

namespace {

Dynamics dynamics_from(const std::string& s) {
  if (s == "nf") return Dynamics::NoiseFree;
  if (s == "nc") return Dynamics::NoiseCorrupted;
  if (s == "free") return Dynamics::LeaderFree;
  fail(ErrorCode::ParseError, "dynamics must be nf, nc or free, got '" + s + "'");
}

Method method_from(const std::string& s) {
  if (s == "trace") return Method::Trace;
  if (s == "resistance") return Method::Resistance;
  fail(ErrorCode::ParseError, "method must be trace or resistance, got '" + s + "'");
}

using KappaArg = std::variant<double, std::vector<double>>;

StubbornnessMap kappa_from(const KappaArg& kappa, const LeaderSet& leaders) {
  if (const double* uniform = std::get_if<double>(&kappa)) return StubbornnessMap(*uniform);
  return StubbornnessMap::per_leader(leaders, std::get<std::vector<double>>(kappa));
}

py::dict report_dict(const CoherenceReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["dynamics"] = std::string(to_string(r.dynamics));
  d["method"] = std::string(to_string(r.method));
  d["leaders"] = std::vector<NodeId>(r.leaders.begin(), r.leaders.end());
  d["kappa"] = r.kappa.empty() ? py::object(py::none()) : py::cast(r.kappa);
  return d;
}

py::dict geometry_dict(const TreeGeometry& g) {
  py::dict d;
  d["branching"] = g.branching;
  d["height"] = g.height;
  d["d_xr"] = g.root_to_x;
  d["d_yr"] = g.root_to_y();
  d["d_xy"] = g.x_to_y;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherence of leader-follower consensus networks";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> error_type(m, "CoherenceError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(error_name(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](const std::vector<std::tuple<NodeId, NodeId, double>>& edges, std::size_t n) {
             std::vector<Edge> list;
             list.reserve(edges.size());
             for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
             return build_graph(list, n);
           }),
           py::arg("edges"), py::arg("n") = 0)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::tuple<NodeId, NodeId, double>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
             return out;
           })
      .def("laplacian", [](const Graph& g) { return laplacian(g); })
      .def("is_connected", [](const Graph& g) { return is_connected(g); })
      .def("distance", [](const Graph& g, NodeId u, NodeId v) { return graph_distance(g, u, v); })
      .def("to_edge_list",
           [](const Graph& g) {
             std::ostringstream out;
             write_edge_list(out, g);
             return out.str();
           })
      .def("to_json", [](const Graph& g) { return write_graph_json(g); })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("cycle", &build_cycle, py::arg("n"));
  m.def("path", &build_path, py::arg("n"));
  m.def("perfect_tree", [](std::size_t M, std::size_t h) { return build_perfect_tree(M, h).graph; },
        py::arg("branching"), py::arg("height"));
  m.def("parse_graph", [](const std::string& spec) { return parse_graph_spec(spec).graph; }, py::arg("spec"));
  m.def("read_edge_list", [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  });

  m.def(
      "coherence",
      [](const Graph& g, const std::vector<NodeId>& leaders, const std::string& dynamics, const KappaArg& kappa,
         const std::string& method) {
        const Dynamics d = dynamics_from(dynamics);
        if (d == Dynamics::LeaderFree) return leader_free_coherence(g).value;
        const LeaderSet s(leaders);
        if (d == Dynamics::NoiseFree) return coherence_nf(g, s, method_from(method)).value;
        return coherence_nc(g, s, kappa_from(kappa, s), method_from(method)).value;
      },
      py::arg("graph"), py::arg("leaders") = std::vector<NodeId>{}, py::arg("dynamics") = "nf",
      py::arg("kappa") = 1.0, py::arg("method") = "trace");
  m.def(
      "coherence_report",
      [](const Graph& g, const std::vector<NodeId>& leaders, const std::string& dynamics, const KappaArg& kappa,
         const std::string& method) {
        const Dynamics d = dynamics_from(dynamics);
        if (d == Dynamics::LeaderFree) return report_dict(leader_free_coherence(g));
        const LeaderSet s(leaders);
        if (d == Dynamics::NoiseFree) return report_dict(coherence_nf(g, s, method_from(method)));
        return report_dict(coherence_nc(g, s, kappa_from(kappa, s), method_from(method)));
      },
      py::arg("graph"), py::arg("leaders") = std::vector<NodeId>{}, py::arg("dynamics") = "nf",
      py::arg("kappa") = 1.0, py::arg("method") = "trace");

  m.def("resistance", &resistance, py::arg("graph"), py::arg("i"), py::arg("j"));
  m.def(
      "resistance_to_set",
      [](const Graph& g, NodeId i, const std::vector<NodeId>& leaders) {
        return resistance_to_set(g, i, LeaderSet(leaders));
      },
      py::arg("graph"), py::arg("i"), py::arg("leaders"));
  m.def("resistance_table", [](const Graph& g) { return ResistanceOracle(g).table(); }, py::arg("graph"));
  m.def(
      "resistance_after_edge",
      [](const Graph& g, NodeId i, NodeId j, double w, NodeId p, NodeId q) {
        return edge_addition_update(ResistanceOracle(g), i, j, w, p, q);
      },
      py::arg("graph"), py::arg("i"), py::arg("j"), py::arg("weight"), py::arg("p"), py::arg("q"));

  m.def(
      "select",
      [](const Graph& g, std::size_t k, const std::string& dynamics, double kappa, std::uint64_t budget) {
        SelectionOptions options;
        options.budget = budget;
        SelectionResult r;
        {
          py::gil_scoped_release release;
          r = brute_force_select(g, k, dynamics_from(dynamics), StubbornnessMap(kappa), options);
        }
        py::dict d;
        d["value"] = r.value;
        d["optimal_count"] = r.optimal_count;
        std::vector<std::vector<NodeId>> sets;
        for (const LeaderSet& s : r.optimal_sets) sets.emplace_back(s.begin(), s.end());
        d["optimal_sets"] = sets;
        d["evaluated"] = r.evaluated_count;
        return d;
      },
      py::arg("graph"), py::arg("k"), py::arg("dynamics") = "nf", py::arg("kappa") = 1.0,
      py::arg("budget") = SelectionOptions{}.budget);

  m.def(
      "cycle_nf_coherence",
      [](const std::vector<std::size_t>& gaps) { return cycle_nf_coherence({GapContext::Cycle, gaps}); },
      py::arg("gaps"));
  m.def(
      "path_nf_coherence",
      [](const std::vector<std::size_t>& gaps) { return path_nf_coherence({GapContext::Path, gaps}); },
      py::arg("gaps"));
  m.def(
      "path_nf_optimal",
      [](std::size_t n, std::size_t k) {
        const PathOptimum opt = path_nf_optimal(n, k);
        py::dict d;
        d["gaps"] = opt.gaps.gaps;
        d["leaders"] = std::vector<NodeId>(opt.leaders.begin(), opt.leaders.end());
        d["value"] = opt.value;
        return d;
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "tree_omega",
      [](std::size_t M, std::size_t h, std::size_t d_xr, std::size_t d_xy) {
        return tree_omega({M, h, d_xr, d_xy});
      },
      py::arg("branching"), py::arg("height"), py::arg("d_xr"), py::arg("d_xy"));
  m.def(
      "tree_optimal_two",
      [](std::size_t M, std::size_t h) {
        const TreeOptimum opt = tree_optimal_two(M, h);
        py::dict d = geometry_dict(opt.geometry);
        d["value"] = opt.value;
        d["height_too_small"] = opt.height_too_small;
        return d;
      },
      py::arg("branching"), py::arg("height"));
  m.def(
      "cycle_nc_two_coherence",
      [](std::size_t n, std::size_t i, const std::string& formula) {
        CycleNcMethod method = CycleNcMethod::Trace;
        if (formula == "corrected") method = CycleNcMethod::CorrectedPolynomial;
        else if (formula == "printed") method = CycleNcMethod::PrintedPolynomial;
        else if (formula != "trace") fail(ErrorCode::ParseError, "formula must be trace, corrected or printed");
        return cycle_nc_two_coherence(n, i, method);
      },
      py::arg("n"), py::arg("i"), py::arg("formula") = "trace");
  m.def("cycle_nc_optimal_value", &cycle_nc_optimal_value, py::arg("n"));

  m.def(
      "simulate",
      [](const Graph& g, const std::vector<NodeId>& leaders, const std::string& dynamics, double kappa, double dt,
         double horizon, double burn_in, std::size_t trials, std::uint64_t seed) {
        const SimConfig cfg{dt, horizon, burn_in, trials, seed};
        const LeaderSet s(leaders);
        const Dynamics d = dynamics_from(dynamics);
        if (d == Dynamics::LeaderFree) fail(ErrorCode::NotApplicable, "simulation covers nf and nc dynamics");
        SimEstimate est;
        {
          py::gil_scoped_release release;
          est = d == Dynamics::NoiseFree ? simulate_nf(g, s, cfg) : simulate_nc(g, s, StubbornnessMap(kappa), cfg);
        }
        return std::pair{est.mean, est.std_error};
      },
      py::arg("graph"), py::arg("leaders"), py::arg("dynamics") = "nf", py::arg("kappa") = 1.0,
      py::arg("dt") = SimConfig{}.dt, py::arg("horizon") = SimConfig{}.horizon,
      py::arg("burn_in") = SimConfig{}.burn_in, py::arg("trials") = SimConfig{}.trials, py::arg("seed") = 0);

  m.def(
      "grow_tree",
      [](std::size_t h0, std::size_t steps) {
        std::vector<py::dict> rows;
        for (const TrajectoryRow& r : growth_trajectory(h0, steps)) {
          py::dict d;
          d["step"] = r.step;
          d["pair_id"] = r.pair_id;
          d["x"] = r.x;
          d["y"] = r.y;
          d["d_xr"] = r.d_xr;
          d["d_yr"] = r.d_yr;
          d["d_xy"] = r.d_xy;
          d["r_nf"] = r.value;
          rows.push_back(std::move(d));
        }
        return rows;
      },
      py::arg("h0") = 5, py::arg("steps") = 64);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"coherence-lab"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::tuple{code, out.str(), err.str()};
      },
      py::arg("args"));
}
