#include "coherence_lab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coherence_lab/closed_forms.hpp"
#include "coherence_lab/coherence.hpp"
#include "coherence_lab/dynamics_sim.hpp"
#include "coherence_lab/electrical.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/io.hpp"
#include "coherence_lab/selection.hpp"
#include "coherence_lab/treegrow.hpp"

namespace coherence_lab {

namespace {

using nlohmann::json;

struct Options {
  std::string graph;
  std::string leaders;
  std::string kappa = "1";
  std::string dynamics = "nf";
  std::string method = "trace";
  std::string format;
  std::uint64_t budget = SelectionOptions{}.budget;
  std::uint64_t seed = 0;
  bool one_based = false;

  // resistance
  std::string nodes;
  std::string add_edge;
  // select
  std::size_t k = 0;
  std::size_t max_reported = SelectionOptions{}.max_reported;
  // closed-form
  std::string kind;
  std::size_t n = 0, i = 0, branching = 0, height = 0, d_xr = 0, d_xy = 0;
  std::string gaps;
  std::string formula = "corrected";
  // grow-tree
  std::size_t h0 = 5, steps = 64, max_depth = 3;
  bool global = false;
  // simulate
  SimConfig sim;
  // sweep
  std::string family = "cycle";
  std::string n_range;
};

Dynamics parse_dynamics(const std::string& s) {
  if (s == "nf") return Dynamics::NoiseFree;
  if (s == "nc") return Dynamics::NoiseCorrupted;
  if (s == "free") return Dynamics::LeaderFree;
  fail(ErrorCode::ParseError, "unknown dynamics '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "trace") return Method::Trace;
  if (s == "resistance") return Method::Resistance;
  if (s == "closed-form") return Method::ClosedForm;
  fail(ErrorCode::ParseError, "unknown method '" + s + "'");
}

bool csv(const Options& o, bool csv_default = false) {
  if (o.format.empty()) return csv_default;
  return o.format == "csv";
}

// Index lists on the command line may be 1-based; internally everything is 0-based.
std::vector<NodeId> indices(const Options& o, const std::string& text) {
  std::vector<NodeId> v = parse_index_list(text);
  if (o.one_based) {
    for (NodeId& x : v) {
      if (x == 0) fail(ErrorCode::ParseError, "node 0 given with --one-based");
      --x;
    }
  }
  return v;
}

json external(const Options& o, const LeaderSet& s) {
  json arr = json::array();
  for (NodeId v : s) arr.push_back(v + (o.one_based ? 1 : 0));
  return arr;
}

std::string joined(const Options& o, const LeaderSet& s) {
  std::string text;
  for (NodeId v : s) {
    if (!text.empty()) text += ';';
    text += std::to_string(v + (o.one_based ? 1 : 0));
  }
  return text;
}

StubbornnessMap kappa_map(const Options& o, const LeaderSet& leaders) {
  const std::vector<double> values = parse_real_list(o.kappa);
  if (values.size() == 1) {
    if (!(values[0] > 0.0) || !std::isfinite(values[0])) fail(ErrorCode::BadKappa, "kappa must be positive");
    return StubbornnessMap(values[0]);
  }
  if (values.size() != leaders.size()) {
    fail(ErrorCode::BadKappa, "got " + std::to_string(values.size()) + " kappa values for " +
                                  std::to_string(leaders.size()) + " leaders");
  }
  return StubbornnessMap::per_leader(leaders, values);
}

bool uniform_unit_kappa(const StubbornnessMap& kappa, const LeaderSet& leaders) {
  const auto values = kappa.values_for(leaders);
  return std::all_of(values.begin(), values.end(), [](double x) { return x == 1.0; });
}

double closed_form_value(const GraphSource& src, const LeaderSet& leaders, Dynamics dynamics,
                         const StubbornnessMap& kappa) {
  if (dynamics == Dynamics::NoiseFree) {
    if (src.family == GraphFamily::Cycle) return cycle_nf_coherence(cycle_gaps(src.n, leaders));
    if (src.family == GraphFamily::Path) return path_nf_coherence(path_gaps(src.n, leaders));
    if (src.family == GraphFamily::Tree && leaders.size() == 2) {
      const PerfectTree tree = build_perfect_tree(src.branching, src.height);
      if (auto geom = tree_pair_geometry(tree, leaders[0], leaders[1])) return tree_omega(*geom) / 2;
      fail(ErrorCode::NotApplicable, "the tree closed form needs leaders whose common ancestor is the root");
    }
  } else if (dynamics == Dynamics::NoiseCorrupted && src.family == GraphFamily::Cycle && leaders.size() == 2 &&
             uniform_unit_kappa(kappa, leaders)) {
    return cycle_nc_two_coherence(src.n, leaders[1] - leaders[0] + 1, CycleNcMethod::CorrectedPolynomial);
  }
  fail(ErrorCode::NotApplicable, "no closed form for this graph, leader set and dynamics");
}

void emit_report(const Options& o, const CoherenceReport& r, std::ostream& out) {
  if (csv(o)) {
    out << "value,dynamics,method,graph,leaders,kappa\n";
    std::string kappa;
    for (double x : r.kappa) kappa += (kappa.empty() ? "" : ";") + format_double(x);
    out << format_double(r.value) << ',' << to_string(r.dynamics) << ',' << to_string(r.method) << ','
        << r.graph_id << ',' << joined(o, r.leaders) << ',' << kappa << '\n';
    return;
  }
  json doc = json::parse(report_to_json(r));
  doc["leaders"] = external(o, r.leaders);
  out << doc.dump() << '\n';
}

void run_coherence(const Options& o, std::ostream& out) {
  const GraphSource src = parse_graph_spec(o.graph);
  const Dynamics dynamics = parse_dynamics(o.dynamics);
  const Method method = parse_method(o.method);
  CoherenceReport report;
  if (dynamics == Dynamics::LeaderFree) {
    if (method != Method::Trace) fail(ErrorCode::NotApplicable, "leader-free coherence uses the trace method");
    report = leader_free_coherence(src.graph);
  } else {
    const LeaderSet leaders(indices(o, o.leaders));
    if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "--leaders is required");
    const StubbornnessMap kappa = kappa_map(o, leaders);
    if (method == Method::ClosedForm) {
      (void)leaders.mask(src.graph.node_count());
      report.value = closed_form_value(src, leaders, dynamics, kappa);
      report.dynamics = dynamics;
      report.method = method;
      report.leaders = leaders;
      if (dynamics == Dynamics::NoiseCorrupted) report.kappa = kappa.values_for(leaders);
    } else if (dynamics == Dynamics::NoiseFree) {
      report = coherence_nf(src.graph, leaders, method);
    } else {
      report = coherence_nc(src.graph, leaders, kappa, method);
    }
  }
  report.graph_id = src.id;
  emit_report(o, report, out);
}

void run_resistance(const Options& o, std::ostream& out) {
  const GraphSource src = parse_graph_spec(o.graph);
  const std::vector<NodeId> nodes = indices(o, o.nodes);
  json doc{{"graph", src.id}};
  double value = 0.0;
  if (!o.add_edge.empty()) {
    const std::vector<double> spec = parse_real_list(o.add_edge);
    if (spec.size() != 3 || nodes.size() != 2) {
      fail(ErrorCode::ParseError, "--add-edge needs i,j,w and --nodes needs p,q");
    }
    auto node = [&](double x) {
      if (x < 0 || x != std::floor(x)) fail(ErrorCode::ParseError, "--add-edge endpoints must be integers");
      auto id = static_cast<NodeId>(x);
      if (o.one_based) {
        if (id == 0) fail(ErrorCode::ParseError, "node 0 given with --one-based");
        --id;
      }
      return id;
    };
    const ResistanceOracle oracle(src.graph);
    value = edge_addition_update(oracle, node(spec[0]), node(spec[1]), spec[2], nodes[0], nodes[1]);
    doc["before"] = oracle(nodes[0], nodes[1]);
  } else if (!o.leaders.empty()) {
    if (nodes.size() != 1) fail(ErrorCode::ParseError, "resistance to a set needs exactly one --nodes entry");
    value = resistance_to_set(src.graph, nodes[0], LeaderSet(indices(o, o.leaders)));
  } else {
    if (nodes.size() != 2) fail(ErrorCode::ParseError, "--nodes needs exactly two entries");
    value = resistance(src.graph, nodes[0], nodes[1]);
  }
  if (csv(o)) {
    out << "graph,resistance\n" << src.id << ',' << format_double(value) << '\n';
    return;
  }
  doc["resistance"] = value;
  out << doc.dump() << '\n';
}

void run_select(const Options& o, std::ostream& out) {
  const GraphSource src = parse_graph_spec(o.graph);
  const Dynamics dynamics = parse_dynamics(o.dynamics);
  SelectionOptions options;
  options.budget = o.budget;
  options.max_reported = o.max_reported;
  const StubbornnessMap kappa = kappa_map(o, LeaderSet{});
  const SelectionResult result = brute_force_select(src.graph, o.k, dynamics, kappa, options);

  std::optional<PerfectTree> tree;
  if (src.family == GraphFamily::Tree && o.k == 2) tree = build_perfect_tree(src.branching, src.height);

  if (csv(o)) {
    out << "leaders,value" << (tree ? ",d_xr,d_xy" : "") << '\n';
    for (const LeaderSet& s : result.optimal_sets) {
      out << joined(o, s) << ',' << format_double(result.value);
      if (tree) {
        const auto geom = tree_pair_geometry(*tree, s[0], s[1]);
        if (geom) out << ',' << geom->root_to_x << ',' << geom->x_to_y;
        else out << ",,";
      }
      out << '\n';
    }
    return;
  }
  json sets = json::array();
  for (const LeaderSet& s : result.optimal_sets) {
    json entry{{"leaders", external(o, s)}};
    if (tree) {
      if (const auto geom = tree_pair_geometry(*tree, s[0], s[1])) {
        entry["d_xr"] = geom->root_to_x;
        entry["d_yr"] = geom->root_to_y();
        entry["d_xy"] = geom->x_to_y;
      }
    }
    sets.push_back(entry);
  }
  json doc{{"graph", src.id},
           {"k", o.k},
           {"dynamics", to_string(dynamics)},
           {"value", result.value},
           {"optimal_count", result.optimal_count},
           {"optimal_sets", sets},
           {"evaluated", result.evaluated_count},
           {"elapsed_s", result.elapsed.count()}};
  out << doc.dump() << '\n';
}

GapVector gap_vector(const Options& o, GapContext context) {
  GapVector c{context, parse_index_list(o.gaps)};
  validate_gaps(c);
  return c;
}

void run_closed_form(const Options& o, std::ostream& out) {
  json doc{{"kind", o.kind}};
  if (o.kind == "cycle-nf") {
    if (!o.gaps.empty()) {
      doc["value"] = cycle_nf_coherence(gap_vector(o, GapContext::Cycle));
    } else {
      const CycleOptimum opt = cycle_nf_optimal(o.n, o.k);
      doc["base_gap"] = opt.base_gap;
      doc["remainder"] = opt.remainder;
      doc["gaps"] = opt.canonical.gaps;
      doc["leaders"] = external(o, cycle_leaders(opt.canonical));
      doc["value"] = opt.value;
    }
  } else if (o.kind == "path-nf") {
    if (!o.gaps.empty()) {
      doc["value"] = path_nf_coherence(gap_vector(o, GapContext::Path));
    } else {
      const PathOptimum opt = path_nf_optimal(o.n, o.k);
      doc["gaps"] = opt.gaps.gaps;
      doc["leaders"] = external(o, opt.leaders);
      doc["value"] = opt.value;
      doc["rounded_form_applies"] = opt.rounded_form_applies;
    }
  } else if (o.kind == "tree-omega") {
    const TreeGeometry geom{o.branching, o.height, o.d_xr, o.d_xy};
    const double omega = tree_omega(geom);
    doc["omega"] = omega;
    doc["value"] = omega / 2;
  } else if (o.kind == "tree-opt") {
    const TreeOptimum opt = tree_optimal_two(o.branching, o.height);
    doc["d_xr"] = opt.geometry.root_to_x;
    doc["d_yr"] = opt.geometry.root_to_y();
    doc["d_xy"] = opt.geometry.x_to_y;
    doc["value"] = opt.value;
    doc["height_too_small"] = opt.height_too_small;
  } else if (o.kind == "cycle-nc") {
    if (o.i != 0) {
      CycleNcMethod m = CycleNcMethod::CorrectedPolynomial;
      if (o.formula == "printed") m = CycleNcMethod::PrintedPolynomial;
      else if (o.formula == "trace") m = CycleNcMethod::Trace;
      else if (o.formula != "corrected") fail(ErrorCode::ParseError, "unknown formula '" + o.formula + "'");
      doc["i"] = o.i;
      doc["formula"] = o.formula;
      doc["value"] = cycle_nc_two_coherence(o.n, o.i, m);
    } else {
      doc["value"] = cycle_nc_optimal_value(o.n);
      doc["i_opt"] = (o.n + 2) / 2;
    }
  } else {
    fail(ErrorCode::ParseError, "unknown closed form '" + o.kind + "'");
  }
  if (csv(o)) {
    out << "kind,value\n" << o.kind << ',' << format_double(doc["value"].get<double>()) << '\n';
    return;
  }
  out << doc.dump() << '\n';
}

void run_grow_tree(const Options& o, std::ostream& out) {
  const auto rows = growth_trajectory(o.h0, o.steps, GrowthOptions{o.max_depth, o.global});
  if (csv(o)) {
    write_trajectory_csv(out, rows);
    return;
  }
  json arr = json::array();
  for (const TrajectoryRow& r : rows) {
    arr.push_back({{"step", r.step}, {"pair_id", r.pair_id}, {"x", r.x}, {"y", r.y}, {"d_xr", r.d_xr},
                   {"d_yr", r.d_yr}, {"d_xy", r.d_xy}, {"r_nf", r.value}});
  }
  out << arr.dump() << '\n';
}

void run_simulate(const Options& o, std::ostream& out) {
  const GraphSource src = parse_graph_spec(o.graph);
  const Dynamics dynamics = parse_dynamics(o.dynamics);
  const LeaderSet leaders(indices(o, o.leaders));
  SimConfig cfg = o.sim;
  cfg.seed = o.seed;
  SimEstimate est;
  double analytic = 0.0;
  if (dynamics == Dynamics::NoiseFree) {
    est = simulate_nf(src.graph, leaders, cfg);
    analytic = coherence_nf(src.graph, leaders).value;
  } else if (dynamics == Dynamics::NoiseCorrupted) {
    const StubbornnessMap kappa = kappa_map(o, leaders);
    est = simulate_nc(src.graph, leaders, kappa, cfg);
    analytic = coherence_nc(src.graph, leaders, kappa).value;
  } else {
    fail(ErrorCode::NotApplicable, "simulation covers the nf and nc dynamics");
  }
  if (csv(o)) {
    out << "graph,dynamics,mean,stderr,analytic\n"
        << src.id << ',' << to_string(dynamics) << ',' << format_double(est.mean) << ','
        << format_double(est.std_error) << ',' << format_double(analytic) << '\n';
    return;
  }
  json doc{{"graph", src.id},         {"dynamics", to_string(dynamics)}, {"leaders", external(o, leaders)},
           {"mean", est.mean},        {"stderr", est.std_error},         {"analytic", analytic},
           {"dt", cfg.dt},            {"horizon", cfg.horizon},          {"trials", cfg.trials},
           {"seed", cfg.seed}};
  out << doc.dump() << '\n';
}

struct SweepRow {
  std::size_t n = 0;
  double value = 0.0;
  std::string leaders;
};

SweepRow sweep_point(const Options& o, Dynamics dynamics, Method method, std::size_t n) {
  SweepRow row{n};
  GraphSource src;
  src.family = o.family == "cycle" ? GraphFamily::Cycle : o.family == "path" ? GraphFamily::Path : GraphFamily::Tree;
  if (src.family == GraphFamily::Tree && o.family != "tree") fail(ErrorCode::ParseError, "unknown family '" + o.family + "'");
  if (src.family == GraphFamily::Tree) {
    src.branching = o.branching;
    src.height = n;
  } else {
    src.n = n;
  }

  if (dynamics == Dynamics::LeaderFree) {
    const Graph g = src.family == GraphFamily::Cycle  ? build_cycle(n)
                    : src.family == GraphFamily::Path ? build_path(n)
                                                      : build_perfect_tree(o.branching, n).graph;
    row.n = g.node_count();
    row.value = leader_free_coherence(g).value;
    return row;
  }

  // Optimal leader placement for the family.
  const std::vector<double> kappa_values = parse_real_list(o.kappa);
  if (kappa_values.size() != 1 || !(kappa_values[0] > 0.0)) fail(ErrorCode::BadKappa, "sweep takes one positive kappa");
  const StubbornnessMap kappa(kappa_values[0]);
  LeaderSet leaders;
  double closed = std::nan("");
  if (dynamics == Dynamics::NoiseFree && src.family == GraphFamily::Cycle) {
    const CycleOptimum opt = cycle_nf_optimal(n, o.k);
    leaders = cycle_leaders(opt.canonical);
    closed = opt.value;
  } else if (dynamics == Dynamics::NoiseFree && src.family == GraphFamily::Path) {
    const PathOptimum opt = path_nf_optimal(n, o.k);
    leaders = opt.leaders;
    closed = opt.value;
  } else if (dynamics == Dynamics::NoiseFree && src.family == GraphFamily::Tree && o.k == 2) {
    const TreeOptimum opt = tree_optimal_two(o.branching, n);
    const PerfectTree tree = build_perfect_tree(o.branching, n);
    const auto [x, y] = place_tree_leaders(tree, opt.geometry);
    leaders = LeaderSet{x, y};
    closed = opt.value;
  } else if (dynamics == Dynamics::NoiseCorrupted && src.family == GraphFamily::Cycle && o.k == 2 &&
             kappa_values[0] == 1.0) {
    closed = cycle_nc_optimal_value(n);
    leaders = LeaderSet{0, n / 2};
  }

  Graph g;
  if (src.family == GraphFamily::Cycle) g = build_cycle(n);
  else if (src.family == GraphFamily::Path) g = build_path(n);
  else g = build_perfect_tree(o.branching, n).graph;
  row.n = g.node_count();

  if (leaders.empty()) {
    SelectionOptions options;
    options.budget = o.budget;
    const SelectionResult best = brute_force_select(g, o.k, dynamics, kappa, options);
    row.value = best.value;
    row.leaders = joined(o, best.optimal_sets.front());
    return row;
  }
  row.leaders = joined(o, leaders);
  if (method == Method::ClosedForm) {
    row.value = closed;
  } else if (dynamics == Dynamics::NoiseFree) {
    row.value = coherence_nf(g, leaders, method).value;
  } else {
    row.value = coherence_nc(g, leaders, kappa, method).value;
  }
  return row;
}

void run_sweep(const Options& o, std::ostream& out) {
  const Dynamics dynamics = parse_dynamics(o.dynamics);
  const Method method = parse_method(o.method);
  const std::vector<std::size_t> values = parse_range(o.n_range);
  std::vector<SweepRow> rows;
  for (std::size_t n : values) rows.push_back(sweep_point(o, dynamics, method, n));

  if (csv(o, true)) {
    out << "family,n,k,dynamics,method,value,value_over_n2,leaders\n";
    for (const SweepRow& r : rows) {
      const double n = static_cast<double>(r.n);
      out << o.family << ',' << r.n << ',' << (dynamics == Dynamics::LeaderFree ? 0 : o.k) << ','
          << to_string(dynamics) << ',' << to_string(method) << ',' << format_double(r.value) << ','
          << format_double(r.value / (n * n)) << ',' << r.leaders << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const SweepRow& r : rows) {
    const double n = static_cast<double>(r.n);
    arr.push_back({{"family", o.family}, {"n", r.n}, {"k", o.k}, {"dynamics", to_string(dynamics)},
                   {"value", r.value}, {"value_over_n2", r.value / (n * n)}});
  }
  out << arr.dump() << '\n';
}

void report_error(std::ostream& err, std::string_view name, const std::string& message) {
  err << json{{"error", name}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Coherence of leader-follower consensus networks", "coherence-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "coherence-lab 0.1.0");

  const auto format_check = CLI::IsMember({"json", "csv"});
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(format_check);
    sub->add_flag("--one-based", o.one_based, "Node ids on the command line and in output start at 1");
  };
  auto graph_opt = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "cycle:n, path:n, tree:M:h or file:PATH")->required();
  };
  const auto dynamics_check = CLI::IsMember({"nf", "nc", "free"});
  const auto method_check = CLI::IsMember({"trace", "resistance", "closed-form"});

  auto* coherence = app.add_subcommand("coherence", "Coherence of a leader set");
  graph_opt(coherence);
  coherence->add_option("--leaders", o.leaders, "Comma list, ranges a-b allowed");
  coherence->add_option("--kappa", o.kappa, "Stubbornness: one value or one per leader");
  coherence->add_option("--dynamics", o.dynamics)->check(dynamics_check);
  coherence->add_option("--method", o.method)->check(method_check);
  common(coherence);

  auto* resistance_cmd = app.add_subcommand("resistance", "Effective resistance between nodes or to a set");
  graph_opt(resistance_cmd);
  resistance_cmd->add_option("--nodes", o.nodes, "i,j (pair) or i (with --leaders)")->required();
  resistance_cmd->add_option("--leaders", o.leaders, "Target set for node-to-set resistance");
  resistance_cmd->add_option("--add-edge", o.add_edge, "i,j,w: report r(p,q) after adding this edge");
  common(resistance_cmd);

  auto* select = app.add_subcommand("select", "Exhaustive k-leader selection");
  graph_opt(select);
  select->add_option("--k", o.k, "Number of leaders")->required();
  select->add_option("--dynamics", o.dynamics)->check(CLI::IsMember({"nf", "nc"}));
  select->add_option("--kappa", o.kappa, "Uniform stubbornness");
  select->add_option("--budget", o.budget, "Maximum number of candidate sets");
  select->add_option("--max-reported", o.max_reported, "Co-optimal sets listed in the output");
  common(select);

  auto* closed = app.add_subcommand("closed-form", "Closed-form values and optima");
  closed->add_option("kind", o.kind, "cycle-nf, path-nf, tree-omega, tree-opt or cycle-nc")
      ->required()
      ->check(CLI::IsMember({"cycle-nf", "path-nf", "tree-omega", "tree-opt", "cycle-nc"}));
  closed->add_option("--n", o.n, "Node count");
  closed->add_option("--k", o.k, "Leader count");
  closed->add_option("--gaps", o.gaps, "Gap vector, comma separated");
  closed->add_option("--M", o.branching, "Tree branching factor");
  closed->add_option("--height", o.height, "Tree height");
  closed->add_option("--dxr", o.d_xr, "Root to x distance");
  closed->add_option("--dxy", o.d_xy, "x to y distance");
  closed->add_option("--i", o.i, "Second leader label (1-based) for cycle-nc");
  closed->add_option("--formula", o.formula, "cycle-nc with --i: corrected, printed or trace")
      ->check(CLI::IsMember({"corrected", "printed", "trace"}));
  common(closed);

  auto* grow = app.add_subcommand("grow-tree", "Leader-preserving binary tree growth trajectory");
  grow->add_option("--h0", o.h0, "Height of the initial perfect tree (>= 4)");
  grow->add_option("--steps", o.steps, "Number of growth steps");
  grow->add_option("--max-depth", o.max_depth, "Depth bound of the comparison pairs");
  grow->add_flag("--global", o.global, "Also emit the exhaustive 2-leader optimum per step");
  common(grow);

  auto* simulate = app.add_subcommand("simulate", "Euler-Maruyama estimate of the coherence");
  graph_opt(simulate);
  simulate->add_option("--leaders", o.leaders)->required();
  simulate->add_option("--dynamics", o.dynamics)->check(CLI::IsMember({"nf", "nc"}));
  simulate->add_option("--kappa", o.kappa);
  simulate->add_option("--dt", o.sim.dt);
  simulate->add_option("--horizon", o.sim.horizon);
  simulate->add_option("--burn-in", o.sim.burn_in);
  simulate->add_option("--trials", o.sim.trials);
  simulate->add_option("--seed", o.seed);
  common(simulate);

  auto* sweep = app.add_subcommand("sweep", "Coherence over a family and size range (CSV by default)");
  sweep->add_option("--family", o.family)->check(CLI::IsMember({"cycle", "path", "tree"}));
  sweep->add_option("--n", o.n_range, "Sizes (tree: heights): a:b, a:b:s, a:b:xF or a list")->required();
  sweep->add_option("--k", o.k, "Number of leaders");
  sweep->add_option("--M", o.branching, "Tree branching factor");
  sweep->add_option("--dynamics", o.dynamics)->check(dynamics_check);
  sweep->add_option("--method", o.method)->check(method_check);
  sweep->add_option("--kappa", o.kappa);
  sweep->add_option("--budget", o.budget);
  common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    report_error(err, "ParseError", e.what());
    return 2;
  }

  try {
    if (coherence->parsed()) run_coherence(o, out);
    else if (resistance_cmd->parsed()) run_resistance(o, out);
    else if (select->parsed()) run_select(o, out);
    else if (closed->parsed()) run_closed_form(o, out);
    else if (grow->parsed()) run_grow_tree(o, out);
    else if (simulate->parsed()) run_simulate(o, out);
    else if (sweep->parsed()) run_sweep(o, out);
  } catch (const Error& e) {
    report_error(err, error_name(e.code()), e.what());
    return is_validation_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return 1;
  }
  return 0;
}

}  // namespace coherence_lab
