#include "coherence_lab/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "coherence_lab/error.hpp"

namespace coherence_lab {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool to_size(std::string_view s, std::size_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool to_real(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::size_t size_or_fail(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  if (!to_size(s, v)) fail(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

[[noreturn]] void parse_fail(std::string_view source, std::size_t line, const std::string& msg) {
  fail(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

GraphSource parse_graph_spec(std::string_view spec) {
  GraphSource src;
  src.id = std::string(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::ParseError, "graph spec '" + src.id + "' at position 0: expected family:args");
  }
  const std::string_view family = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  if (family == "file") {
    src.graph = load_graph_file(std::string(rest));
    return src;
  }
  const auto args = split(rest, ':');
  auto arg = [&](std::size_t i) {
    std::size_t v = 0;
    if (!to_size(args[i], v)) {
      std::size_t pos = colon + 1;
      for (std::size_t j = 0; j < i; ++j) pos += args[j].size() + 1;
      fail(ErrorCode::ParseError, "graph spec '" + src.id + "' at position " + std::to_string(pos) +
                                      ": expected a non-negative integer");
    }
    return v;
  };
  if (family == "cycle" || family == "path") {
    if (args.size() != 1) fail(ErrorCode::ParseError, "graph spec '" + src.id + "': expected " + std::string(family) + ":n");
    src.n = arg(0);
    src.family = family == "cycle" ? GraphFamily::Cycle : GraphFamily::Path;
    src.graph = family == "cycle" ? build_cycle(src.n) : build_path(src.n);
  } else if (family == "tree") {
    if (args.size() != 2) fail(ErrorCode::ParseError, "graph spec '" + src.id + "': expected tree:M:h");
    src.branching = arg(0);
    src.height = arg(1);
    src.family = GraphFamily::Tree;
    src.graph = build_perfect_tree(src.branching, src.height).graph;
    src.n = src.graph.node_count();
  } else {
    fail(ErrorCode::ParseError, "graph spec '" + src.id + "' at position 0: unknown family '" +
                                    std::string(family) + "'");
  }
  return src;
}

Graph read_edge_list(std::istream& in, std::string_view source) {
  std::vector<Edge> edges;
  std::size_t min_nodes = 0;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    const auto hash = view.find('#');
    if (hash != std::string_view::npos) {
      const std::string_view comment = trim(view.substr(hash + 1));
      if (comment.substr(0, 6) == "nodes:") {
        if (!to_size(comment.substr(6), min_nodes)) parse_fail(source, number, "bad nodes directive");
      }
      view = view.substr(0, hash);
    }
    std::istringstream fields{std::string(view)};
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) parse_fail(source, number, "expected 'u v w', got " + std::to_string(tokens.size()) + " fields");
    Edge e;
    if (!to_size(tokens[0], e.u)) parse_fail(source, number, "bad node id '" + tokens[0] + "'");
    if (!to_size(tokens[1], e.v)) parse_fail(source, number, "bad node id '" + tokens[1] + "'");
    if (!to_real(tokens[2], e.weight)) parse_fail(source, number, "bad weight '" + tokens[2] + "'");
    edges.push_back(e);
  }
  if (edges.empty() && min_nodes == 0) parse_fail(source, number, "no edges and no nodes directive");
  return build_graph(edges, min_nodes);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes: " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
}

Graph read_graph_json(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string(source) + ": byte " + std::to_string(e.byte) + ": invalid JSON");
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
    fail(ErrorCode::ParseError, std::string(source) + ": expected an object with an \"edges\" array");
  }
  std::size_t n = 0;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned()) fail(ErrorCode::ParseError, std::string(source) + ": \"n\" must be a non-negative integer");
    n = doc["n"].get<std::size_t>();
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const json& item = doc["edges"][i];
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_unsigned() || !item[1].is_number_unsigned() ||
        !item[2].is_number()) {
      fail(ErrorCode::ParseError, std::string(source) + ": edges[" + std::to_string(i) + "] must be [u, v, w]");
    }
    edges.push_back({item[0].get<NodeId>(), item[1].get<NodeId>(), item[2].get<double>()});
  }
  Graph g = build_graph(edges, n);
  if (n != 0 && g.node_count() != n) {
    fail(ErrorCode::NodeOutOfRange, std::string(source) + ": edge endpoint exceeds n=" + std::to_string(n));
  }
  return g;
}

std::string write_graph_json(const Graph& g) {
  json doc;
  doc["n"] = g.node_count();
  doc["edges"] = json::array();
  for (const Edge& e : g.edges()) doc["edges"].push_back({e.u, e.v, e.weight});
  return doc.dump();
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return read_graph_json(buffer.str(), path);
  }
  return read_edge_list(in, path);
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string report_to_json(const CoherenceReport& report) {
  json doc;
  doc["value"] = report.value;
  doc["dynamics"] = std::string(to_string(report.dynamics));
  doc["method"] = std::string(to_string(report.method));
  doc["graph"] = report.graph_id;
  doc["leaders"] = std::vector<NodeId>(report.leaders.begin(), report.leaders.end());
  doc["kappa"] = report.kappa.empty() ? json(nullptr) : json(report.kappa);
  return doc.dump();
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  out << "step,pair_id,x,y,d_xr,d_yr,d_xy,r_nf\n";
  for (const TrajectoryRow& r : rows) {
    out << r.step << ',' << r.pair_id << ',' << r.x << ',' << r.y << ',' << r.d_xr << ',' << r.d_yr << ','
        << r.d_xy << ',' << format_double(r.value) << '\n';
  }
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  if (trim(text).empty()) return out;
  for (std::string_view part : split(text, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(size_or_fail(part, "index"));
      continue;
    }
    const std::size_t a = size_or_fail(part.substr(0, dash), "range start");
    const std::size_t b = size_or_fail(part.substr(dash + 1), "range end");
    if (b < a) fail(ErrorCode::ParseError, "empty range '" + std::string(part) + "'");
    for (std::size_t v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (std::string_view part : split(text, ',')) {
    double v = 0.0;
    if (!to_real(part, v)) fail(ErrorCode::ParseError, "bad number '" + std::string(part) + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_range(std::string_view text) {
  if (text.find(':') == std::string_view::npos) return parse_index_list(text);
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) fail(ErrorCode::ParseError, "range '" + std::string(text) + "' must be a:b[:s]");
  const std::size_t a = size_or_fail(parts[0], "range start");
  const std::size_t b = size_or_fail(parts[1], "range end");
  std::vector<std::size_t> out;
  if (parts.size() == 3 && !parts[2].empty() && parts[2].front() == 'x') {
    const std::size_t factor = size_or_fail(parts[2].substr(1), "range factor");
    if (factor < 2 || a == 0) fail(ErrorCode::ParseError, "geometric range needs start >= 1 and factor >= 2");
    for (std::size_t v = a; v <= b; v *= factor) out.push_back(v);
    return out;
  }
  const std::size_t step = parts.size() == 3 ? size_or_fail(parts[2], "range step") : 1;
  if (step == 0) fail(ErrorCode::ParseError, "range step must be positive");
  for (std::size_t v = a; v <= b; v += step) out.push_back(v);
  return out;
}

}  // namespace coherence_lab
