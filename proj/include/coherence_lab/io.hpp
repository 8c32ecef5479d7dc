#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "coherence_lab/coherence.hpp"
#include "coherence_lab/graph.hpp"
#include "coherence_lab/treegrow.hpp"

namespace coherence_lab {

enum class GraphFamily { Cycle, Path, Tree, File };

/// A parsed --graph argument. Family parameters are kept so callers can pick
/// a closed form; they are 0 for files.
struct GraphSource {
  Graph graph;
  std::string id;  // the spec string as given
  GraphFamily family = GraphFamily::File;
  std::size_t n = 0;
  std::size_t branching = 0;
  std::size_t height = 0;
};

/// `cycle:n`, `path:n`, `tree:M:h` or `file:PATH`. Files ending in .json use
/// the JSON format, anything else the edge-list format.
GraphSource parse_graph_spec(std::string_view spec);

/// Edge-list text: one `u v w` per line, `#` comments, optional `# nodes: N`
/// directive to keep trailing isolated nodes. `source` names the input in
/// ParseError messages.
Graph read_edge_list(std::istream& in, std::string_view source = "<input>");
void write_edge_list(std::ostream& out, const Graph& g);

/// {"n": int, "edges": [[u, v, w], ...]}
Graph read_graph_json(std::string_view text, std::string_view source = "<input>");
std::string write_graph_json(const Graph& g);

Graph load_graph_file(const std::string& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// {"value", "dynamics", "method", "graph", "leaders", "kappa"}; a report
/// without kappa (noise-free) emits null.
std::string report_to_json(const CoherenceReport& report);

/// Header `step,pair_id,x,y,d_xr,d_yr,d_xy,r_nf` then one row per sample.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

/// Comma list of non-negative integers with optional `a-b` ranges, e.g. "0,4,7-9".
std::vector<std::size_t> parse_index_list(std::string_view text);

/// Comma list of reals.
std::vector<double> parse_real_list(std::string_view text);

/// Integer range `a:b` (step 1), `a:b:s` (additive) or `a:b:xF` (geometric),
/// or a comma list.
std::vector<std::size_t> parse_range(std::string_view text);

}  // namespace coherence_lab
