#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cfchroma/graph.hpp"

namespace cfc {

/// A graph read from disk; layers/base are present when the file carried the
/// weighted (layered) JSON fields.
struct LoadedGraph {
    Graph graph;
    std::optional<WeightedGraph> weighted;
};

// Text format, bit-exact writer:
//   line 1: "p edge <n> <m>", then one "e <u> <v>" line per edge with
//   1-indexed endpoints, u < v, ascending; comment lines start with 'c'.
std::string write_graph_text(const Graph& g);
Graph read_graph_text(std::istream& in);

// JSON format: {"n": int, "edges": [[u,v], ...]} with 0-indexed endpoints.
// A weighted graph additionally carries {"layers": [int per vertex], "base": real}.
std::string write_graph_json(const Graph& g);
std::string write_graph_json(const WeightedGraph& wg);
LoadedGraph read_graph_json(std::istream& in);

/// Reads either format, sniffing JSON by a leading '{'.
LoadedGraph load_graph(std::istream& in);
LoadedGraph load_graph_file(const std::string& path);
void save_graph_file(const std::string& path, const Graph& g);
void save_graph_file(const std::string& path, const WeightedGraph& wg);

} // namespace cfc
