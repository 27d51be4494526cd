#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cfchroma/errors.hpp"

namespace cfc {

using Vertex = int;

/// A set of vertices, kept sorted ascending without duplicates.
using VertexSet = std::vector<Vertex>;

/// Immutable simple undirected graph over dense vertex ids 0..n-1.
/// No self-loops, no parallel edges. Safe to share across threads.
class Graph {
  public:
    Graph() = default;

    /// Builds a graph from an edge list. Throws InputError on out-of-range
    /// endpoints, self-loops, or duplicate edges.
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    int n() const { return n_; }
    long long edge_count() const { return m_; }

    /// Sorted ascending.
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(Vertex u, Vertex v) const;

    /// All edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw InputError("vertex id out of range: " + std::to_string(v));
    }
    void check_set(const VertexSet& s) const;

  private:
    int n_ = 0;
    long long m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

struct DegeneracyResult {
    int degeneracy = 0;
    /// Order in which a minimum-degree vertex (ties: smallest id) is removed.
    std::vector<Vertex> elimination_order;
};

/// N[v] = N(v) ∪ {v}.
VertexSet closed_neighborhood(const Graph& g, Vertex v);

/// Vertices outside s with exactly one neighbor in s.
VertexSet one_neighborhood(const Graph& g, const VertexSet& s);

/// V minus the union of closed neighborhoods of s. For s = ∅ this is V.
VertexSet non_neighborhood(const Graph& g, const VertexSet& s);

/// Largest minimum degree over all non-empty subgraphs, with the witnessing
/// elimination order. Convention: n = 0 yields degeneracy 0 and empty order.
DegeneracyResult degeneracy(const Graph& g);

/// Greedy coloring along the reverse elimination order; uses at most
/// degeneracy+1 colors starting from first_color.
std::vector<int> greedy_degeneracy_coloring(const Graph& g, const DegeneracyResult& deg,
                                            int first_color = 0);

bool is_independent(const Graph& g, const VertexSet& s);

/// Exact independence number by branch and bound (max clique on the
/// complement with a greedy coloring bound). Refuses above the cap.
int max_independent_set_size(const Graph& g, int cap = 40);

/// Weighted graph of the layered construction: vertex x in layer i has
/// weight base^i, layers are 1-based.
struct WeightedGraph {
    Graph graph;
    std::vector<int> layer_of; // per vertex, values in 1..layer_count
    double base = 0.99;
    int layer_count = 0;

    double weight(Vertex v) const;
};

/// w(S) = sum of vertex weights over s.
double set_weight(const WeightedGraph& wg, const VertexSet& s);

// Small builders used by tests, tools and experiments.
Graph empty_graph(int n);
Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);

// Sorted-set helpers shared by the verification and solver modules.
bool set_contains(const VertexSet& s, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
bool sets_disjoint(const VertexSet& a, const VertexSet& b);
int intersection_size(const VertexSet& a, const VertexSet& b);

} // namespace cfc
