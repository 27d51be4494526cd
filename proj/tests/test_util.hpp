#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cfchroma/graph.hpp"
#include "cfchroma/verify.hpp"

// Brute-force oracles, independent of the library's search paths. All of
// them enumerate exhaustively, so keep n small (<= ~12).
namespace oracle {

inline std::vector<uint32_t> closed_masks(const cfc::Graph& g) {
    std::vector<uint32_t> closed(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) {
        closed[v] |= 1u << v;
        for (int w : g.neighbors(v)) closed[v] |= 1u << w;
    }
    return closed;
}

// Largest minimum degree over all non-empty induced subgraphs.
inline int degeneracy(const cfc::Graph& g) {
    int n = g.n();
    if (n == 0) return 0;
    int best = 0;
    for (uint32_t sub = 1; sub < (1u << n); ++sub) {
        int min_deg = n;
        for (int v = 0; v < n; ++v) {
            if (!(sub >> v & 1)) continue;
            int d = 0;
            for (int w : g.neighbors(v))
                if (sub >> w & 1) ++d;
            min_deg = std::min(min_deg, d);
        }
        best = std::max(best, min_deg);
    }
    return best;
}

inline int independence_number(const cfc::Graph& g) {
    int n = g.n();
    int best = 0;
    for (uint32_t sub = 0; sub < (1u << n); ++sub) {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            if (!(sub >> v & 1)) continue;
            for (int w : g.neighbors(v))
                if (w > v && (sub >> w & 1)) {
                    ok = false;
                    break;
                }
        }
        if (ok) best = std::max(best, std::popcount(sub));
    }
    return best;
}

inline int domination_number(const cfc::Graph& g) {
    int n = g.n();
    if (n == 0) return 0;
    auto closed = closed_masks(g);
    uint32_t full = (1u << n) - 1;
    int best = n;
    for (uint32_t sub = 0; sub <= full; ++sub) {
        uint32_t cov = 0;
        uint32_t t = sub;
        while (t) {
            int v = std::countr_zero(t);
            t &= t - 1;
            cov |= closed[v];
        }
        if (cov == full) best = std::min(best, std::popcount(sub));
        if (sub == full) break;
    }
    return best;
}

inline bool coloring_is_conflict_free(const cfc::Graph& g, const std::vector<int>& colors) {
    for (int x = 0; x < g.n(); ++x) {
        cfc::VertexSet nbhd = cfc::closed_neighborhood(g, x);
        bool has_unique = false;
        for (int y : nbhd) {
            int count = 0;
            for (int z : nbhd)
                if (colors[z] == colors[y]) ++count;
            if (count == 1) {
                has_unique = true;
                break;
            }
        }
        if (!has_unique) return false;
    }
    return true;
}

// Full enumeration of all r^n colorings, smallest feasible r.
inline int cf_chromatic(const cfc::Graph& g) {
    int n = g.n();
    if (n == 0) return 0;
    for (int r = 1;; ++r) {
        std::vector<int> colors(n, 0);
        while (true) {
            if (coloring_is_conflict_free(g, colors)) return r;
            int i = 0;
            while (i < n && ++colors[i] == r) colors[i++] = 0;
            if (i == n) break;
        }
    }
}

inline int chromatic(const cfc::Graph& g) {
    int n = g.n();
    if (n == 0) return 0;
    for (int r = 1;; ++r) {
        std::vector<int> colors(n, 0);
        while (true) {
            bool proper = true;
            for (auto [u, v] : g.edges())
                if (colors[u] == colors[v]) {
                    proper = false;
                    break;
                }
            if (proper) return r;
            int i = 0;
            while (i < n && ++colors[i] == r) colors[i++] = 0;
            if (i == n) break;
        }
    }
}

} // namespace oracle

namespace testutil {

struct NamedGraph {
    std::string name;
    cfc::Graph graph;
};

// Small deterministic corpus shared by the invariant tests.
inline std::vector<NamedGraph> small_corpus() {
    using namespace cfc;
    std::vector<NamedGraph> out;
    out.push_back({"empty0", empty_graph(0)});
    out.push_back({"empty1", empty_graph(1)});
    out.push_back({"empty5", empty_graph(5)});
    out.push_back({"K2", complete_graph(2)});
    out.push_back({"K3", complete_graph(3)});
    out.push_back({"K5", complete_graph(5)});
    out.push_back({"K6", complete_graph(6)});
    out.push_back({"P2", path_graph(2)});
    out.push_back({"P3", path_graph(3)});
    out.push_back({"P5", path_graph(5)});
    out.push_back({"P8", path_graph(8)});
    out.push_back({"C4", cycle_graph(4)});
    out.push_back({"C5", cycle_graph(5)});
    out.push_back({"C6", cycle_graph(6)});
    out.push_back({"C8", cycle_graph(8)});
    out.push_back({"star4", star_graph(4)});
    out.push_back({"star7", star_graph(7)});
    // K5 plus a pendant and an isolated vertex
    {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) e.emplace_back(u, v);
        e.emplace_back(4, 5);
        out.push_back({"K5+pendant+iso", Graph(7, e)});
    }
    // K33
    {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < 3; ++u)
            for (int v = 3; v < 6; ++v) e.emplace_back(u, v);
        out.push_back({"K33", Graph(6, e)});
    }
    // two disjoint triangles
    {
        std::vector<std::pair<int, int>> e = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
        out.push_back({"2xK3", Graph(6, e)});
    }
    return out;
}

} // namespace testutil
