#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "cfchroma/graph.hpp"

// Isomorphism-free enumeration of small graphs, by augmenting each canonical
// k-vertex graph with every possible neighborhood of a new vertex and
// deduplicating on the canonical form (minimum edge bitmask over all vertex
// permutations). Feasible up to n = 7 (5040 permutations, 21 edge bits).
namespace graphenum {

using EdgeMask = uint32_t;

inline int pair_index(int i, int j, int n) {
    // edges (i < j) indexed row-major: (0,1),(0,2),..,(0,n-1),(1,2),..
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline EdgeMask canonical_form(EdgeMask mask, int n, const std::vector<std::vector<int>>& perms) {
    EdgeMask best = ~EdgeMask(0);
    for (const auto& perm : perms) {
        EdgeMask relabeled = 0;
        EdgeMask rest = mask;
        while (rest) {
            int e = std::countr_zero(rest);
            rest &= rest - 1;
            // invert pair_index: find (i, j) for edge e
            int i = 0, offset = e;
            while (offset >= n - 1 - i) {
                offset -= n - 1 - i;
                ++i;
            }
            int j = i + 1 + offset;
            int pi = perm[i], pj = perm[j];
            if (pi > pj) std::swap(pi, pj);
            relabeled |= EdgeMask(1) << pair_index(pi, pj, n);
        }
        best = std::min(best, relabeled);
    }
    return best;
}

/// All non-isomorphic graphs on exactly n vertices (canonical edge masks).
inline std::vector<EdgeMask> nonisomorphic_masks(int n) {
    std::vector<EdgeMask> level = {0}; // the 1-vertex graph
    for (int k = 2; k <= n; ++k) {
        auto perms = permutations(k);
        std::unordered_set<EdgeMask> seen;
        std::vector<EdgeMask> next;
        for (EdgeMask g : level) {
            // re-embed the k-1 graph into k vertices (same pair indexing, larger n)
            EdgeMask base = 0;
            EdgeMask rest = g;
            while (rest) {
                int e = std::countr_zero(rest);
                rest &= rest - 1;
                int i = 0, offset = e;
                while (offset >= k - 2 - i) {
                    offset -= k - 2 - i;
                    ++i;
                }
                int j = i + 1 + offset;
                base |= EdgeMask(1) << pair_index(i, j, k);
            }
            for (uint32_t nbhd = 0; nbhd < (1u << (k - 1)); ++nbhd) {
                EdgeMask candidate = base;
                for (int i = 0; i < k - 1; ++i)
                    if (nbhd >> i & 1) candidate |= EdgeMask(1) << pair_index(i, k - 1, k);
                EdgeMask canon = canonical_form(candidate, k, perms);
                if (seen.insert(canon).second) next.push_back(canon);
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return level;
}

inline cfc::Graph mask_to_graph(EdgeMask mask, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask >> pair_index(i, j, n) & 1) edges.emplace_back(i, j);
    return cfc::Graph(n, edges);
}

inline bool is_connected(const cfc::Graph& g) {
    if (g.n() == 0) return true;
    std::vector<char> seen(g.n(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.n();
}

/// All non-isomorphic connected graphs on exactly n vertices.
inline std::vector<cfc::Graph> connected_graphs(int n) {
    std::vector<cfc::Graph> out;
    for (EdgeMask mask : nonisomorphic_masks(n)) {
        cfc::Graph g = mask_to_graph(mask, n);
        if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

} // namespace graphenum
