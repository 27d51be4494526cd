#include "cfchroma/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cfc {

namespace {

std::vector<uint32_t> adjacency_masks32(const Graph& g) {
    std::vector<uint32_t> adj(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v)
        for (Vertex w : g.neighbors(v)) adj[v] |= uint32_t(1) << w;
    return adj;
}

// Backtracking search for a conflict-free r-coloring over adjacency masks.
struct CfSearch {
    const Graph& g;
    std::vector<Vertex> order;      // assignment order
    std::vector<int> color;         // -1 = unassigned
    std::vector<int> left;          // unassigned vertices in each closed nbhd
    int r;

    bool closed_nbhd_ok(Vertex u) const {
        // all of N[u] is colored; needs some color appearing exactly once
        int count[34] = {0};
        ++count[color[u]];
        for (Vertex y : g.neighbors(u)) ++count[color[y]];
        if (count[color[u]] == 1) return true;
        for (Vertex y : g.neighbors(u))
            if (count[color[y]] == 1) return true;
        return false;
    }

    bool assign(size_t pos, int max_used) {
        if (pos == order.size()) return true;
        Vertex v = order[pos];
        int limit = std::min(max_used + 1, r - 1);
        for (int c = 0; c <= limit; ++c) {
            color[v] = c;
            bool feasible = true;
            --left[v];
            for (Vertex y : g.neighbors(v)) --left[y];
            if (left[v] == 0 && !closed_nbhd_ok(v)) feasible = false;
            if (feasible)
                for (Vertex y : g.neighbors(v))
                    if (left[y] == 0 && !closed_nbhd_ok(y)) {
                        feasible = false;
                        break;
                    }
            if (feasible && assign(pos + 1, std::max(max_used, c))) return true;
            ++left[v];
            for (Vertex y : g.neighbors(v)) ++left[y];
            color[v] = -1;
        }
        return false;
    }
};

} // namespace

bool cf_colorable(const Graph& g, int r, int cap) {
    cap = std::min(cap, 30);
    if (g.n() > cap)
        throw CapError("exact conflict-free search capped at n <= " + std::to_string(cap) +
                       ", got n = " + std::to_string(g.n()));
    if (g.n() == 0) return true;
    if (r <= 0) return false;
    CfSearch search{g, {}, {}, {}, r};
    DegeneracyResult deg = degeneracy(g);
    search.order.assign(deg.elimination_order.rbegin(), deg.elimination_order.rend());
    search.color.assign(g.n(), -1);
    search.left.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) search.left[v] = g.degree(v) + 1;
    return search.assign(0, -1);
}

CfExact exact_cf_chromatic(const Graph& g, int cap) {
    cap = std::min(cap, 30);
    if (g.n() > cap)
        throw CapError("exact conflict-free search capped at n <= " + std::to_string(cap) +
                       ", got n = " + std::to_string(g.n()));
    CfExact out;
    if (g.n() == 0) return out;
    for (int r = 1;; ++r) {
        CfSearch search{g, {}, {}, {}, r};
        DegeneracyResult deg = degeneracy(g);
        search.order.assign(deg.elimination_order.rbegin(), deg.elimination_order.rend());
        search.color.assign(g.n(), -1);
        search.left.resize(g.n());
        for (Vertex v = 0; v < g.n(); ++v) search.left[v] = g.degree(v) + 1;
        if (search.assign(0, -1)) {
            out.value = r;
            out.witness.color_of = search.color;
            return out;
        }
    }
}

namespace {

struct ProperSearch {
    const std::vector<uint32_t>& adj;
    const std::vector<Vertex>& order;
    std::vector<int> color;
    int r;

    bool assign(size_t pos, int max_used) {
        if (pos == order.size()) return true;
        Vertex v = order[pos];
        uint32_t forbidden = 0;
        for (int u = 0; u < static_cast<int>(color.size()); ++u)
            if (color[u] >= 0 && (adj[v] >> u & 1)) forbidden |= uint32_t(1) << color[u];
        int limit = std::min(max_used + 1, r - 1);
        for (int c = 0; c <= limit; ++c) {
            if (forbidden >> c & 1) continue;
            color[v] = c;
            if (assign(pos + 1, std::max(max_used, c))) return true;
            color[v] = -1;
        }
        return false;
    }
};

// Greedy clique along descending degree, a cheap chromatic lower bound.
int greedy_clique_size(const Graph& g) {
    std::vector<Vertex> by_degree(g.n());
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    VertexSet clique;
    for (Vertex v : by_degree) {
        bool joins = true;
        for (Vertex u : clique)
            if (!g.has_edge(u, v)) {
                joins = false;
                break;
            }
        if (joins) {
            clique.push_back(v);
            std::sort(clique.begin(), clique.end());
        }
    }
    return static_cast<int>(clique.size());
}

} // namespace

int exact_chromatic(const Graph& g, int cap) {
    cap = std::min(cap, 30);
    if (g.n() > cap)
        throw CapError("exact chromatic search capped at n <= " + std::to_string(cap) +
                       ", got n = " + std::to_string(g.n()));
    if (g.n() == 0) return 0;
    if (g.edge_count() == 0) return 1;
    DegeneracyResult deg = degeneracy(g);
    std::vector<int> greedy = greedy_degeneracy_coloring(g, deg);
    int upper = *std::max_element(greedy.begin(), greedy.end()) + 1;
    int lower = std::max(2, greedy_clique_size(g));
    auto adj = adjacency_masks32(g);
    std::vector<Vertex> order(deg.elimination_order.rbegin(), deg.elimination_order.rend());
    for (int r = lower; r < upper; ++r) {
        ProperSearch search{adj, order, std::vector<int>(g.n(), -1), r};
        if (search.assign(0, -1)) return r;
    }
    return upper;
}

namespace {

// Bitset rows over ceil(n/64) words for the domination search.
struct DomRows {
    int n;
    int words;
    std::vector<uint64_t> closed; // row v: N[v]

    const uint64_t* row(Vertex v) const { return closed.data() + static_cast<size_t>(v) * words; }
};

DomRows build_rows(const Graph& g) {
    DomRows rows{g.n(), (g.n() + 63) / 64, {}};
    rows.closed.assign(static_cast<size_t>(g.n()) * rows.words, 0);
    for (Vertex v = 0; v < g.n(); ++v) {
        uint64_t* r = rows.closed.data() + static_cast<size_t>(v) * rows.words;
        r[v >> 6] |= uint64_t(1) << (v & 63);
        for (Vertex w : g.neighbors(v)) r[w >> 6] |= uint64_t(1) << (w & 63);
    }
    return rows;
}

struct DomSearch {
    const Graph& g;
    const DomRows& rows;
    long long budget;
    long long nodes = 0;

    bool covers(const std::vector<uint64_t>& uncovered, Vertex w) const {
        const uint64_t* r = rows.row(w);
        for (int i = 0; i < rows.words; ++i)
            if (uncovered[i] & ~r[i]) return false;
        return true;
    }

    int coverage(const std::vector<uint64_t>& uncovered, Vertex w) const {
        const uint64_t* r = rows.row(w);
        int c = 0;
        for (int i = 0; i < rows.words; ++i) c += std::popcount(uncovered[i] & r[i]);
        return c;
    }

    Vertex pick_branch_vertex(const std::vector<uint64_t>& uncovered) const {
        Vertex best = -1;
        for (int i = 0; i < rows.words; ++i) {
            uint64_t w = uncovered[i];
            while (w) {
                Vertex v = i * 64 + std::countr_zero(w);
                w &= w - 1;
                if (best < 0 || g.degree(v) < g.degree(best)) best = v;
            }
        }
        return best;
    }

    // Does a dominating set of size <= r exist for the uncovered mask?
    bool decide(std::vector<uint64_t>& uncovered, int uncovered_count, int r) {
        if (uncovered_count == 0) return true;
        if (r == 0) return false;
        if (++nodes > budget)
            throw CapError("domination search exceeded node budget of " + std::to_string(budget) +
                           " (estimate: search space too large for n = " + std::to_string(g.n()) +
                           ")");
        Vertex u = pick_branch_vertex(uncovered);
        VertexSet candidates = closed_neighborhood(g, u);
        if (r == 1) {
            for (Vertex w : candidates)
                if (covers(uncovered, w)) return true;
            return false;
        }
        // Bound: even the r best coverages cannot finish the job.
        std::vector<int> covs;
        covs.reserve(g.n());
        for (Vertex w = 0; w < g.n(); ++w) covs.push_back(coverage(uncovered, w));
        std::vector<int> top(covs);
        std::nth_element(top.begin(), top.begin() + (r - 1), top.end(), std::greater<int>());
        long long reach = 0;
        for (int i = 0; i < r; ++i) reach += top[i];
        if (reach < uncovered_count) return false;
        // Branch over the dominators of u, best coverage first.
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](Vertex a, Vertex b) { return covs[a] > covs[b]; });
        std::vector<uint64_t> next(rows.words);
        for (Vertex w : candidates) {
            const uint64_t* rw = rows.row(w);
            int count = 0;
            for (int i = 0; i < rows.words; ++i) {
                next[i] = uncovered[i] & ~rw[i];
                count += std::popcount(next[i]);
            }
            if (decide(next, count, r - 1)) return true;
        }
        return false;
    }
};

} // namespace

VertexSet greedy_dominating_set(const Graph& g) {
    std::vector<char> covered(g.n(), 0);
    int remaining = g.n();
    VertexSet chosen;
    while (remaining > 0) {
        Vertex best = -1;
        int best_gain = -1;
        for (Vertex v = 0; v < g.n(); ++v) {
            int gain = covered[v] ? 0 : 1;
            for (Vertex w : g.neighbors(v))
                if (!covered[w]) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
            }
        }
        if (!covered[best]) --remaining, covered[best] = 1;
        for (Vertex w : g.neighbors(best))
            if (!covered[w]) --remaining, covered[w] = 1;
        chosen.push_back(best);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

int exact_domination(const Graph& g, std::optional<int> size_cap,
                     const DominationLimits& limits) {
    int n = g.n();
    if (n == 0) return 0;
    int greedy_size = static_cast<int>(greedy_dominating_set(g).size());
    int highest = size_cap ? std::min(*size_cap, n) : n;
    DomRows rows = build_rows(g);
    DomSearch search{g, rows, limits.node_budget, 0};
    for (int s = 1; s <= highest; ++s) {
        if (s >= greedy_size) return size_cap ? std::min(greedy_size, *size_cap + 1) : greedy_size;
        std::vector<uint64_t> uncovered(rows.words, ~uint64_t(0));
        if (n % 64) uncovered[rows.words - 1] = (uint64_t(1) << (n % 64)) - 1;
        if (search.decide(uncovered, n, s)) return s;
    }
    return size_cap ? *size_cap + 1 : n;
}

Coloring domination_coloring(const Graph& g, const VertexSet& s) {
    g.check_set(s);
    if (!is_dominating(g, s)) throw InputError("domination coloring requires a dominating set");
    Coloring c;
    c.color_of.assign(g.n(), 0);
    int next = 1;
    for (Vertex v : s) c.color_of[v] = next++;
    return c;
}

double CfcParams::tail_threshold(int n) const {
    switch (tail) {
        case TailRule::LnLn:
            return n >= 3 ? std::log(std::log(static_cast<double>(n))) : 0.0;
        case TailRule::LogLog2:
            return n >= 4 ? std::log2(std::log2(static_cast<double>(n))) : 0.0;
        case TailRule::Const:
            return tail_const;
    }
    return 0.0;
}

CfcRun algorithm_cfc(const Graph& g, const CfcParams& params) {
    if (!(params.p > 0.0 && params.p < 1.0)) throw InputError("algorithm_cfc requires 0 < p < 1");
    if (!(params.delta > 0.0 && params.delta < 1.0))
        throw InputError("algorithm_cfc requires 0 < delta < 1");
    if (!(params.big_k > 0.0)) throw InputError("algorithm_cfc requires K > 0");
    int n = g.n();
    CfcRun run;
    run.coloring.color_of.assign(n, -1);
    int m = static_cast<int>(std::floor(1.0 / params.p));
    double tail_bound = params.tail_threshold(n);

    std::vector<char> alive(n, 1);
    int alive_count = n;
    std::vector<int> hits(n, 0);
    int round = 0;
    while (alive_count > tail_bound && params.p > params.big_k / alive_count) {
        ++round;
        CfcRound rec;
        // Grow the independent set: repeatedly take the smallest vertex of
        // the current non-neighborhood. Removing N[v] keeps the scan cursor
        // monotone within the round.
        std::vector<char> candidate(alive.begin(), alive.end());
        Vertex cursor = 0;
        while (static_cast<int>(rec.selected.size()) < m) {
            while (cursor < n && !candidate[cursor]) ++cursor;
            if (cursor >= n) break;
            Vertex v = cursor;
            rec.selected.push_back(v);
            candidate[v] = 0;
            for (Vertex w : g.neighbors(v)) candidate[w] = 0;
        }
        for (Vertex v : rec.selected) {
            for (Vertex w : g.neighbors(v))
                if (alive[w]) ++hits[w];
        }
        for (Vertex w = 0; w < n; ++w) {
            if (alive[w] && hits[w] == 1 && !set_contains(rec.selected, w))
                rec.cared.push_back(w);
        }
        // reset hit counters for the next round
        for (Vertex v : rec.selected)
            for (Vertex w : g.neighbors(v)) hits[w] = 0;
        for (Vertex v : rec.selected) {
            run.coloring.color_of[v] = round;
            alive[v] = 0;
        }
        for (Vertex w : rec.cared) {
            run.coloring.color_of[w] = 0;
            alive[w] = 0;
            run.trace.filler_used = true;
        }
        alive_count -= static_cast<int>(rec.selected.size() + rec.cared.size());
        rec.remaining = alive_count;
        run.trace.rounds.push_back(std::move(rec));
    }

    // Tail: proper coloring of the residual graph with fresh colors.
    run.trace.tail_size = alive_count;
    if (alive_count > 0) {
        std::vector<Vertex> residual;
        std::vector<int> local(n, -1);
        for (Vertex v = 0; v < n; ++v)
            if (alive[v]) {
                local[v] = static_cast<int>(residual.size());
                residual.push_back(v);
            }
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v : residual)
            for (Vertex w : g.neighbors(v))
                if (w > v && alive[w]) edges.emplace_back(local[v], local[w]);
        Graph tail(alive_count, edges);
        DegeneracyResult deg = degeneracy(tail);
        run.trace.tail_degeneracy = deg.degeneracy;
        std::vector<int> tail_colors = greedy_degeneracy_coloring(tail, deg, round + 1);
        for (Vertex v : residual) run.coloring.color_of[v] = tail_colors[local[v]];
    }

    run.trace.colors_used = round + (alive_count > 0 ? run.trace.tail_degeneracy + 1 : 0) +
                            (run.trace.filler_used ? 1 : 0);
    if (run.trace.filler_used) run.coloring.filler = 0;
    return run;
}

CfPrimeExact exact_cf_prime(const Graph& g, int cap) {
    cap = std::min(cap, 14);
    int n = g.n();
    if (n > cap)
        throw CapError("exact covering-family search capped at n <= " + std::to_string(cap) +
                       ", got n = " + std::to_string(n));
    CfPrimeExact out;
    if (n == 0) return out;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 0)
            throw InputError("no finite covering family exists: vertex " + std::to_string(v) +
                             " is isolated");
    auto adj = adjacency_masks32(g);
    uint32_t full = (uint32_t(1) << n) - 1;
    uint32_t num_sets = full; // candidate sets are the non-empty subsets 1..full
    std::vector<uint32_t> covers(num_sets + 1, 0);
    for (uint32_t f = 1; f <= num_sets; ++f) {
        uint32_t c = 0;
        for (Vertex x = 0; x < n; ++x)
            if (std::popcount(adj[x] & f) == 1) c |= uint32_t(1) << x;
        covers[f] = c;
    }
    // Shortest cover by BFS over covered-vertex states; first reach wins, and
    // candidate sets are tried in ascending mask order, so the witness is
    // deterministic.
    std::vector<int> dist(full + 1, -1);
    std::vector<std::pair<uint32_t, uint32_t>> parent(full + 1); // (prev state, set)
    std::vector<uint32_t> frontier{0};
    dist[0] = 0;
    while (dist[full] < 0) {
        std::vector<uint32_t> next_frontier;
        for (uint32_t state : frontier) {
            for (uint32_t f = 1; f <= num_sets; ++f) {
                uint32_t next = state | covers[f];
                if (dist[next] < 0) {
                    dist[next] = dist[state] + 1;
                    parent[next] = {state, f};
                    next_frontier.push_back(next);
                }
            }
        }
        if (next_frontier.empty()) break; // unreachable; cannot happen without isolated vertices
        frontier = std::move(next_frontier);
    }
    out.value = dist[full];
    std::vector<uint32_t> chosen;
    for (uint32_t state = full; state != 0; state = parent[state].first)
        chosen.push_back(parent[state].second);
    std::sort(chosen.begin(), chosen.end());
    for (uint32_t f : chosen) {
        VertexSet s;
        for (Vertex v = 0; v < n; ++v)
            if (f >> v & 1) s.push_back(v);
        out.family.sets.push_back(std::move(s));
    }
    return out;
}

} // namespace cfc
