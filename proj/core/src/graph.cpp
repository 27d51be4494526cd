#include "cfchroma/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace cfc {

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : n_(n) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    adj_.assign(n, {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("edge endpoint out of range: (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    m_ = static_cast<long long>(edges.size());
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw InputError("duplicate edge in edge list");
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (degree(u) > degree(v)) std::swap(u, v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(static_cast<size_t>(m_));
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::check_set(const VertexSet& s) const {
    Vertex prev = -1;
    for (Vertex v : s) {
        check_vertex(v);
        if (v <= prev) throw InputError("vertex set must be sorted ascending without duplicates");
        prev = v;
    }
}

VertexSet closed_neighborhood(const Graph& g, Vertex v) {
    g.check_vertex(v);
    VertexSet out = g.neighbors(v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

VertexSet one_neighborhood(const Graph& g, const VertexSet& s) {
    g.check_set(s);
    std::vector<int> hits(g.n(), 0);
    for (Vertex u : s)
        for (Vertex w : g.neighbors(u)) ++hits[w];
    VertexSet out;
    size_t si = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        while (si < s.size() && s[si] < v) ++si;
        bool in_s = si < s.size() && s[si] == v;
        if (!in_s && hits[v] == 1) out.push_back(v);
    }
    return out;
}

VertexSet non_neighborhood(const Graph& g, const VertexSet& s) {
    g.check_set(s);
    std::vector<char> covered(g.n(), 0);
    for (Vertex u : s) {
        covered[u] = 1;
        for (Vertex w : g.neighbors(u)) covered[w] = 1;
    }
    VertexSet out;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!covered[v]) out.push_back(v);
    return out;
}

DegeneracyResult degeneracy(const Graph& g) {
    DegeneracyResult res;
    int n = g.n();
    if (n == 0) return res; // degeneracy 0 by convention
    std::vector<int> deg(n);
    // Ordered by (current degree, vertex id) so ties go to the smallest id.
    std::set<std::pair<int, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], v);
    }
    std::vector<char> removed(n, 0);
    res.elimination_order.reserve(n);
    while (!queue.empty()) {
        auto [dv, v] = *queue.begin();
        queue.erase(queue.begin());
        res.degeneracy = std::max(res.degeneracy, dv);
        removed[v] = 1;
        res.elimination_order.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (removed[w]) continue;
            queue.erase({deg[w], w});
            --deg[w];
            queue.emplace(deg[w], w);
        }
    }
    return res;
}

std::vector<int> greedy_degeneracy_coloring(const Graph& g, const DegeneracyResult& deg,
                                            int first_color) {
    std::vector<int> color(g.n(), -1);
    std::vector<char> used;
    for (auto it = deg.elimination_order.rbegin(); it != deg.elimination_order.rend(); ++it) {
        Vertex v = *it;
        used.assign(deg.degeneracy + 2, 0);
        for (Vertex w : g.neighbors(v)) {
            if (color[w] >= first_color && color[w] < first_color + deg.degeneracy + 2)
                used[color[w] - first_color] = 1;
        }
        int c = 0;
        while (used[c]) ++c;
        color[v] = first_color + c;
    }
    return color;
}

bool is_independent(const Graph& g, const VertexSet& s) {
    g.check_set(s);
    for (Vertex u : s)
        for (Vertex w : g.neighbors(u))
            if (w > u && set_contains(s, w)) return false;
    return true;
}

namespace {

// Max clique with a greedy coloring bound (Tomita-style) on adjacency masks.
struct CliqueSearch {
    const std::vector<uint64_t>& adj;
    int best = 0;

    void expand(uint64_t cand, int size) {
        if (cand == 0) {
            best = std::max(best, size);
            return;
        }
        // Greedy coloring bound: vertices grouped into independent classes.
        std::vector<int> order;
        std::vector<int> bound;
        uint64_t rest = cand;
        int colors = 0;
        while (rest) {
            ++colors;
            uint64_t avail = rest;
            while (avail) {
                int v = std::countr_zero(avail);
                uint64_t bit = uint64_t(1) << v;
                order.push_back(v);
                bound.push_back(colors);
                rest &= ~bit;
                avail &= ~bit;
                avail &= ~adj[v];
            }
        }
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (size + bound[i] <= best) return;
            int v = order[i];
            expand(cand & adj[v], size + 1);
            cand &= ~(uint64_t(1) << v);
        }
    }
};

} // namespace

int max_independent_set_size(const Graph& g, int cap) {
    int n = g.n();
    if (cap > 64) cap = 64;
    if (n > cap)
        throw CapError("exact independence number capped at n <= " + std::to_string(cap) +
                       ", got n = " + std::to_string(n));
    if (n == 0) return 0;
    // alpha(G) = omega(complement of G)
    std::vector<uint64_t> comp(n, 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && !g.has_edge(u, v)) comp[u] |= uint64_t(1) << v;
    CliqueSearch search{comp};
    uint64_t all = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    search.expand(all, 0);
    return search.best;
}

double WeightedGraph::weight(Vertex v) const {
    graph.check_vertex(v);
    double w = 1.0;
    for (int i = 0; i < layer_of[v]; ++i) w *= base;
    return w;
}

double set_weight(const WeightedGraph& wg, const VertexSet& s) {
    wg.graph.check_set(s);
    double total = 0.0;
    for (Vertex v : s) total += wg.weight(v);
    return total;
}

Graph empty_graph(int n) { return Graph(n, {}); }

Graph complete_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

Graph path_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
    return Graph(n, e);
}

Graph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
    e.emplace_back(0, n - 1);
    return Graph(n, e);
}

Graph star_graph(int leaves) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph(leaves + 1, e);
}

bool set_contains(const VertexSet& s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return true;
}

int intersection_size(const VertexSet& a, const VertexSet& b) {
    size_t i = 0, j = 0;
    int count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) ++count, ++i, ++j;
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return count;
}

} // namespace cfc
