#include "cfchroma/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace cfc {

namespace {

void check_total(const Graph& g, const Coloring& c) {
    if (static_cast<int>(c.color_of.size()) != g.n())
        throw InputError("coloring must assign a color to every vertex (got " +
                         std::to_string(c.color_of.size()) + " colors for n = " +
                         std::to_string(g.n()) + ")");
    for (int col : c.color_of)
        if (col < 0) throw InputError("color ids must be non-negative");
}

// Dense relabeling so per-vertex counting can use a flat array.
std::vector<int> dense_colors(const Coloring& c, int* filler_dense) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(c.color_of.size());
    for (size_t i = 0; i < c.color_of.size(); ++i) {
        auto [it, inserted] = remap.emplace(c.color_of[i], static_cast<int>(remap.size()));
        out[i] = it->second;
    }
    *filler_dense = -1;
    if (c.filler) {
        auto it = remap.find(*c.filler);
        if (it != remap.end()) *filler_dense = it->second;
    }
    return out;
}

} // namespace

CfVerdict is_conflict_free(const Graph& g, const Coloring& c, bool respect_filler) {
    check_total(g, c);
    int filler = -1;
    std::vector<int> col = dense_colors(c, &filler);
    if (!respect_filler) filler = -1;
    std::vector<int> count(col.size() + 1, 0);
    for (Vertex x = 0; x < g.n(); ++x) {
        if (g.degree(x) == 0) continue; // isolated vertices always pass
        count[col[x]] = 1;
        for (Vertex y : g.neighbors(x)) ++count[col[y]];
        bool ok = count[col[x]] == 1 && col[x] != filler;
        if (!ok)
            for (Vertex y : g.neighbors(x))
                if (count[col[y]] == 1 && col[y] != filler) {
                    ok = true;
                    break;
                }
        count[col[x]] = 0;
        for (Vertex y : g.neighbors(x)) count[col[y]] = 0;
        if (!ok) {
            CfVerdict v;
            v.ok = false;
            v.vertex = x;
            std::ostringstream msg;
            msg << "no vertex of N[" << x << "] has a unique";
            if (filler >= 0) msg << " non-filler";
            msg << " color within N[" << x << "]";
            v.explanation = msg.str();
            return v;
        }
    }
    return {};
}

VertexSet unique_color_witnesses(const Graph& g, const Coloring& c, Vertex v) {
    check_total(g, c);
    g.check_vertex(v);
    int filler = -1;
    std::vector<int> col = dense_colors(c, &filler);
    std::vector<int> count(col.size() + 1, 0);
    VertexSet nbhd = closed_neighborhood(g, v);
    for (Vertex y : nbhd) ++count[col[y]];
    VertexSet out;
    for (Vertex y : nbhd)
        if (count[col[y]] == 1) out.push_back(y);
    return out;
}

bool is_dominating(const Graph& g, const VertexSet& s) {
    return non_neighborhood(g, s).empty();
}

namespace {

void check_spoil_family(const Graph& g, Vertex x, const SetFamily& fam, int f) {
    g.check_vertex(x);
    for (const auto& a : fam.sets) {
        g.check_set(a);
        if (static_cast<int>(a.size()) > f)
            throw InputError("spoiling family set exceeds size threshold f");
        if (set_contains(a, x)) throw InputError("spoiler candidate lies inside the family");
    }
    for (size_t i = 0; i < fam.sets.size(); ++i)
        for (size_t j = i + 1; j < fam.sets.size(); ++j)
            if (!sets_disjoint(fam.sets[i], fam.sets[j]))
                throw InputError("spoiling family sets must be pairwise disjoint");
}

} // namespace

bool is_spoiler(const Graph& g, Vertex x, const SetFamily& fam, int f) {
    check_spoil_family(g, x, fam, f);
    const auto& nb = g.neighbors(x);
    for (const auto& a : fam.sets) {
        int hits = intersection_size(nb, a);
        if (hits == 1) return false;
        if (static_cast<int>(a.size()) == f && hits < 2) return false;
    }
    return true;
}

namespace {

uint64_t bit(int v) { return uint64_t(1) << v; }

VertexSet mask_to_set(uint64_t m) {
    VertexSet out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// All n-bit masks with popcount between lo and hi, ascending numerically
// (Gosper's hack per popcount class, then merged by sort).
std::vector<uint64_t> masks_by_popcount(int n, int lo, int hi) {
    std::vector<uint64_t> out;
    if (lo <= 0) {
        out.push_back(0);
        lo = 1;
    }
    for (int s = lo; s <= std::min(hi, n); ++s) {
        uint64_t m = (bit(s) - 1);
        uint64_t stop = (n >= 64) ? ~uint64_t(0) : bit(n) - 1;
        while (m <= stop) {
            out.push_back(m);
            uint64_t c = m & -m;
            uint64_t r = m + c;
            if (r > stop || r < m) break;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double families_estimate(int n, int k, int f) {
    double num_sets = 0.0;
    double binom = 1.0;
    for (int s = 1; s <= f && s <= n; ++s) {
        binom = binom * (n - s + 1) / s;
        num_sets += binom;
    }
    // Unordered families of at most k sets, disjointness ignored, so this
    // upper-bounds the true candidate count.
    double total = 1.0;
    double choose = 1.0;
    for (int j = 1; j <= k; ++j) {
        choose = choose * std::max(num_sets - j + 1, 0.0) / j;
        total += choose;
    }
    return total;
}

struct SpoilSearch {
    const std::vector<uint64_t>& adj;
    const std::vector<uint64_t>& candidate_sets; // ascending masks, popcount <= f
    int n;
    int k;
    int f;
    uint64_t all;
    std::vector<uint64_t> chosen;

    bool x_survives(uint64_t adj_x, uint64_t set_mask) const {
        int hits = std::popcount(adj_x & set_mask);
        if (hits == 1) return false;
        if (std::popcount(set_mask) == f && hits < 2) return false;
        return true;
    }

    // Returns true when an unspoiled family was found (stored in chosen).
    bool dfs(size_t from, uint64_t used, uint64_t cand, int depth) {
        if (cand == 0) return true; // no spoiler survives: witness found
        if (depth == k) return false;
        for (size_t i = from; i < candidate_sets.size(); ++i) {
            uint64_t m = candidate_sets[i];
            if (m & used) continue;
            uint64_t next = cand & ~m;
            uint64_t scan = next;
            while (scan) {
                int x = std::countr_zero(scan);
                scan &= scan - 1;
                if (!x_survives(adj[x], m)) next &= ~bit(x);
            }
            chosen.push_back(m);
            if (dfs(i + 1, used | m, next, depth + 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

} // namespace

SpoilVerdict is_kf_spoiling(const Graph& g, const SpoilSpec& spec,
                            const SpoilSearchLimits& limits) {
    if (spec.k < 0 || spec.f < 1) throw InputError("spoiling spec requires k >= 0 and f >= 1");
    if (spec.k == 0) return {}; // every graph is 0-spoiling
    int n = g.n();
    if (n > 64)
        throw CapError("exhaustive spoiling search supports n <= 64, got n = " +
                       std::to_string(n));
    double estimate = families_estimate(n, spec.k, spec.f);
    if (estimate > limits.max_families) {
        std::ostringstream msg;
        msg << "spoiling search refused: ~" << estimate << " candidate families exceed cap "
            << limits.max_families;
        throw CapError(msg.str());
    }
    std::vector<uint64_t> adj(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) adj[v] |= bit(w);
    std::vector<uint64_t> sets = masks_by_popcount(n, 1, spec.f);
    uint64_t all = (n >= 64) ? ~uint64_t(0) : (bit(n) - 1);
    SpoilSearch search{adj, sets, n, spec.k, spec.f, all, {}};
    SpoilVerdict verdict;
    // For n = 0 the search starts with no spoiler candidates at all, so the
    // empty family is already an unspoiled witness.
    if (search.dfs(0, 0, all, 0)) {
        verdict.spoiling = false;
        for (uint64_t m : search.chosen) verdict.witness.sets.push_back(mask_to_set(m));
    }
    return verdict;
}

UniversalVerdict is_k_universal(const Graph& g, int k, const SpoilSearchLimits& limits) {
    if (k < 0) throw InputError("universality requires k >= 0");
    int n = g.n();
    if (n > 64)
        throw CapError("exhaustive universality check supports n <= 64, got n = " +
                       std::to_string(n));
    double pairs = 0.0;
    double binom = 1.0;
    for (int a = 0; a <= std::min(k, n); ++a) {
        pairs += binom * std::pow(2.0, a);
        binom = binom * (n - a) / (a + 1);
    }
    if (pairs > limits.max_families) {
        std::ostringstream msg;
        msg << "universality check refused: ~" << pairs << " (A,B) patterns exceed cap "
            << limits.max_families;
        throw CapError(msg.str());
    }
    std::vector<uint64_t> adj(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) adj[v] |= bit(w);
    for (uint64_t a : masks_by_popcount(n, 0, k)) {
        // Submasks of a in ascending numeric order.
        uint64_t b = 0;
        while (true) {
            bool realized = false;
            for (Vertex x = 0; x < n && !realized; ++x)
                if (!(a & bit(x)) && (adj[x] & a) == b) realized = true;
            if (!realized) {
                UniversalVerdict v;
                v.universal = false;
                v.witness_a = mask_to_set(a);
                v.witness_b = mask_to_set(b);
                return v;
            }
            if (b == a) break;
            b = (b - a) & a;
        }
    }
    return {};
}

CoverVerdict is_cover_family(const Graph& g, const SetFamily& fam, bool closed_mode) {
    for (const auto& f : fam.sets) g.check_set(f);
    std::vector<char> covered(g.n(), 0);
    for (const auto& f : fam.sets) {
        std::vector<int> hits(g.n(), 0);
        for (Vertex u : f)
            for (Vertex w : g.neighbors(u)) ++hits[w];
        if (closed_mode)
            for (Vertex u : f) ++hits[u];
        for (Vertex v = 0; v < g.n(); ++v)
            if (hits[v] == 1) covered[v] = 1;
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (!covered[v]) return {false, v};
    return {};
}

std::string write_coloring_json(const Coloring& c) {
    nlohmann::ordered_json j;
    j["colors"] = c.color_of;
    if (c.filler) j["filler"] = *c.filler;
    else j["filler"] = nullptr;
    return j.dump(2) + "\n";
}

Coloring read_coloring_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON coloring file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("colors"))
        throw InputError("coloring file needs a \"colors\" array");
    Coloring c;
    c.color_of = j.at("colors").get<std::vector<int>>();
    if (j.contains("filler") && !j.at("filler").is_null()) c.filler = j.at("filler").get<int>();
    return c;
}

Coloring read_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open coloring file: " + path);
    return read_coloring_json(in);
}

std::string write_family_json(const SetFamily& fam) {
    nlohmann::ordered_json j;
    j["sets"] = fam.sets;
    return j.dump(2) + "\n";
}

SetFamily read_family_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON family file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("sets"))
        throw InputError("family file needs a \"sets\" array");
    SetFamily fam;
    for (const auto& s : j.at("sets")) {
        VertexSet vs = s.get<VertexSet>();
        std::sort(vs.begin(), vs.end());
        fam.sets.push_back(std::move(vs));
    }
    return fam;
}

SetFamily read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open family file: " + path);
    return read_family_json(in);
}

} // namespace cfc
