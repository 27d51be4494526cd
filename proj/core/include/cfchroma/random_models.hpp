#pragma once

#include <cstdint>
#include <vector>

#include "cfchroma/graph.hpp"

namespace cfc {

/// Counter-based deterministic random stream. Value at a given index depends
/// only on (seed, index), so consumers may draw in any order or in parallel
/// and still reproduce bit-identical results. The generator is the splitmix64
/// finalizer over seed + GOLDEN * (index + 1); its outputs are pinned by
/// regression tests.
namespace stream {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr uint64_t at(uint64_t seed, uint64_t index) {
    return mix(seed + kGolden * (index + 1));
}

/// Uniform in [0, 1), 53-bit resolution.
constexpr double unit_double(uint64_t seed, uint64_t index) {
    return static_cast<double>(at(seed, index) >> 11) * 0x1.0p-53;
}

/// Seed for an independent substream (per-trial seeds in experiment runs).
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
    return at(master ^ 0x5D4E9A11C0FFEE00ULL, index);
}

} // namespace stream

struct GnpSpec {
    int n = 0;
    double p = 0.0; // in [0, 1]
    uint64_t seed = 0;
};

struct LayeredSpec {
    int n = 0;          // >= 3 so that k = floor(ln n) >= 1
    double base = 0.99; // in (0, 1)
    uint64_t seed = 0;
};

struct TheoryReport {
    int n = 0;
    double p = 0.0;
    double eps = 0.0;
    double mu = 0.0;
    int m = 0; // floor(1/p)
    double cf_lower = 0.0;
    double cf_upper = 0.0;
    int domination_formula = 0;
};

/// mu(p) = max over i >= 1 of i*p*(1-p)^(i-1), attained at i = floor(1/p).
/// Requires 0 < p < 1.
double mu(double p);

/// Closed-form bounds: cf_lower/(upper) = (1 -/+ eps) * ln(np) / (-ln(1 - mu(p)));
/// domination_formula = floor((ln n - 2 ln ln n + ln ln(1/(1-p))) / (-ln(1-p))
/// + 1e-9) + 1. The 1e-9 upward nudge before the floor guards against
/// representational error flipping the integer; it is a convention of this
/// implementation. Requires n >= 3, np > 1, 0 < p < 1, eps >= 0.
TheoryReport theory_bounds(int n, double p, double eps = 0.0);

/// Number of layers and their sizes for the layered model: k = floor(ln n),
/// the first (n mod k) layers take ceil(n/k) vertices, the rest floor(n/k).
std::vector<int> layered_layer_sizes(int n);

/// G(n,p): each unordered pair is an edge independently with probability p,
/// pair {u,v} (u<v) drawn from stream index v(v-1)/2 + u. p = 0 and p = 1 are
/// allowed and give the empty/complete graph.
Graph sample_gnp(const GnpSpec& spec);

/// Layered model: k = floor(ln n) layers, vertex weights base^layer, edge
/// probability base^(layer(x)+layer(y)) using the same pair-indexed stream.
WeightedGraph sample_layered(const LayeredSpec& spec);

/// Exact probability that x has exactly one neighbor in s when edges x-y are
/// independent with probability w_x * w_y:
///   sum over s' in S of w_s' w_x * prod over y in S \ {s'} of (1 - w_y w_x).
/// Requires x not in s.
double care_probability(const WeightedGraph& wg, Vertex x, const VertexSet& s);

} // namespace cfc
