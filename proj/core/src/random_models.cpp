#include "cfchroma/random_models.hpp"

#include <cmath>

namespace cfc {

double mu(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("mu(p) requires 0 < p < 1");
    int m = static_cast<int>(std::floor(1.0 / p));
    double q = 1.0;
    if (m - 1 <= 4096) {
        for (int i = 0; i < m - 1; ++i) q *= 1.0 - p; // exact repeated product
    } else {
        q = std::pow(1.0 - p, m - 1);
    }
    return m * p * q;
}

TheoryReport theory_bounds(int n, double p, double eps) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("theory_bounds requires 0 < p < 1");
    if (eps < 0.0) throw InputError("theory_bounds requires eps >= 0");
    if (n < 3) throw InputError("theory_bounds requires n >= 3 (ln ln n must be defined)");
    if (!(n * p > 1.0)) throw InputError("theory_bounds requires np > 1");
    TheoryReport r;
    r.n = n;
    r.p = p;
    r.eps = eps;
    r.mu = mu(p);
    r.m = static_cast<int>(std::floor(1.0 / p));
    double denom = -std::log1p(-r.mu);
    double lognp = std::log(static_cast<double>(n) * p);
    r.cf_lower = (1.0 - eps) * lognp / denom;
    r.cf_upper = (1.0 + eps) * lognp / denom;
    double logn = std::log(static_cast<double>(n));
    double num = logn - 2.0 * std::log(logn) + std::log(-std::log1p(-p));
    r.domination_formula = static_cast<int>(std::floor(num / (-std::log1p(-p)) + 1e-9)) + 1;
    return r;
}

std::vector<int> layered_layer_sizes(int n) {
    if (n < 3) throw InputError("layered model requires n >= 3");
    int k = static_cast<int>(std::floor(std::log(static_cast<double>(n))));
    int lo = n / k;
    int rem = n % k;
    std::vector<int> sizes(k, lo);
    // Earlier layers absorb the remainder; they carry the larger weights, so
    // this errs toward a denser graph.
    for (int i = 0; i < rem; ++i) ++sizes[i];
    return sizes;
}

Graph sample_gnp(const GnpSpec& spec) {
    if (spec.n < 0) throw InputError("G(n,p) requires n >= 0");
    if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InputError("G(n,p) requires 0 <= p <= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (spec.p > 0.0) {
        for (Vertex v = 1; v < spec.n; ++v) {
            uint64_t row = static_cast<uint64_t>(v) * (v - 1) / 2;
            for (Vertex u = 0; u < v; ++u) {
                if (stream::unit_double(spec.seed, row + u) < spec.p) edges.emplace_back(u, v);
            }
        }
    }
    return Graph(spec.n, edges);
}

WeightedGraph sample_layered(const LayeredSpec& spec) {
    if (!(spec.base > 0.0 && spec.base < 1.0)) throw InputError("layered base must be in (0,1)");
    auto sizes = layered_layer_sizes(spec.n); // validates n >= 3
    WeightedGraph wg;
    wg.base = spec.base;
    wg.layer_count = static_cast<int>(sizes.size());
    wg.layer_of.reserve(spec.n);
    for (int i = 0; i < wg.layer_count; ++i)
        for (int c = 0; c < sizes[i]; ++c) wg.layer_of.push_back(i + 1);
    // base^e for e up to 2k, by repeated multiplication so the sampler never
    // touches libm and stays bit-reproducible.
    std::vector<double> pw(2 * wg.layer_count + 1, 1.0);
    for (size_t e = 1; e < pw.size(); ++e) pw[e] = pw[e - 1] * spec.base;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < spec.n; ++v) {
        uint64_t row = static_cast<uint64_t>(v) * (v - 1) / 2;
        for (Vertex u = 0; u < v; ++u) {
            double p = pw[wg.layer_of[u] + wg.layer_of[v]];
            if (stream::unit_double(spec.seed, row + u) < p) edges.emplace_back(u, v);
        }
    }
    wg.graph = Graph(spec.n, edges);
    return wg;
}

double care_probability(const WeightedGraph& wg, Vertex x, const VertexSet& s) {
    wg.graph.check_vertex(x);
    wg.graph.check_set(s);
    if (set_contains(s, x)) throw InputError("care_probability requires x outside S");
    double wx = wg.weight(x);
    // sum_s' q_s' * prod_{y != s'} (1 - q_y)  ==  prod_y (1 - q_y) * sum_s' q_s'/(1 - q_s')
    // with q_y = w_y * w_x; all q_y <= base^2 < 1, so the division is safe.
    double prod = 1.0;
    double ratio = 0.0;
    for (Vertex y : s) {
        double q = wg.weight(y) * wx;
        prod *= 1.0 - q;
        ratio += q / (1.0 - q);
    }
    return prod * ratio;
}

} // namespace cfc
