#include <doctest.h>

#include <algorithm>

#include "cfchroma/graph.hpp"
#include "cfchroma/random_models.hpp"
#include "test_util.hpp"

using namespace cfc;

TEST_SUITE_BEGIN("graph");

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), InputError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InputError); // duplicate
    Graph g(3, {{0, 1}, {1, 2}});
    CHECK(g.n() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
}

TEST_CASE("closed neighborhood") {
    CHECK(closed_neighborhood(complete_graph(3), 0) == VertexSet{0, 1, 2});
    Graph with_iso(4, {{1, 2}});
    CHECK(closed_neighborhood(with_iso, 0) == VertexSet{0});
    CHECK(closed_neighborhood(with_iso, 3) == VertexSet{3});
    CHECK(closed_neighborhood(path_graph(3), 1) == VertexSet{0, 1, 2});
    CHECK_THROWS_AS(closed_neighborhood(path_graph(3), 3), InputError);
}

TEST_CASE("one neighborhood") {
    Graph k3 = complete_graph(3);
    CHECK(one_neighborhood(k3, {}) == VertexSet{});
    CHECK(one_neighborhood(k3, {0}) == VertexSet{1, 2});
    // path 0-1-2-3: vertex 1 has two neighbors in {0,2}, vertex 3 has one
    CHECK(one_neighborhood(path_graph(4), {0, 2}) == VertexSet{3});
}

TEST_CASE("non neighborhood") {
    CHECK(non_neighborhood(complete_graph(4), {0}) == VertexSet{});
    CHECK(non_neighborhood(path_graph(4), {}) == VertexSet{0, 1, 2, 3});
    CHECK(non_neighborhood(path_graph(4), {0}) == VertexSet{2, 3});
}

TEST_CASE("neighborhood operators never return members of s") {
    for (const auto& [name, g] : testutil::small_corpus()) {
        CAPTURE(name);
        for (uint64_t probe = 0; probe < 20; ++probe) {
            VertexSet s;
            for (Vertex v = 0; v < g.n(); ++v)
                if (stream::unit_double(991, probe * 100 + v) < 0.4) s.push_back(v);
            VertexSet one = one_neighborhood(g, s);
            VertexSet non = non_neighborhood(g, s);
            CHECK(sets_disjoint(one, s));
            CHECK(sets_disjoint(non, s));
            CHECK(sets_disjoint(one, non));
            // everything outside s, one-nbhd and non-nbhd has >= 2 neighbors in s
            for (Vertex v = 0; v < g.n(); ++v) {
                if (set_contains(s, v) || set_contains(one, v) || set_contains(non, v)) continue;
                CHECK(intersection_size(g.neighbors(v), s) >= 2);
            }
        }
    }
}

TEST_CASE("degeneracy matches the subgraph oracle") {
    CHECK(degeneracy(complete_graph(5)).degeneracy == 4);
    CHECK(degeneracy(star_graph(6)).degeneracy == 1);   // a tree
    CHECK(degeneracy(path_graph(7)).degeneracy == 1);   // a tree
    CHECK(degeneracy(cycle_graph(6)).degeneracy == oracle::degeneracy(cycle_graph(6)));
    CHECK(degeneracy(empty_graph(0)).degeneracy == 0);
    CHECK(degeneracy(empty_graph(1)).degeneracy == 0);
    for (const auto& [name, g] : testutil::small_corpus()) {
        if (g.n() > 10) continue;
        CAPTURE(name);
        CHECK(degeneracy(g).degeneracy == oracle::degeneracy(g));
    }
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = sample_gnp({9, 0.4, seed});
        CHECK(degeneracy(g).degeneracy == oracle::degeneracy(g));
    }
}

TEST_CASE("degeneracy elimination order removes a minimum degree vertex each step") {
    for (const auto& [name, g] : testutil::small_corpus()) {
        CAPTURE(name);
        DegeneracyResult res = degeneracy(g);
        REQUIRE(static_cast<int>(res.elimination_order.size()) == g.n());
        std::vector<char> removed(g.n(), 0);
        for (Vertex v : res.elimination_order) {
            auto live_degree = [&](Vertex u) {
                int d = 0;
                for (Vertex w : g.neighbors(u))
                    if (!removed[w]) ++d;
                return d;
            };
            int dv = live_degree(v);
            for (Vertex u = 0; u < g.n(); ++u) {
                if (removed[u] || u == v) continue;
                int du = live_degree(u);
                CHECK(dv <= du);
                if (u < v) CHECK(du > dv); // smallest id wins ties
            }
            removed[v] = 1;
        }
    }
}

TEST_CASE("greedy coloring along reverse elimination order is proper within d+1 colors") {
    for (const auto& [name, g] : testutil::small_corpus()) {
        CAPTURE(name);
        DegeneracyResult res = degeneracy(g);
        std::vector<int> colors = greedy_degeneracy_coloring(g, res);
        for (auto [u, v] : g.edges()) CHECK(colors[u] != colors[v]);
        for (int c : colors) CHECK(c <= res.degeneracy);
    }
}

TEST_CASE("independence") {
    CHECK(is_independent(complete_graph(3), {}));
    CHECK(!is_independent(complete_graph(3), {0, 1}));
    CHECK(is_independent(cycle_graph(4), {0, 2}));
    CHECK(max_independent_set_size(empty_graph(5)) == 5);
    CHECK(max_independent_set_size(complete_graph(5)) == 1);
    CHECK(max_independent_set_size(cycle_graph(5)) == 2);
    CHECK_THROWS_AS(max_independent_set_size(empty_graph(50), 40), CapError);
    for (const auto& [name, g] : testutil::small_corpus()) {
        if (g.n() > 10) continue;
        CAPTURE(name);
        CHECK(max_independent_set_size(g) == oracle::independence_number(g));
    }
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = sample_gnp({10, 0.5, seed + 77});
        CHECK(max_independent_set_size(g) == oracle::independence_number(g));
    }
}

TEST_CASE("weighted graph weights and set weight") {
    WeightedGraph wg = sample_layered({100, 0.99, 5});
    CHECK(set_weight(wg, {}) == 0.0);
    CHECK(wg.layer_of[0] == 1);
    CHECK(wg.weight(0) == doctest::Approx(0.99).epsilon(1e-12));
    // two vertices of layer 2: 2 * 0.99^2 = 1.9602
    VertexSet two_l2;
    for (Vertex v = 0; v < wg.graph.n() && two_l2.size() < 2; ++v)
        if (wg.layer_of[v] == 2) two_l2.push_back(v);
    REQUIRE(two_l2.size() == 2);
    CHECK(set_weight(wg, two_l2) == doctest::Approx(1.9602).epsilon(1e-12));
}

TEST_CASE("set weight is additive over disjoint unions") {
    WeightedGraph wg = sample_layered({60, 0.99, 11});
    for (uint64_t probe = 0; probe < 30; ++probe) {
        VertexSet a, b;
        for (Vertex v = 0; v < wg.graph.n(); ++v) {
            double u = stream::unit_double(1234, probe * 1000 + v);
            if (u < 0.2) a.push_back(v);
            else if (u < 0.4) b.push_back(v);
        }
        double lhs = set_weight(wg, set_union(a, b));
        double rhs = set_weight(wg, a) + set_weight(wg, b);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_SUITE_END();
