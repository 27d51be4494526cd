#include <doctest.h>

#include <sstream>

#include "cfchroma/graph_io.hpp"
#include "cfchroma/random_models.hpp"

using namespace cfc;

TEST_SUITE_BEGIN("graph_io");

TEST_CASE("text format round trip is bit exact") {
    Graph g = sample_gnp({30, 0.3, 123});
    std::string text = write_graph_text(g);
    std::istringstream in(text);
    Graph back = read_graph_text(in);
    CHECK(write_graph_text(back) == text);
    CHECK(back.n() == g.n());
    CHECK(back.edges() == g.edges());
}

TEST_CASE("text format header and comments") {
    std::istringstream in("c a comment\np edge 3 2\nc another\ne 1 2\ne 2 3\n");
    Graph g = read_graph_text(in);
    CHECK(g.n() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(!g.has_edge(0, 2));
}

TEST_CASE("text format rejects malformed input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_graph_text(in), InputError);
    };
    reject("e 1 2\n");                      // edge before header
    reject("p edge 3 1\ne 2 1\n");          // u >= v
    reject("p edge 3 1\ne 1 1\n");          // self loop via u >= v
    reject("p edge 3 2\ne 1 2\n");          // count mismatch
    reject("p edge 3 1\ne 1 4\n");          // out of range
    reject("p edge 3 2\ne 1 2\ne 1 2\n");   // duplicate
    reject("p foo 3 0\n");                  // wrong format token
}

TEST_CASE("json format round trip, including layers") {
    WeightedGraph wg = sample_layered({50, 0.99, 9});
    std::string text = write_graph_json(wg);
    std::istringstream in(text);
    LoadedGraph back = read_graph_json(in);
    REQUIRE(back.weighted.has_value());
    CHECK(back.weighted->layer_of == wg.layer_of);
    CHECK(back.weighted->base == wg.base);
    CHECK(back.graph.edges() == wg.graph.edges());
    CHECK(write_graph_json(*back.weighted) == text);
}

TEST_CASE("load sniffs the format") {
    Graph g = sample_gnp({12, 0.5, 4});
    {
        std::istringstream in(write_graph_text(g));
        CHECK(load_graph(in).graph.edges() == g.edges());
    }
    {
        std::istringstream in(write_graph_json(g));
        CHECK(load_graph(in).graph.edges() == g.edges());
    }
}

TEST_CASE("json rejects bad layer data") {
    std::istringstream missing(R"({"n": 3, "edges": [[0,1]], "layers": [1,1]})");
    CHECK_THROWS_AS(read_graph_json(missing), InputError);
    std::istringstream zero_layer(R"({"n": 2, "edges": [], "layers": [0,1]})");
    CHECK_THROWS_AS(read_graph_json(zero_layer), InputError);
    std::istringstream bad_base(R"({"n": 2, "edges": [], "layers": [1,1], "base": 1.5})");
    CHECK_THROWS_AS(read_graph_json(bad_base), InputError);
}

TEST_SUITE_END();
