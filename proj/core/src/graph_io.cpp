#include "cfchroma/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cfc {

std::string write_graph_text(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.n() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

Graph read_graph_text(std::istream& in) {
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '\r') continue;
        std::istringstream ss(line);
        char tag;
        ss >> tag;
        if (tag == 'p') {
            std::string fmt;
            if (!(ss >> fmt >> n >> m) || fmt != "edge")
                throw InputError("malformed problem line: " + line);
            edges.reserve(static_cast<size_t>(m));
        } else if (tag == 'e') {
            if (n < 0) throw InputError("edge line before problem line");
            long long u, v;
            if (!(ss >> u >> v)) throw InputError("malformed edge line: " + line);
            if (u < 1 || v < 1 || u > n || v > n)
                throw InputError("edge endpoint out of 1..n range: " + line);
            if (u >= v) throw InputError("edge lines require u < v: " + line);
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        } else {
            throw InputError("unexpected line in graph file: " + line);
        }
    }
    if (n < 0) throw InputError("graph file has no problem line");
    if (static_cast<long long>(edges.size()) != m)
        throw InputError("edge count mismatch: header says " + std::to_string(m) + ", found " +
                         std::to_string(edges.size()));
    return Graph(n, edges); // rejects duplicates and self-loops
}

namespace {

nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

} // namespace

std::string write_graph_json(const Graph& g) { return graph_to_json(g).dump() + "\n"; }

std::string write_graph_json(const WeightedGraph& wg) {
    auto j = graph_to_json(wg.graph);
    j["layers"] = wg.layer_of;
    j["base"] = wg.base;
    return j.dump() + "\n";
}

LoadedGraph read_graph_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON graph file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw InputError("JSON graph needs fields \"n\" and \"edges\"");
    int n = j.at("n").get<int>();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair [u, v]");
        Vertex u = e[0].get<Vertex>();
        Vertex v = e[1].get<Vertex>();
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    LoadedGraph out;
    out.graph = Graph(n, edges);
    if (j.contains("layers")) {
        WeightedGraph wg;
        wg.graph = out.graph;
        wg.layer_of = j.at("layers").get<std::vector<int>>();
        if (static_cast<int>(wg.layer_of.size()) != n)
            throw InputError("\"layers\" must list one layer per vertex");
        wg.base = j.value("base", 0.99);
        if (!(wg.base > 0.0 && wg.base < 1.0)) throw InputError("\"base\" must lie in (0,1)");
        int maxl = 0;
        for (int l : wg.layer_of) {
            if (l < 1) throw InputError("layer indices are 1-based");
            maxl = std::max(maxl, l);
        }
        wg.layer_count = maxl;
        out.weighted = std::move(wg);
    }
    return out;
}

LoadedGraph load_graph(std::istream& in) {
    // Sniff: JSON starts with '{'; the text format starts with 'c' or 'p'.
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        in.get();
        c = in.peek();
    }
    if (c == '{') return read_graph_json(in);
    LoadedGraph out;
    out.graph = read_graph_text(in);
    return out;
}

LoadedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return load_graph(in);
}

namespace {

bool wants_json(const std::string& path) {
    return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << content;
}

} // namespace

void save_graph_file(const std::string& path, const Graph& g) {
    write_file(path, wants_json(path) ? write_graph_json(g) : write_graph_text(g));
}

void save_graph_file(const std::string& path, const WeightedGraph& wg) {
    // Layer data only exists in the JSON format.
    write_file(path, write_graph_json(wg));
}

} // namespace cfc
