#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfchroma/graph.hpp"

namespace cfc {

/// Total vertex coloring. Color ids are arbitrary non-negative integers; an
/// optional filler color can be designated (Algorithm CFC uses color 0).
struct Coloring {
    std::vector<int> color_of;
    std::optional<int> filler;
};

/// Ordered list of vertex subsets. Spoiling requires pairwise disjoint sets;
/// covering families may overlap.
struct SetFamily {
    std::vector<VertexSet> sets;
};

struct SpoilSpec {
    int k = 0; // family size bound, >= 0
    int f = 1; // set size threshold, >= 1
};

struct CfVerdict {
    bool ok = true;
    Vertex vertex = -1; // smallest violating vertex when !ok
    std::string explanation;
};

struct SpoilVerdict {
    bool spoiling = true;
    SetFamily witness; // an unspoiled family when !spoiling
};

struct UniversalVerdict {
    bool universal = true;
    VertexSet witness_a; // a pattern (A, B) with no realizing vertex
    VertexSet witness_b;
};

struct CoverVerdict {
    bool ok = true;
    Vertex uncovered = -1;
};

/// Conflict-free check: every vertex x needs some y in N[x] whose color is
/// unique within N[x]. With respect_filler, filler-colored vertices cannot
/// serve as that witness. Isolated vertices always pass (their closed
/// neighborhood is {x}, so their own color is trivially unique).
CfVerdict is_conflict_free(const Graph& g, const Coloring& c, bool respect_filler = false);

/// The vertices of N[v] whose color appears exactly once in N[v].
VertexSet unique_color_witnesses(const Graph& g, const Coloring& c, Vertex v);

bool is_dominating(const Graph& g, const VertexSet& s);

/// Does x spoil the family: |N(x) ∩ A_i| != 1 for every i, and >= 2 for every
/// full set (|A_i| = f)? Preconditions (x outside the family, pairwise
/// disjoint sets, sizes <= f) are enforced.
bool is_spoiler(const Graph& g, Vertex x, const SetFamily& fam, int f);

struct SpoilSearchLimits {
    double max_families = 1e8; // refuse when the family-count estimate exceeds this
};

/// Exhaustive (k,f)-spoiling decision: every family of at most k pairwise
/// disjoint non-empty sets of size <= f must admit a spoiler outside its
/// union. Families are enumerated with set bitmasks strictly ascending, so
/// the returned witness is canonical. Empty sets are vacuously spoiled, which
/// covers families with fewer than k non-empty sets. k = 0 is always yes.
SpoilVerdict is_kf_spoiling(const Graph& g, const SpoilSpec& spec,
                            const SpoilSearchLimits& limits = {});

/// k-universality: every trace pattern B ⊆ A with |A| <= k is realized as
/// N(x) ∩ A = B by some x outside A.
UniversalVerdict is_k_universal(const Graph& g, int k, const SpoilSearchLimits& limits = {});

/// Covering-family check: every vertex needs some F in the family with
/// |N(x) ∩ F| = 1. The default uses the open neighborhood; closed_mode
/// switches to N[x].
CoverVerdict is_cover_family(const Graph& g, const SetFamily& fam, bool closed_mode = false);

// JSON file formats:
//   coloring: {"colors": [int per vertex], "filler": int|null}
//   family:   {"sets": [[ints], ...]}
std::string write_coloring_json(const Coloring& c);
Coloring read_coloring_json(std::istream& in);
Coloring read_coloring_file(const std::string& path);
std::string write_family_json(const SetFamily& fam);
SetFamily read_family_json(std::istream& in);
SetFamily read_family_file(const std::string& path);

} // namespace cfc
