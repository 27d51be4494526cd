#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfchroma/graph.hpp"
#include "cfchroma/verify.hpp"

namespace cfc {

struct CfExact {
    int value = 0;
    Coloring witness;
};

/// Smallest r admitting a conflict-free r-coloring, with a verifying witness.
/// Iterative deepening on r; backtracking assigns vertices along the reverse
/// degeneracy elimination order, breaks color symmetry by first use, and
/// prunes a branch as soon as some fully-colored closed neighborhood has no
/// unique color. Refuses for n above the cap.
CfExact exact_cf_chromatic(const Graph& g, int cap = 16);

/// Decision form: does a conflict-free r-coloring exist?
bool cf_colorable(const Graph& g, int r, int cap = 16);

/// Proper chromatic number by branch and bound. Refuses above the cap.
int exact_chromatic(const Graph& g, int cap = 16);

struct DominationLimits {
    long long node_budget = 200'000'000; // branch-and-bound nodes before refusal
};

/// Minimum dominating set size, sizes tried ascending. With size_cap set,
/// only decides up to the cap and returns size_cap + 1 to mean "exceeds".
int exact_domination(const Graph& g, std::optional<int> size_cap = std::nullopt,
                     const DominationLimits& limits = {});

/// Deterministic greedy dominating set: repeatedly take the vertex covering
/// the most uncovered closed neighborhoods, ties to the smallest id.
VertexSet greedy_dominating_set(const Graph& g);

/// |S| distinct colors (1..|S|, ascending over the set) plus the shared color
/// 0 for everyone else. Requires s dominating; the result is conflict-free.
Coloring domination_coloring(const Graph& g, const VertexSet& s);

enum class TailRule { LnLn, LogLog2, Const };

struct CfcParams {
    double p = 0.5;     // model edge probability, 0 < p < 1
    double delta = 0.1; // in (0, 1)
    double big_k = 5.0; // halting constant K; the analysis wants K > 100, which
                        // would disable the main loop at desk scale
    TailRule tail = TailRule::LnLn;
    double tail_const = 4.0; // used by TailRule::Const

    double tail_threshold(int n) const;
};

struct CfcRound {
    VertexSet selected;  // the independent set of this round
    VertexSet cared;     // one-neighborhood, filler-colored
    int remaining = 0;   // vertices left after the round
};

struct CfcTrace {
    std::vector<CfcRound> rounds;
    int tail_size = 0;       // vertices colored by the proper tail coloring
    int tail_degeneracy = 0; // 0 when the tail is empty
    bool filler_used = false;
    /// Allocated palette: rounds + (tail_degeneracy + 1 when the tail is
    /// non-empty) + 1 when the filler color was assigned to anyone. The
    /// greedy tail may label fewer distinct colors than its allocation.
    int colors_used = 0;
};

struct CfcRun {
    Coloring coloring; // filler designated 0 when used
    CfcTrace trace;
};

/// The round-based conflict-free colorer: while more than tail_threshold(n)
/// vertices remain and p > K/n_i, greedily grow an independent set from the
/// shrinking non-neighborhood (smallest vertex first, at most floor(1/p)
/// members), give it the round color, give its one-neighborhood the filler
/// color 0, and delete both; finally color the residual graph properly along
/// the reverse degeneracy elimination order with fresh colors.
CfcRun algorithm_cfc(const Graph& g, const CfcParams& params);

struct CfPrimeExact {
    int value = 0;
    SetFamily family;
};

/// Smallest covering family (open neighborhoods, sets may overlap), found by
/// shortest set-cover search over all subsets as candidates. Graphs with an
/// isolated vertex have no finite family (InputError). Refuses above the cap.
CfPrimeExact exact_cf_prime(const Graph& g, int cap = 10);

} // namespace cfc
