#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irelab/common.hpp"

namespace irelab::graphs {

/// Finite simple undirected graph on vertices 0..n-1.
struct FiniteGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
    std::vector<std::vector<int>> adj;

    static FiniteGraph from_edges(int n, std::vector<std::pair<int, int>> edges);
    /// Plain text, one "u v" per line, 0-based, '#' comments.  Vertex count
    /// is 1 + the largest endpoint unless a "n <count>" header line appears.
    static FiniteGraph parse(std::istream& in);
    static FiniteGraph load(const std::string& path);

    std::string to_text() const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int max_degree() const;
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }
};

/// Induced subgraph on `keep` (sorted, unique), relabelled 0..|keep|-1.
FiniteGraph induced_subgraph(const FiniteGraph& g, const std::vector<int>& keep);

std::vector<std::vector<int>> connected_components(const FiniteGraph& g);
bool is_connected(const FiniteGraph& g);

// Bundled generators (robustness/corpus inputs).
FiniteGraph complete_graph(int n);
FiniteGraph cycle_graph(int n);
FiniteGraph path_graph(int n);
FiniteGraph hypercube_graph(int d);
/// Pairing-model random d-regular graph; resamples until simple and
/// connected.  Deterministic in (n, d, seed).
FiniteGraph random_regular_graph(int n, int d, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Hyperfiniteness: is there E with |E| <= epsilon |V| such that G - E has
// components of size at most k?
// ---------------------------------------------------------------------------

struct HyperfinitenessCertificate {
    double epsilon = 0.0;
    int k = 1;
    bool yes = false;
    bool heuristic = false;  // greedy mode; a "no" is not a refutation
    std::vector<std::pair<int, int>> witness;  // removed edges when yes
    std::optional<std::int64_t> optimal_cut_size;  // exact mode only
};

/// Independent checker: witness size bound and component sizes of G - E.
bool check_certificate(const FiniteGraph& g, const HyperfinitenessCertificate& cert);

/**
 * Exact minimum number of edge deletions leaving components of size <= k,
 * with an optimal witness.  Branch and bound over vertex-block partitions
 * (memoized subset DP per component up to 20 vertices, bounded search with
 * a fractional-counting lower bound beyond).
 */
std::int64_t min_deletion_exact(const FiniteGraph& g, int k,
                                std::vector<std::pair<int, int>>* witness = nullptr);

/// Feasibility gate: |V| <= 40 (non-isolated) or |E| <= 64, else BudgetError
/// "exact infeasible, use greedy".
HyperfinitenessCertificate hyperfinite_exact(const FiniteGraph& g, double epsilon, int k);

/// Sound-but-incomplete: repeated sparsest-cut-style bisection until all
/// blocks have size <= k, then local edge-return passes.
HyperfinitenessCertificate hyperfinite_greedy(const FiniteGraph& g, double epsilon, int k);

// ---------------------------------------------------------------------------
// Small-scale expansion: kappa_s = min |boundary F| / |F| over connected F
// of size s, where the boundary is the EDGE boundary (edges with exactly
// one endpoint in F).
// ---------------------------------------------------------------------------

struct ExpansionProfile {
    int upper_size = 0;  // N
    struct PerSize {
        double kappa = 0.0;
        std::vector<int> witness;
    };
    std::map<int, PerSize> per_size;  // only sizes with a connected subset

    double kappa() const;  // min over sizes; +inf when empty
};

ExpansionProfile expansion_profile(const FiniteGraph& g, int upper_size,
                                   std::uint64_t budget = Budget{}.connected_subsets);

std::int64_t edge_boundary(const FiniteGraph& g, const std::vector<int>& f);

// ---------------------------------------------------------------------------
// Robustness of expansion: for a (kappa,N)-expander of degree <= d and
// epsilon < kappa / (2(1+d) + kappa), no induced subgraph on at least
// (1-epsilon)|V| vertices is (epsilon,N)-hyperfinite.
// ---------------------------------------------------------------------------

struct RobustnessReport {
    double kappa_claimed = 0.0;
    double kappa_actual = 0.0;
    int upper_size = 0;  // N
    double epsilon = 0.0;
    double threshold = 0.0;  // kappa / (2(1+d) + kappa)
    bool exhaustive = true;
    std::int64_t checked = 0;
    std::vector<std::vector<int>> counterexamples;  // vertex sets A, should stay empty
};

RobustnessReport robustness_check(const FiniteGraph& g, double kappa, int upper_size,
                                  double epsilon,
                                  std::uint64_t subset_budget = Budget{}.subset_enumeration,
                                  std::uint64_t profile_budget = Budget{}.connected_subsets,
                                  std::uint64_t sample_seed = 1,
                                  std::int64_t sample_count = 2000);

}  // namespace irelab::graphs
