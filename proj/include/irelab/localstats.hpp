#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "irelab/canonical.hpp"
#include "irelab/estimate.hpp"
#include "irelab/fire.hpp"
#include "irelab/sampling.hpp"
#include "irelab/window.hpp"

namespace irelab::local {

/// A rooted neighborhood together with its canonical 128-bit digest.
struct RootedNeighborhood {
    RootedGraph graph;  // vertices in BFS discovery order, root at index 0
    Digest128 hash;
};

/**
 * The radius-r ball around the root in the Cayley subgraph induced on the
 * cell's members, rooted at the identity.  The cell must be determined.
 */
RootedNeighborhood root_component_neighborhood(const fire::RootCell& cell,
                                               const groups::CayleyWindow& window, int radius);

/**
 * Empirical law of canonical neighborhood hashes over independent samples.
 * Undetermined samples occupy a reserved bucket so that TV distances stay
 * honest upper bounds.  Distributions merge as monoids (count addition).
 */
struct NeighborhoodDistribution {
    int radius = 0;
    std::int64_t total = 0;
    std::int64_t undetermined = 0;

    struct Entry {
        std::int64_t count = 0;
        std::int64_t first_index = -1;  // stream index of the kept example
        RootedGraph example;
    };
    std::map<Digest128, Entry> entries;

    // provenance
    std::string group;
    std::string process;
    std::string params;
    std::uint64_t seed = 0;

    void add(const Digest128& hash, const RootedGraph& example, std::int64_t index);
    void merge(const NeighborhoodDistribution& other);
};

using RootCellSampler = std::function<fire::RootCell(const SeedSpec&)>;

NeighborhoodDistribution collect_distribution(const RootCellSampler& sampler, int radius,
                                              std::int64_t n_samples, const SeedSpec& seed,
                                              int workers = 1);

/// Total variation distance between two empirical laws of equal radius,
/// undetermined buckets included as their own symbol.
double tv_distance(const NeighborhoodDistribution& a, const NeighborhoodDistribution& b);

/**
 * Mass transport check: estimates E[sum_v f(v,o)] and E[sum_v f(o,v)] with
 * v ranging over the ball of radius `margin` around the root, over
 * independent samples of an invariant marked process.  For a diagonally
 * invariant f the two must agree.
 */
struct MtpResult {
    Estimate lhs;   // E[sum_v f(v, o)]
    Estimate rhs;   // E[sum_v f(o, v)]
    Estimate diff;  // paired difference, CI should contain 0
};

using ProcessSampler = std::function<sampling::MarkedConfiguration(const SeedSpec&)>;
using LocalTestFunction = std::function<double(
    const groups::Element& x, const groups::Element& y, const sampling::MarkedConfiguration&)>;

MtpResult mtp_check(const ProcessSampler& process, const LocalTestFunction& f, int margin,
                    std::int64_t n_samples, const SeedSpec& seed, int workers = 1);

}  // namespace irelab::local
