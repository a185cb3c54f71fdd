#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "irelab/common.hpp"

namespace irelab::local {

/// A finite rooted graph on vertices 0..n-1 (simple, undirected).
struct RootedGraph {
    int n = 0;
    int root = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique

    void normalize();  // sort/dedupe edges, validate ranges
};

struct Digest128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    auto operator<=>(const Digest128&) const = default;
    std::string hex() const;
};

/**
 * Exact canonical form under rooted isomorphism (root at label 0), via
 * colour refinement with individualization backtracking.  Correct, not
 * heuristic; capped at 64 vertices.
 */
struct CanonicalForm {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const RootedGraph& g);

/// 128-bit digest of the canonical form; equal digests correspond to equal
/// canonical forms (up to hash collision; forms themselves are exact).
Digest128 canonical_hash(const RootedGraph& g);

}  // namespace irelab::local
