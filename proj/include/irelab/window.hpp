#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "irelab/common.hpp"
#include "irelab/group.hpp"

namespace irelab::groups {

/**
 * The ball B_radius(center) in a Cayley graph, with induced adjacency.
 * Elements are indexed in BFS order (by distance from the center, then by
 * the total order on normal forms), so the element list of a smaller ball
 * is always a prefix of any larger concentric ball's list.
 */
struct CayleyWindow {
    GroupSpec spec;
    Element center;
    int radius = 0;
    std::vector<Element> elements;
    std::vector<std::int64_t> dist;            // distance to center, parallel to elements
    std::vector<std::uint64_t> digests;        // cached element digests
    std::vector<std::vector<std::int32_t>> adjacency;  // sorted neighbor indices

    std::int32_t index_of(const Element& e) const {
        auto it = by_element.find(e);
        return it == by_element.end() ? -1 : it->second;
    }
    std::size_t size() const { return elements.size(); }

    std::unordered_map<Element, std::int32_t, ElementHash> by_element;  // filled by ball()
};

/// BFS ball enumeration. Throws BudgetError when the element count would
/// exceed the cap, naming the offending count.
CayleyWindow ball(const GroupSpec& spec, const Element& center, int radius,
                  std::uint64_t element_cap = Budget{}.ball_elements);

/**
 * Shared cache of identity-centered balls per radius; sampling loops reuse
 * windows across samples and grow them lazily.
 */
class BallCache {
public:
    explicit BallCache(GroupSpec spec, std::uint64_t element_cap = Budget{}.ball_elements)
        : spec_(spec), cap_(element_cap) {}

    const std::shared_ptr<const CayleyWindow>& at_radius(int radius);
    const GroupSpec& spec() const { return spec_; }

private:
    GroupSpec spec_;
    std::uint64_t cap_;
    std::vector<std::shared_ptr<const CayleyWindow>> by_radius_;
};

}  // namespace irelab::groups
