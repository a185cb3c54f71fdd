#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "irelab/rng.hpp"
#include "irelab/window.hpp"

namespace irelab::sampling {

/// Per-site probability p in (0,1) of lying in the Bernoulli subset.
struct IntensitySpec {
    double p;
    explicit IntensitySpec(double prob) : p(prob) {
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("intensity p must lie in (0,1)");
    }
};

/**
 * A finite-window sample of a marked Bernoulli subset: the points of
 * Pi intersected with the window, each carrying a raw 64-bit uniform mark.
 * Marks are compared as (raw mark, normal form) so exact ties resolve
 * deterministically.
 *
 * Every draw is keyed by (master_seed, stream_index, element normal form),
 * never by enumeration index, so restriction to a subwindow is exact and a
 * translation of the keying translates the sample.
 */
struct MarkedConfiguration {
    std::shared_ptr<const groups::CayleyWindow> window;
    double p = 0.0;
    SeedSpec seed;
    std::vector<std::int32_t> points;  // sorted window indices of Pi
    std::vector<std::uint64_t> marks;  // parallel to points

    bool contains_index(std::int32_t idx) const;
    /// Raw mark for a point given its position in `points`.
    double mark_unit(std::size_t pos) const { return rng::to_unit_double(marks[pos]); }
};

MarkedConfiguration sample_marked(std::shared_ptr<const groups::CayleyWindow> window,
                                  const IntensitySpec& intensity, const SeedSpec& seed);

/// Equivariance harness: draws for window element g are keyed by shift*g.
/// With shift = gamma^{-1} on the window gamma*W this reproduces the
/// identity-keyed sample of W, translated by gamma.
MarkedConfiguration sample_marked_rekeyed(std::shared_ptr<const groups::CayleyWindow> window,
                                          const IntensitySpec& intensity, const SeedSpec& seed,
                                          const groups::Element& shift);

/// Grows the window to a larger radius around the same center; agrees
/// exactly with the input on the old window.
MarkedConfiguration extend(const MarkedConfiguration& config, int new_radius,
                           const SeedSpec& seed);

}  // namespace irelab::sampling
