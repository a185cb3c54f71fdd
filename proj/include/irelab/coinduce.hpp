#pragma once

#include "irelab/fire.hpp"
#include "irelab/window.hpp"

namespace irelab::sampling {

/**
 * Window-scale coinduction from the coordinate subgroup Z^k <= Z^d: the
 * window splits into cosets by the trailing d-k coordinates, the base
 * root-cell sampler runs independently on each coset with a coset-keyed
 * substream, and the root cell (which lies inside the identity coset) is
 * returned.
 *
 * The base sampler is a tiling-FIRE cell set whose tile must be contained
 * in the subgroup (trailing coordinates zero).
 */
fire::RootCell coinduce(const groups::GroupSpec& ambient, int subgroup_rank,
                        const fire::CellSet& base, const groups::CayleyWindow& window,
                        const SeedSpec& seed);

/// The substream used for one coset, keyed by its trailing coordinates.
SeedSpec coset_substream(const SeedSpec& seed, std::span<const std::int64_t> trailing);

}  // namespace irelab::sampling
