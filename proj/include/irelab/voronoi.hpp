#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "irelab/estimate.hpp"
#include "irelab/fire.hpp"
#include "irelab/window.hpp"

namespace irelab::bvt {

using fire::RootCell;
using groups::Element;
using groups::GroupSpec;

struct BvtParams {
    GroupSpec group;
    double p;
    int r_max;

    BvtParams(GroupSpec g, double prob, int cap) : group(g), p(prob), r_max(cap) {
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("BVT intensity p must lie in (0,1)");
        if (r_max < 1) throw ConfigError("BVT radius cap must be >= 1");
    }
};

/**
 * The refined Voronoi cell of the root: members are all x whose
 * (distance, mark)-nearest sampled center is `center`; ties between
 * equidistant centers go to the smaller mark.  `determined` certifies that
 * no point outside the sampled ball could change the cell.
 */
struct VoronoiRootCell {
    RootCell cell;
    std::optional<Element> center;
    std::int64_t nearest_distance = -1;
    bool determined = false;
    int sampled_radius = 0;

    bool root_is_center() const { return determined && nearest_distance == 0; }
};

/**
 * Adaptive certified sampler.  Grows the sampled ball until
 *  (a) the nearest center c of the root is certified (R > d(e,c)), and
 *  (b) the claimed-member region around c is closed: every member y
 *      satisfies R - d(e,y) > d(y,c) and every neighbor of the region is
 *      claimed by a strictly better sampled center.
 * Cells are star-shaped around their center (a strict win propagates along
 * geodesics), so a closed certified region is the whole cell.
 */
class BvtSampler {
public:
    explicit BvtSampler(const BvtParams& params,
                        std::uint64_t ball_cap = Budget{}.ball_elements);

    VoronoiRootCell operator()(const SeedSpec& seed) const;
    const BvtParams& params() const { return params_; }

private:
    std::shared_ptr<const groups::CayleyWindow> window_at(int radius) const;

    BvtParams params_;
    std::uint64_t ball_cap_;
    mutable std::mutex mu_;
    mutable std::vector<std::shared_ptr<const groups::CayleyWindow>> balls_;
};

VoronoiRootCell sample_bvt_root_cell(const BvtParams& params, const SeedSpec& seed);

/// Voronoi cell of the root for an explicit configuration on a window,
/// with the same certification rule; for equivariance and forced-case tests.
VoronoiRootCell cell_from_points(const groups::CayleyWindow& window,
                                 const std::vector<std::int32_t>& point_indices,
                                 const std::vector<std::uint64_t>& marks,
                                 std::int32_t root_index);

struct IntensityCheck {
    Estimate estimate;  // E[ 1 / |cell(o)| ] over determined samples
    double p = 0.0;
    double undetermined_fraction = 0.0;
    bool warn_undetermined = false;  // fraction above 10%
    std::int64_t n = 0;
};

/// Mass-transport identity E[1/|cell(o)|] = p, estimated over determined
/// samples; the undetermined fraction bounds the bias.
IntensityCheck bvt_intensity_identity(const BvtParams& params, std::int64_t n_samples,
                                      const SeedSpec& seed, int workers = 1);

struct SizeHistogram {
    std::map<std::int64_t, std::int64_t> counts;  // cell size -> samples
    std::int64_t undetermined = 0;
    std::int64_t total = 0;

    double mass(std::int64_t size) const;
    double undetermined_fraction() const;
};

SizeHistogram bvt_cell_size_histogram(const BvtParams& params, std::int64_t n_samples,
                                      const SeedSpec& seed, int workers = 1);

}  // namespace irelab::bvt
