#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irelab/estimate.hpp"
#include "irelab/group.hpp"
#include "irelab/rng.hpp"
#include "irelab/sampling.hpp"

namespace irelab::fire {

using groups::Element;
using groups::GroupSpec;

/**
 * Parameters of the tiling FIRE: a finite tile A containing the identity
 * and a density parameter delta in (0, 1/2).  Centers form a Bernoulli
 * subset of intensity delta/|A|; each center places the translate x*A and
 * conflicts are resolved towards the center with the least uniform mark.
 */
struct CellSet {
    GroupSpec spec;
    std::vector<Element> tile;  // sorted, contains the identity
    double delta;

    CellSet(GroupSpec spec, std::vector<Element> tile, double delta);
    double intensity() const { return delta / static_cast<double>(tile.size()); }
};

/**
 * The equivalence class of the root under a sampled IRE.
 *   members      the class of the identity, sorted, always containing it
 *   center       the tile center x_o when the root is Pi-related
 *   in_pi_class  the event o in [Pi]_R
 *   determined   exact for the tiling FIRE; may be false for capped BVT runs
 */
struct RootCell {
    std::vector<Element> members;
    std::optional<Element> center;
    bool in_pi_class = false;
    bool determined = true;
};

/**
 * The exact determinacy window W = A^{-1} u AA^{-1} u A^{-1}AA^{-1}.
 * Pi and its marks restricted to W determine the root cell exactly, so
 * sampling on W carries no truncation error.
 */
std::vector<Element> determinacy_window(const CellSet& cell_set);

/// One exact root-cell sample (draws are element-keyed; only the part of W
/// that can influence the result is evaluated).
RootCell sample_root_cell(const CellSet& cell_set, const SeedSpec& seed);

/**
 * Reusable sampler with precomputed tile-relative index tables; const and
 * safe to share across Monte Carlo worker threads.
 */
class TilingSampler {
public:
    explicit TilingSampler(CellSet cs);
    RootCell operator()(const SeedSpec& seed) const;
    const CellSet& cell_set() const { return cs_; }

private:
    CellSet cs_;
    std::vector<Element> ainv_;  // root-center candidates A^{-1}
    std::vector<std::uint64_t> ainv_digests_;
    std::vector<Element> p_;  // A A^{-1}
    std::size_t idx_e_ = 0;
    std::vector<std::size_t> tile_idx_;
    std::vector<std::vector<std::size_t>> cand_idx_;
};

/**
 * Explicit marked point set, for computing cells as a deterministic factor
 * of a fixed configuration (equivariance and window-exactness tests).
 */
struct MarkedPoints {
    std::vector<std::pair<Element, std::uint64_t>> pts;  // sorted by element

    static MarkedPoints from_configuration(const sampling::MarkedConfiguration& cfg);
    void sort();
    const std::uint64_t* find(const Element& e) const;
};

/// Center choice h_v for an arbitrary vertex under an explicit configuration:
/// v itself if v in Pi, else the least-mark x in Pi with v in xA, else v.
Element choose_center(const CellSet& cell_set, const MarkedPoints& pts, const Element& v);

/// Root cell of `root` as a factor of an explicit configuration.
RootCell root_cell_from_points(const CellSet& cell_set, const MarkedPoints& pts,
                               const Element& root);

/**
 * Exact joint law of (in_pi_class, |members|) by enumeration over
 * subsets of the determinacy window with mark orders integrated out.
 * Feasibility caps: |W| <= 22 and at most 8 root-center candidates.
 */
struct ExactLaw {
    std::map<std::pair<bool, std::int64_t>, double> probs;

    double total_mass() const;
    double p_in_pi() const;
    /// E[|o|_R * 1{o in [Pi]_R}]
    double mean_size_indicator() const;
    /// E[|o|_R | o in [Pi]_R]
    double conditional_mean_size() const;
};

ExactLaw exact_distribution(const CellSet& cell_set,
                            std::uint64_t work_budget = Budget{}.oracle_work);

/// Bound identifiers of the three inequalities checked for the tiling FIRE.
enum class BoundId { i, ii, iii };
std::string bound_name(BoundId id);

struct BoundReport {
    BoundId id;
    double bound = 0.0;
    Estimate estimate;
    bool passes = false;                    // 99% CI not entirely below the bound
    bool insufficient_conditioning = false; // zero conditioning events
    double lcl99() const { return estimate.lcl(kZ99); }
    double ucl99() const { return estimate.ucl(kZ99); }
};

/**
 * Monte Carlo verification of the three tiling-FIRE inequalities:
 *   (i)   P[o in [Pi]_R]                        >= delta - delta^2
 *   (ii)  E[|o|_R | o in [Pi]_R]                >= |A| (1 - 2 delta)
 *   (iii) P[|o|_R/|A| >= (1-2d)^2 | o in [Pi]]  >= 4 delta^2 (1 - 2 delta)^2
 */
std::vector<BoundReport> verify_tiling_bounds(const CellSet& cell_set, std::int64_t n_samples,
                                             const SeedSpec& seed, int workers = 1);

/// Largest delta with (1 - 2 delta)^2 >= 1 - eps, i.e. (1 - sqrt(1-eps))/2.
double delta_for_epsilon(double epsilon);

}  // namespace irelab::fire
