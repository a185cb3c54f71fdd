#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "irelab/common.hpp"

namespace irelab {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

/**
 * A Monte Carlo result: point value, standard error, 95% CI, sample count
 * and the master seed that produced it.
 */
struct Estimate {
    double value = 0.0;
    double se = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;

    double ci95_lo() const { return value - kZ95 * se; }
    double ci95_hi() const { return value + kZ95 * se; }
    double lcl(double z) const { return value - z * se; }
    double ucl(double z) const { return value + z * se; }
};

/// Plain mean with SE = sd/sqrt(n), deterministic under any worker count.
inline Estimate mean_estimate(const std::vector<double>& xs, std::uint64_t seed) {
    Estimate e;
    e.n = static_cast<std::int64_t>(xs.size());
    e.seed = seed;
    if (xs.empty()) return e;
    double s = pairwise_sum(xs);
    double mean = s / static_cast<double>(xs.size());
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = xs[i] - mean;
        sq[i] = d * d;
    }
    double ss = pairwise_sum(sq);
    e.value = mean;
    if (xs.size() > 1) {
        double var = ss / static_cast<double>(xs.size() - 1);
        e.se = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return e;
}

/**
 * Ratio-of-means estimator R = sum(x)/sum(w) with the delta-method standard
 * error  SE = sqrt(sum (x_i - R w_i)^2) / sum(w).  Used for conditional
 * means/probabilities (w_i an indicator).  Caller must check sum(w) > 0.
 */
inline Estimate ratio_estimate(const std::vector<double>& xs,
                               const std::vector<double>& ws,
                               std::uint64_t seed) {
    Estimate e;
    e.n = static_cast<std::int64_t>(xs.size());
    e.seed = seed;
    double sw = pairwise_sum(ws);
    if (sw <= 0.0) return e;
    double sx = pairwise_sum(xs);
    double r = sx / sw;
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = xs[i] - r * ws[i];
        sq[i] = d * d;
    }
    e.value = r;
    e.se = std::sqrt(pairwise_sum(sq)) / sw;
    return e;
}

/// Mean of paired differences xs - ys with its own SE.
inline Estimate paired_diff_estimate(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     std::uint64_t seed) {
    std::vector<double> d(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) d[i] = xs[i] - ys[i];
    return mean_estimate(d, seed);
}

}  // namespace irelab
