#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace irelab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Invalid configuration or malformed input (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration/search budget was exceeded (CLI exit code 3).
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, std::uint64_t reached)
        : std::runtime_error(what), count_reached(reached) {}
    std::uint64_t count_reached;
};

/// Malformed text input, with the 1-based offending line.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error(what), line_number(line) {}
    int line_number;
};

/**
 * Enumeration budgets, overridable via the IRELAB_BUDGET environment
 * variable (a single count applied to every enumeration cap).
 */
struct Budget {
    std::uint64_t ball_elements = 1'000'000;        // max elements in a Cayley ball
    std::uint64_t connected_subsets = 10'000'000;   // expansion-profile enumeration
    std::uint64_t subset_enumeration = 10'000'000;  // robustness A-enumeration
    std::uint64_t oracle_work = 2'000'000'000;      // exact-law enumeration steps

    static Budget from_env() {
        Budget b;
        if (const char* s = std::getenv("IRELAB_BUDGET")) {
            char* end = nullptr;
            std::uint64_t v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) {
                b.ball_elements = v;
                b.connected_subsets = v;
                b.subset_enumeration = v;
                b.oracle_work = v;
            }
        }
        return b;
    }
};

/// Order-independent pairwise summation; used for every Monte Carlo mean so
/// that worker count never changes a payload byte.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 32) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum(std::span<const double>(xs));
}

}  // namespace irelab
