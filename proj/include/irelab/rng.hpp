#pragma once

#include <cstdint>
#include <span>

namespace irelab {

/**
 * Seed for a reproducible random stream.  The substream for
 * (master_seed, stream_index) is a pure function of both; distinct stream
 * indices give independent-quality streams.
 */
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    SeedSpec substream(std::uint64_t i) const { return {master_seed, i}; }
};

namespace rng {

// SplitMix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Absorb a word into a running 64-bit sponge state.
inline std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
    return mix64(state ^ (word * 0x9ddfea08eb382d69ULL));
}

/// Digest of an arbitrary word sequence (e.g. an encoded group element).
inline std::uint64_t digest(std::span<const std::uint64_t> words) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t w : words) h = absorb(h, w);
    return absorb(h, static_cast<std::uint64_t>(words.size()));
}

/// State derived from (master seed, stream index); combined with per-element
/// digests to give element-keyed draws independent of enumeration order.
inline std::uint64_t seed_state(const SeedSpec& seed) {
    return absorb(absorb(0x243f6a8885a308d3ULL, seed.master_seed), seed.stream_index);
}

inline std::uint64_t element_key(std::uint64_t seed_state, std::uint64_t element_digest) {
    return absorb(seed_state, element_digest);
}

/// i-th 64-bit uniform draw from a key.
inline std::uint64_t draw(std::uint64_t key, std::uint64_t draw_index) {
    return absorb(key, draw_index);
}

inline double to_unit_double(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

/// Bernoulli(p) threshold on raw 64-bit uniforms, p in (0,1).
inline std::uint64_t bernoulli_threshold(double p) {
    long double t = static_cast<long double>(p) * 18446744073709551616.0L;
    if (t <= 0.0L) return 0;
    if (t >= 18446744073709551615.0L) return ~0ULL;
    return static_cast<std::uint64_t>(t);
}

}  // namespace rng
}  // namespace irelab
