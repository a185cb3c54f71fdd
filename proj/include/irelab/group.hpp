#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irelab/rng.hpp"

namespace irelab::groups {

enum class Family : std::uint8_t { FreeAbelian, Free };

/**
 * A finitely generated group from the supported family, with its standard
 * symmetric generating set: +-e_i for Z^d, a_i^{+-1} for F_k.
 *
 * Spec string format: "z:d" (e.g. "z:2") and "f:k" (e.g. "f:2").
 */
struct GroupSpec {
    Family family = Family::FreeAbelian;
    int rank = 1;  // d for Z^d, k for F_k

    static GroupSpec free_abelian(int d);
    static GroupSpec free_group(int k);
    static GroupSpec parse(const std::string& text);

    std::string str() const;
    int generator_count() const { return 2 * rank; }
    /// Degree of the Cayley graph (2d resp. 2k).
    int cayley_degree() const { return 2 * rank; }

    bool operator==(const GroupSpec&) const = default;
};

/**
 * A group element stored in canonical normal form, so equality is
 * structural and hashing is cheap:
 *   - FreeAbelian: integer coordinate vector of length d,
 *   - Free: reduced word over letters {+-1, ..., +-k} (letter i = a_i,
 *     letter -i = a_i^{-1}), with no adjacent inverse pair.
 */
class Element {
public:
    Element(GroupSpec spec, std::vector<std::int64_t> data);

    static Element identity(const GroupSpec& spec);
    /// Parses "(1,-2)" / "1 -2" for Z^d, "abA" / "e" for F_k (k <= 26).
    static Element parse(const GroupSpec& spec, const std::string& text);

    const GroupSpec& spec() const { return spec_; }
    std::span<const std::int64_t> data() const { return data_; }
    bool is_identity() const;

    /// Stable 64-bit digest of the normal form; key for element-keyed streams.
    std::uint64_t digest() const;

    std::string str() const;

    bool operator==(const Element&) const = default;
    /// Total order: word length first for Free, then lexicographic payload.
    bool operator<(const Element& other) const;

private:
    GroupSpec spec_;
    std::vector<std::int64_t> data_;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const { return static_cast<std::size_t>(e.digest()); }
};

/// Normal form of g*h. Throws ConfigError on mismatched group specs.
Element multiply(const Element& g, const Element& h);
Element inverse(const Element& g);

/// Word length |g| (l^1 norm resp. reduced length).
std::int64_t norm(const Element& g);

/// Left-invariant word metric d(g,h) = |g^{-1} h|.
std::int64_t word_distance(const Element& g, const Element& h);

/// The standard symmetric generating set, in a fixed deterministic order.
std::vector<Element> generators(const GroupSpec& spec);

/// {a*b : a in A, b in B}, deduplicated and sorted.
std::vector<Element> set_product(const std::vector<Element>& a, const std::vector<Element>& b);

/// Inverses of a set, deduplicated and sorted.
std::vector<Element> set_inverse(const std::vector<Element>& a);

}  // namespace irelab::groups
