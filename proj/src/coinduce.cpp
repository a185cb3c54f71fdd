#include "irelab/coinduce.hpp"

#include <algorithm>

namespace irelab::sampling {

SeedSpec coset_substream(const SeedSpec& seed, std::span<const std::int64_t> trailing) {
    std::uint64_t h = 0x636f736574737472ULL;
    for (std::int64_t c : trailing) h = rng::absorb(h, static_cast<std::uint64_t>(c));
    return {seed.master_seed, rng::absorb(seed.stream_index, h)};
}

fire::RootCell coinduce(const groups::GroupSpec& ambient, int subgroup_rank,
                        const fire::CellSet& base, const groups::CayleyWindow& window,
                        const SeedSpec& seed) {
    using groups::Element;
    if (ambient.family != groups::Family::FreeAbelian)
        throw ConfigError("coinduction is implemented for coordinate subgroups of Z^d only");
    if (subgroup_rank < 1 || subgroup_rank > ambient.rank)
        throw ConfigError("subgroup rank must lie in [1, d]");
    if (!(window.spec == ambient)) throw ConfigError("window group does not match ambient group");
    if (!(base.spec == ambient))
        throw ConfigError("base cell set must be given in ambient coordinates");
    for (const Element& a : base.tile)
        for (int i = subgroup_rank; i < ambient.rank; ++i)
            if (a.data()[i] != 0)
                throw ConfigError("cell set is not contained in the subgroup Z^" +
                                  std::to_string(subgroup_rank));

    // Independent per-coset copies with element-keyed draws mean that only
    // the identity coset can touch the root's class; sample it with its
    // coset-keyed substream, in subgroup coordinates.
    const groups::GroupSpec sub = groups::GroupSpec::free_abelian(subgroup_rank);
    std::vector<Element> sub_tile;
    sub_tile.reserve(base.tile.size());
    for (const Element& a : base.tile) {
        std::vector<std::int64_t> coords(a.data().begin(), a.data().begin() + subgroup_rank);
        sub_tile.emplace_back(sub, std::move(coords));
    }
    fire::CellSet sub_base(sub, std::move(sub_tile), base.delta);

    const std::vector<std::int64_t> identity_trailing(ambient.rank - subgroup_rank, 0);
    fire::RootCell sub_cell =
        fire::sample_root_cell(sub_base, coset_substream(seed, identity_trailing));

    // embed back into Z^d: trailing coordinates zero
    fire::RootCell out;
    out.in_pi_class = sub_cell.in_pi_class;
    out.determined = sub_cell.determined;
    auto embed = [&](const Element& e) {
        std::vector<std::int64_t> coords(e.data().begin(), e.data().end());
        coords.resize(ambient.rank, 0);
        return Element(ambient, std::move(coords));
    };
    for (const Element& m : sub_cell.members) out.members.push_back(embed(m));
    if (sub_cell.center) out.center = embed(*sub_cell.center);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

}  // namespace irelab::sampling
