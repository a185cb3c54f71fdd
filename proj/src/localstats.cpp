#include "irelab/localstats.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "irelab/parallel.hpp"

namespace irelab::local {

RootedNeighborhood root_component_neighborhood(const fire::RootCell& cell,
                                               const groups::CayleyWindow& window, int radius) {
    if (!cell.determined)
        throw ConfigError("cell is undetermined; filter undetermined samples before "
                          "building neighborhoods");
    if (radius < 0) throw ConfigError("radius must be nonnegative");
    if (cell.members.empty()) throw ConfigError("root cell has no members");
    const groups::GroupSpec spec = cell.members.front().spec();
    if (!(spec == window.spec)) throw ConfigError("cell and window from different groups");

    const groups::Element id = groups::Element::identity(spec);
    std::vector<groups::Element> members = cell.members;  // sorted by invariant
    auto member_pos = [&](const groups::Element& e) -> std::int64_t {
        auto it = std::lower_bound(members.begin(), members.end(), e);
        if (it == members.end() || !(*it == e)) return -1;
        return it - members.begin();
    };
    if (member_pos(id) < 0) throw ConfigError("root cell does not contain the identity");

    const auto gens = groups::generators(spec);

    // BFS in the induced subgraph, depth-limited by radius.
    std::vector<std::int64_t> order{member_pos(id)};
    std::vector<int> label(members.size(), -1);
    label[order[0]] = 0;
    std::vector<int> depth{0};
    for (std::size_t head = 0; head < order.size(); ++head) {
        if (depth[head] == radius) continue;
        for (const auto& s : gens) {
            std::int64_t q = member_pos(groups::multiply(members[order[head]], s));
            if (q < 0 || label[q] >= 0) continue;
            label[q] = static_cast<int>(order.size());
            order.push_back(q);
            depth.push_back(depth[head] + 1);
        }
    }

    RootedNeighborhood out;
    out.graph.n = static_cast<int>(order.size());
    out.graph.root = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& s : gens) {
            std::int64_t q = member_pos(groups::multiply(members[order[i]], s));
            if (q < 0 || label[q] < 0) continue;
            int a = static_cast<int>(i), b = label[q];
            if (a < b) out.graph.edges.emplace_back(a, b);
        }
    }
    out.graph.normalize();
    out.hash = canonical_hash(out.graph);
    return out;
}

void NeighborhoodDistribution::add(const Digest128& hash, const RootedGraph& example,
                                   std::int64_t index) {
    Entry& e = entries[hash];
    ++e.count;
    if (e.first_index < 0 || index < e.first_index) {
        e.first_index = index;
        e.example = example;
    }
    ++total;
}

void NeighborhoodDistribution::merge(const NeighborhoodDistribution& other) {
    if (radius != other.radius) throw ConfigError("cannot merge distributions of unequal radius");
    total += other.total;
    undetermined += other.undetermined;
    for (const auto& [h, oe] : other.entries) {
        Entry& e = entries[h];
        e.count += oe.count;
        if (e.first_index < 0 || (oe.first_index >= 0 && oe.first_index < e.first_index)) {
            e.first_index = oe.first_index;
            e.example = oe.example;
        }
    }
}

NeighborhoodDistribution collect_distribution(const RootCellSampler& sampler, int radius,
                                              std::int64_t n_samples, const SeedSpec& seed,
                                              int workers) {
    if (n_samples < 1) throw ConfigError("collect_distribution requires >= 1 sample");
    if (workers < 1) workers = 1;

    // Chunk-local accumulation merged in chunk order; counts are integers
    // and examples keep the minimal stream index, so the result is
    // independent of the chunking.
    const std::int64_t chunks = std::min<std::int64_t>(workers, n_samples);
    const std::int64_t chunk = (n_samples + chunks - 1) / chunks;
    std::vector<NeighborhoodDistribution> parts(chunks);

    parallel_for(chunks, workers, [&](std::int64_t t) {
        parts[t].radius = radius;
        std::optional<groups::CayleyWindow> window;
        for (std::int64_t i = t * chunk; i < std::min(n_samples, (t + 1) * chunk); ++i) {
            fire::RootCell cell = sampler(seed.substream(static_cast<std::uint64_t>(i)));
            if (!cell.determined) {
                ++parts[t].undetermined;
                ++parts[t].total;
                continue;
            }
            if (!window) {
                const groups::GroupSpec spec = cell.members.front().spec();
                window = groups::ball(spec, groups::Element::identity(spec), radius);
            }
            RootedNeighborhood nb = root_component_neighborhood(cell, *window, radius);
            parts[t].add(nb.hash, nb.graph, i);
        }
    });

    NeighborhoodDistribution out;
    out.radius = radius;
    out.seed = seed.master_seed;
    for (const auto& part : parts) out.merge(part);
    return out;
}

double tv_distance(const NeighborhoodDistribution& a, const NeighborhoodDistribution& b) {
    if (a.radius != b.radius)
        throw ConfigError("tv_distance requires equal radii (" + std::to_string(a.radius) +
                          " vs " + std::to_string(b.radius) + ")");
    if (a.total == 0 || b.total == 0) throw ConfigError("tv_distance over empty distribution");
    const double ta = static_cast<double>(a.total), tb = static_cast<double>(b.total);
    double s = 0.0;
    for (const auto& [h, e] : a.entries) {
        auto it = b.entries.find(h);
        double pb = it == b.entries.end() ? 0.0 : static_cast<double>(it->second.count) / tb;
        s += std::abs(static_cast<double>(e.count) / ta - pb);
    }
    for (const auto& [h, e] : b.entries)
        if (a.entries.find(h) == a.entries.end())
            s += static_cast<double>(e.count) / tb;
    s += std::abs(static_cast<double>(a.undetermined) / ta -
                  static_cast<double>(b.undetermined) / tb);
    return 0.5 * s;
}

MtpResult mtp_check(const ProcessSampler& process, const LocalTestFunction& f, int margin,
                    std::int64_t n_samples, const SeedSpec& seed, int workers) {
    if (n_samples < 1) throw ConfigError("mtp_check requires >= 1 sample");
    if (margin < 0) throw ConfigError("margin must be nonnegative");

    std::vector<double> lhs(n_samples), rhs(n_samples);
    parallel_for(n_samples, workers, [&](std::int64_t i) {
        sampling::MarkedConfiguration cfg = process(seed.substream(static_cast<std::uint64_t>(i)));
        if (cfg.window->radius < margin)
            throw ConfigError("mtp_check margin exceeds the sampled window radius");
        const groups::Element root = cfg.window->center;
        double s1 = 0.0, s2 = 0.0;
        // window elements are ordered by distance, so the margin ball is a prefix
        for (std::size_t j = 0; j < cfg.window->size() && cfg.window->dist[j] <= margin; ++j) {
            const groups::Element& v = cfg.window->elements[j];
            s1 += f(v, root, cfg);
            s2 += f(root, v, cfg);
        }
        lhs[i] = s1;
        rhs[i] = s2;
    });

    MtpResult out;
    out.lhs = mean_estimate(lhs, seed.master_seed);
    out.rhs = mean_estimate(rhs, seed.master_seed);
    out.diff = paired_diff_estimate(lhs, rhs, seed.master_seed);
    return out;
}

}  // namespace irelab::local
