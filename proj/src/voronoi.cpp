#include "irelab/voronoi.hpp"

#include <algorithm>

#include "irelab/parallel.hpp"

namespace irelab::bvt {

namespace {

// Claim data for one window: claim[v] = window index of the
// (distance, mark, normal-form)-nearest sampled center, cdist[v] its
// distance.  Window balls are convex for both families, so BFS distance in
// the induced ball graph equals the group word distance.
struct Resolution {
    bool has_center = false;
    std::int32_t center = -1;
    std::int64_t t0 = -1;
    bool certified = false;
    std::vector<std::int32_t> member_idx;
    std::int64_t needed_radius = -1;
};

Resolution resolve(const groups::CayleyWindow& w, const std::vector<std::int32_t>& pts,
                   const std::vector<std::uint64_t>& marks, std::int32_t root) {
    Resolution res;
    if (pts.empty()) return res;
    const auto n = static_cast<std::int32_t>(w.size());

    // Sources sorted by (mark, normal form); FIFO claim propagation then
    // yields the lexicographic (distance, mark, normal form) argmin at every
    // vertex.
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (marks[a] != marks[b]) return marks[a] < marks[b];
        return w.elements[pts[a]] < w.elements[pts[b]];
    });

    std::vector<std::int32_t> claim(n, -1), cdist(n, -1);
    std::vector<std::int32_t> queue;
    queue.reserve(n);
    for (std::size_t i : order) {
        claim[pts[i]] = pts[i];
        cdist[pts[i]] = 0;
        queue.push_back(pts[i]);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int32_t v = queue[head];
        for (std::int32_t nb : w.adjacency[v]) {
            if (claim[nb] >= 0) continue;
            claim[nb] = claim[v];
            cdist[nb] = cdist[v] + 1;
            queue.push_back(nb);
        }
    }

    res.has_center = true;
    res.center = claim[root];
    res.t0 = cdist[root];
    const std::int64_t r = w.radius;
    res.needed_radius = res.t0 + 1;
    if (r <= res.t0) return res;  // the root's own center is not yet certified

    // A vertex is a certified member when claimed by the root's center and
    // no unsampled element can be close enough to contest the claim.
    auto member_certified = [&](std::int32_t v) {
        return claim[v] == res.center && r - w.dist[v] > cdist[v];
    };

    // Certified members reachable from the center, with every neighbor of
    // the region either certified-member or claimed by a strictly better
    // center.  Cells are star-shaped around their center, so a closed
    // region is the entire cell.
    std::vector<char> in_region(n, 0);
    std::vector<std::int32_t> bfs{res.center};
    bool closed = member_certified(res.center);
    res.needed_radius = std::max<std::int64_t>(res.needed_radius, w.dist[res.center] + 1);
    in_region[res.center] = 1;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
        std::int32_t v = bfs[head];
        for (std::int32_t nb : w.adjacency[v]) {
            if (in_region[nb]) continue;
            if (member_certified(nb)) {
                in_region[nb] = 1;
                bfs.push_back(nb);
            } else if (claim[nb] == res.center) {
                closed = false;
                res.needed_radius =
                    std::max<std::int64_t>(res.needed_radius, w.dist[nb] + cdist[nb] + 1);
            }
        }
    }
    res.certified = closed && in_region[root] != 0;
    res.member_idx.assign(bfs.begin(), bfs.end());
    std::sort(res.member_idx.begin(), res.member_idx.end());
    return res;
}

VoronoiRootCell make_result(const groups::CayleyWindow& w, const Resolution& res,
                            std::int32_t root, int sampled_radius) {
    VoronoiRootCell out;
    out.sampled_radius = sampled_radius;
    out.determined = res.certified;
    out.cell.determined = res.certified;
    if (!res.has_center) {
        out.cell.members = {w.elements[root]};
        out.cell.in_pi_class = false;
        return out;
    }
    out.center = w.elements[res.center];
    out.nearest_distance = res.t0;
    out.cell.in_pi_class = true;
    out.cell.center = out.center;
    out.cell.members.reserve(res.member_idx.size() + 1);
    for (std::int32_t i : res.member_idx) out.cell.members.push_back(w.elements[i]);
    if (!std::binary_search(res.member_idx.begin(), res.member_idx.end(), root))
        out.cell.members.push_back(w.elements[root]);
    std::sort(out.cell.members.begin(), out.cell.members.end());
    return out;
}

}  // namespace

BvtSampler::BvtSampler(const BvtParams& params, std::uint64_t ball_cap)
    : params_(params), ball_cap_(ball_cap) {}

std::shared_ptr<const groups::CayleyWindow> BvtSampler::window_at(int radius) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (static_cast<std::size_t>(radius) >= balls_.size()) balls_.resize(radius + 1);
    if (!balls_[radius])
        balls_[radius] = std::make_shared<const groups::CayleyWindow>(groups::ball(
            params_.group, groups::Element::identity(params_.group), radius, ball_cap_));
    return balls_[radius];
}

VoronoiRootCell BvtSampler::operator()(const SeedSpec& seed) const {
    const std::uint64_t ss = rng::seed_state(seed);
    const std::uint64_t thr = rng::bernoulli_threshold(params_.p);

    int radius = 1;
    auto window = window_at(radius);
    std::vector<std::int32_t> pts;
    std::vector<std::uint64_t> marks;
    std::size_t sampled_upto = 0;

    while (true) {
        for (std::size_t j = sampled_upto; j < window->size(); ++j) {
            std::uint64_t key = rng::element_key(ss, window->digests[j]);
            if (rng::draw(key, 0) < thr) {
                pts.push_back(static_cast<std::int32_t>(j));
                marks.push_back(rng::draw(key, 1));
            }
        }
        sampled_upto = window->size();

        if (pts.empty()) {
            if (radius >= params_.r_max) {
                VoronoiRootCell out;
                out.cell.members = {window->elements[0]};
                out.sampled_radius = radius;
                return out;
            }
            radius = std::min(params_.r_max, 2 * radius + 1);
            window = window_at(radius);
            continue;
        }

        Resolution res = resolve(*window, pts, marks, 0);
        if (res.certified || radius >= params_.r_max)
            return make_result(*window, res, 0, radius);
        radius = std::min<std::int64_t>(params_.r_max,
                                        std::max<std::int64_t>(radius + 1, res.needed_radius));
        window = window_at(static_cast<int>(radius));
    }
}

VoronoiRootCell sample_bvt_root_cell(const BvtParams& params, const SeedSpec& seed) {
    return BvtSampler(params)(seed);
}

VoronoiRootCell cell_from_points(const groups::CayleyWindow& window,
                                 const std::vector<std::int32_t>& point_indices,
                                 const std::vector<std::uint64_t>& marks,
                                 std::int32_t root_index) {
    if (root_index < 0 || static_cast<std::size_t>(root_index) >= window.size())
        throw ConfigError("root index outside window");
    Resolution res = resolve(window, point_indices, marks, root_index);
    return make_result(window, res, root_index, window.radius);
}

IntensityCheck bvt_intensity_identity(const BvtParams& params, std::int64_t n_samples,
                                      const SeedSpec& seed, int workers) {
    if (n_samples < 1000) throw ConfigError("bvt_intensity_identity requires >= 1000 samples");
    const BvtSampler sampler(params);
    std::vector<double> inv_size(n_samples), det(n_samples);
    parallel_for(n_samples, workers, [&](std::int64_t i) {
        VoronoiRootCell c = sampler(seed.substream(static_cast<std::uint64_t>(i)));
        det[i] = c.determined ? 1.0 : 0.0;
        inv_size[i] = c.determined ? 1.0 / static_cast<double>(c.cell.members.size()) : 0.0;
    });
    IntensityCheck out;
    out.p = params.p;
    out.n = n_samples;
    out.estimate = ratio_estimate(inv_size, det, seed.master_seed);
    out.undetermined_fraction =
        1.0 - pairwise_sum(det) / static_cast<double>(n_samples);
    out.warn_undetermined = out.undetermined_fraction > 0.10;
    return out;
}

SizeHistogram bvt_cell_size_histogram(const BvtParams& params, std::int64_t n_samples,
                                      const SeedSpec& seed, int workers) {
    if (n_samples < 1) throw ConfigError("histogram requires >= 1 sample");
    const BvtSampler sampler(params);
    std::vector<std::int64_t> sizes(n_samples);
    parallel_for(n_samples, workers, [&](std::int64_t i) {
        VoronoiRootCell c = sampler(seed.substream(static_cast<std::uint64_t>(i)));
        sizes[i] = c.determined ? static_cast<std::int64_t>(c.cell.members.size()) : -1;
    });
    SizeHistogram h;
    h.total = n_samples;
    for (std::int64_t s : sizes) {
        if (s < 0) ++h.undetermined;
        else ++h.counts[s];
    }
    return h;
}

double SizeHistogram::mass(std::int64_t size) const {
    auto it = counts.find(size);
    return it == counts.end() || total == 0
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(total);
}

double SizeHistogram::undetermined_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(undetermined) / static_cast<double>(total);
}

}  // namespace irelab::bvt
