#include "irelab/fire.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "irelab/parallel.hpp"

namespace irelab::fire {

CellSet::CellSet(GroupSpec s, std::vector<Element> t, double d)
    : spec(s), tile(std::move(t)), delta(d) {
    if (tile.empty()) throw ConfigError("cell set A must be non-empty");
    std::sort(tile.begin(), tile.end());
    tile.erase(std::unique(tile.begin(), tile.end()), tile.end());
    for (const Element& a : tile)
        if (!(a.spec() == spec)) throw ConfigError("cell-set element from wrong group");
    Element id = Element::identity(spec);
    if (!std::binary_search(tile.begin(), tile.end(), id))
        throw ConfigError("cell set A must contain the identity");
    if (!(delta > 0.0 && delta < 0.5))
        throw ConfigError("delta must lie in (0, 1/2): bounds |A|(1-2delta) and "
                          "4 delta^2 (1-2delta)^2 are vacuous otherwise");
}

std::vector<Element> determinacy_window(const CellSet& cell_set) {
    const auto& a = cell_set.tile;
    auto ainv = groups::set_inverse(a);
    auto aainv = groups::set_product(a, ainv);
    auto ainvaainv = groups::set_product(ainv, aainv);
    std::vector<Element> w = ainv;
    w.insert(w.end(), aainv.begin(), aainv.end());
    w.insert(w.end(), ainvaainv.begin(), ainvaainv.end());
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

TilingSampler::TilingSampler(CellSet cs) : cs_(std::move(cs)) {
    ainv_ = groups::set_inverse(cs_.tile);
    for (const Element& x : ainv_) ainv_digests_.push_back(x.digest());
    p_ = groups::set_product(cs_.tile, ainv_);
    auto pos = [&](const Element& e) {
        auto it = std::lower_bound(p_.begin(), p_.end(), e);
        return static_cast<std::size_t>(it - p_.begin());
    };
    idx_e_ = pos(Element::identity(cs_.spec));
    for (const Element& a : cs_.tile) {
        tile_idx_.push_back(pos(a));
        std::vector<std::size_t> cands;
        for (const Element& binv : ainv_) cands.push_back(pos(groups::multiply(a, binv)));
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        cand_idx_.push_back(std::move(cands));
    }
}

RootCell TilingSampler::operator()(const SeedSpec& seed) const {
    const std::uint64_t ss = rng::seed_state(seed);
    const std::uint64_t thr = rng::bernoulli_threshold(cs_.intensity());
    const Element id = Element::identity(cs_.spec);

    // Pi restricted to A^{-1} decides the root's fate: o in [Pi]_R iff
    // Pi meets A^{-1} (the identity's own membership draw is among these).
    std::size_t best = ainv_.size();
    std::uint64_t best_mark = 0;
    bool root_in_pi = false;
    for (std::size_t i = 0; i < ainv_.size(); ++i) {
        std::uint64_t key = rng::element_key(ss, ainv_digests_[i]);
        if (rng::draw(key, 0) >= thr) continue;
        std::uint64_t mark = rng::draw(key, 1);
        if (ainv_[i] == id) root_in_pi = true;
        if (best == ainv_.size() || mark < best_mark ||
            (mark == best_mark && ainv_[i] < ainv_[best])) {
            best = i;
            best_mark = mark;
        }
    }
    if (best == ainv_.size()) return RootCell{{id}, std::nullopt, false, true};

    const Element x0 = root_in_pi ? id : ainv_[best];

    // Materialize Pi with marks on x0 * (A A^{-1}); everything the root
    // cell depends on lives there.
    std::vector<Element> elems;
    elems.reserve(p_.size());
    std::vector<char> in_pi(p_.size(), 0);
    std::vector<std::uint64_t> marks(p_.size(), 0);
    for (std::size_t j = 0; j < p_.size(); ++j) {
        elems.push_back(groups::multiply(x0, p_[j]));
        std::uint64_t key = rng::element_key(ss, elems.back().digest());
        if (rng::draw(key, 0) < thr) {
            in_pi[j] = 1;
            marks[j] = rng::draw(key, 1);
        }
    }

    RootCell cell;
    cell.in_pi_class = true;
    cell.center = x0;
    for (std::size_t ai = 0; ai < cs_.tile.size(); ++ai) {
        std::size_t jg = tile_idx_[ai];
        if (jg == idx_e_) {  // g == x0: a center always keeps itself
            cell.members.push_back(x0);
            continue;
        }
        if (in_pi[jg]) continue;  // g in Pi claims its own tile
        std::size_t arg = p_.size();
        for (std::size_t jc : cand_idx_[ai]) {
            if (!in_pi[jc]) continue;
            if (arg == p_.size() || marks[jc] < marks[arg] ||
                (marks[jc] == marks[arg] && elems[jc] < elems[arg]))
                arg = jc;
        }
        if (arg == idx_e_) cell.members.push_back(elems[jg]);
    }
    std::sort(cell.members.begin(), cell.members.end());
    cell.determined = true;
    return cell;
}

RootCell sample_root_cell(const CellSet& cell_set, const SeedSpec& seed) {
    return TilingSampler(cell_set)(seed);
}

MarkedPoints MarkedPoints::from_configuration(const sampling::MarkedConfiguration& cfg) {
    MarkedPoints mp;
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        mp.pts.emplace_back(cfg.window->elements[cfg.points[i]], cfg.marks[i]);
    mp.sort();
    return mp;
}

void MarkedPoints::sort() {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

const std::uint64_t* MarkedPoints::find(const Element& e) const {
    auto it = std::lower_bound(pts.begin(), pts.end(), e,
                               [](const auto& p, const Element& x) { return p.first < x; });
    if (it == pts.end() || !(it->first == e)) return nullptr;
    return &it->second;
}

Element choose_center(const CellSet& cell_set, const MarkedPoints& pts, const Element& v) {
    if (pts.find(v)) return v;
    std::optional<Element> best;
    std::uint64_t best_mark = 0;
    for (const Element& a : cell_set.tile) {
        Element x = groups::multiply(v, groups::inverse(a));  // v in xA
        const std::uint64_t* m = pts.find(x);
        if (!m) continue;
        if (!best || *m < best_mark || (*m == best_mark && x < *best)) {
            best = std::move(x);
            best_mark = *m;
        }
    }
    return best ? *best : v;
}

RootCell root_cell_from_points(const CellSet& cell_set, const MarkedPoints& pts,
                               const Element& root) {
    Element h_root = choose_center(cell_set, pts, root);
    RootCell cell;
    if (h_root == root && !pts.find(root)) {
        cell.members = {root};
        cell.in_pi_class = false;
        return cell;
    }
    cell.in_pi_class = true;
    cell.center = h_root;
    for (const Element& a : cell_set.tile) {
        Element g = groups::multiply(h_root, a);
        if (choose_center(cell_set, pts, g) == h_root) cell.members.push_back(g);
    }
    std::sort(cell.members.begin(), cell.members.end());
    cell.members.erase(std::unique(cell.members.begin(), cell.members.end()),
                       cell.members.end());
    return cell;
}

// ---------------------------------------------------------------------------
// Exact law by enumeration.
//
// For a fixed value S of Pi on W and a fixed root center x0 in S, the
// outcome depends on the marks only through the set L of points of S marked
// below x0, and only through L intersected with
// K(x0) = (x0 A A^{-1} u A^{-1}) \ {x0}.  Conditioning on the mark of x0,
//   P[L n K = T] = |T|! (|K n S| - |T|)! / (|K n S| + 1)!.
// ---------------------------------------------------------------------------

namespace {

struct OracleTables {
    std::vector<Element> w;  // determinacy window, sorted
    std::uint32_t mask_ainv = 0;
    std::uint32_t bit_e = 0;
    std::vector<Element> ainv;  // root-center candidates
    std::vector<std::uint32_t> c_bit;
    std::vector<std::vector<std::uint32_t>> g_bit;      // per (candidate, tile element)
    std::vector<std::vector<std::uint32_t>> cand_mask;  // (g A^{-1}) \ {x0}
    std::vector<std::uint32_t> k_mask;
};

OracleTables build_oracle_tables(const CellSet& cs) {
    OracleTables t;
    t.w = determinacy_window(cs);
    if (t.w.size() > 22)
        throw BudgetError("exact_distribution window too large: |W| = " +
                              std::to_string(t.w.size()) + " (cap 22)",
                          t.w.size());
    t.ainv = groups::set_inverse(cs.tile);
    if (t.ainv.size() > 8)
        throw BudgetError("exact_distribution has too many root-center candidates: " +
                              std::to_string(t.ainv.size()) + " (cap 8)",
                          t.ainv.size());
    auto bit_of = [&](const Element& e) -> std::uint32_t {
        auto it = std::lower_bound(t.w.begin(), t.w.end(), e);
        if (it == t.w.end() || !(*it == e))
            throw ConfigError("internal: element outside determinacy window");
        return 1u << static_cast<std::uint32_t>(it - t.w.begin());
    };
    t.bit_e = bit_of(Element::identity(cs.spec));
    for (const Element& x : t.ainv) t.mask_ainv |= bit_of(x);

    for (const Element& c : t.ainv) {
        std::uint32_t cbit = bit_of(c);
        std::vector<std::uint32_t> gbits, cmasks;
        std::uint32_t k = t.mask_ainv & ~cbit;
        for (const Element& a : cs.tile) {
            Element g = groups::multiply(c, a);
            gbits.push_back(bit_of(g));
            std::uint32_t m = 0;
            for (const Element& x : t.ainv) m |= bit_of(groups::multiply(g, x));  // g * A^{-1}
            m &= ~cbit;
            cmasks.push_back(m);
            k |= m;
        }
        t.c_bit.push_back(cbit);
        t.g_bit.push_back(std::move(gbits));
        t.cand_mask.push_back(std::move(cmasks));
        t.k_mask.push_back(k);
    }
    return t;
}

}  // namespace

double ExactLaw::total_mass() const {
    double s = 0.0;
    for (const auto& [k, v] : probs) s += v;
    return s;
}

double ExactLaw::p_in_pi() const {
    double s = 0.0;
    for (const auto& [k, v] : probs)
        if (k.first) s += v;
    return s;
}

double ExactLaw::mean_size_indicator() const {
    double s = 0.0;
    for (const auto& [k, v] : probs)
        if (k.first) s += static_cast<double>(k.second) * v;
    return s;
}

double ExactLaw::conditional_mean_size() const {
    double p = p_in_pi();
    return p > 0.0 ? mean_size_indicator() / p : 0.0;
}

ExactLaw exact_distribution(const CellSet& cell_set, std::uint64_t work_budget) {
    OracleTables t = build_oracle_tables(cell_set);
    const int nw = static_cast<int>(t.w.size());
    const double q = cell_set.intensity();

    std::vector<double> pow_q(nw + 1, 1.0), pow_1q(nw + 1, 1.0);
    for (int i = 1; i <= nw; ++i) {
        pow_q[i] = pow_q[i - 1] * q;
        pow_1q[i] = pow_1q[i - 1] * (1.0 - q);
    }
    // beta_w[l][m] = l! (m-l)! / (m+1)!
    std::vector<std::vector<double>> beta_w(nw + 1, std::vector<double>(nw + 1, 0.0));
    for (int m = 0; m <= nw; ++m) {
        for (int l = 0; l <= m; ++l) {
            double v = 1.0 / static_cast<double>(m + 1);
            for (int i = 1; i <= l; ++i)
                v *= static_cast<double>(i) / static_cast<double>(m + 1 - i);
            beta_w[l][m] = v;
        }
    }

    ExactLaw law;
    std::uint64_t work = 0;
    const std::uint32_t full = (1u << nw) - 1u;
    const std::size_t n_tile = cell_set.tile.size();

    for (std::uint32_t s = 0;; ++s) {
        const int pop = std::popcount(s);
        const double ws = pow_q[pop] * pow_1q[nw - pop];
        if ((s & t.mask_ainv) == 0) {
            law.probs[{false, 1}] += ws;
        } else {
            const bool root_in_pi = (s & t.bit_e) != 0;
            for (std::size_t c = 0; c < t.ainv.size(); ++c) {
                if (root_in_pi) {
                    if (t.c_bit[c] != t.bit_e) continue;  // e in Pi keeps itself
                } else if ((s & t.c_bit[c]) == 0) {
                    continue;  // candidate center must lie in Pi
                }
                const std::uint32_t sk = s & t.k_mask[c];
                const int m = std::popcount(sk);
                // Below-sets meeting Pi n A^{-1} would cost x0 the root's
                // argmin; irrelevant when e itself is in Pi.
                const std::uint32_t l_space = root_in_pi ? sk : (sk & ~t.mask_ainv);
                std::uint32_t l = l_space;
                while (true) {
                    work += n_tile;
                    if (work > work_budget)
                        throw BudgetError("exact_distribution work budget exceeded", work);
                    std::int64_t size = 0;
                    for (std::size_t ai = 0; ai < n_tile; ++ai) {
                        std::uint32_t gb = t.g_bit[c][ai];
                        if (gb == t.c_bit[c]) {
                            ++size;  // the center itself
                        } else if (s & gb) {
                            // g in Pi keeps its own tile
                        } else if ((s & t.cand_mask[c][ai] & l) == 0) {
                            ++size;
                        }
                    }
                    law.probs[{true, size}] += ws * beta_w[std::popcount(l)][m];
                    if (l == 0) break;
                    l = (l - 1) & l_space;
                }
            }
        }
        if (s == full) break;
    }
    return law;
}

std::string bound_name(BoundId id) {
    switch (id) {
        case BoundId::i: return "i";
        case BoundId::ii: return "ii";
        case BoundId::iii: return "iii";
    }
    return "?";
}

std::vector<BoundReport> verify_tiling_bounds(const CellSet& cell_set, std::int64_t n_samples,
                                             const SeedSpec& seed, int workers) {
    if (n_samples < 1000) throw ConfigError("verify_tiling_bounds requires >= 1000 samples");
    const double delta = cell_set.delta;
    const double abs_a = static_cast<double>(cell_set.tile.size());
    const double size_cut = (1.0 - 2.0 * delta) * (1.0 - 2.0 * delta) * abs_a;
    const TilingSampler sampler(cell_set);

    std::vector<double> in_pi(n_samples), size_ind(n_samples), large_ind(n_samples);
    parallel_for(n_samples, workers, [&](std::int64_t i) {
        RootCell cell = sampler(seed.substream(static_cast<std::uint64_t>(i)));
        const double in = cell.in_pi_class ? 1.0 : 0.0;
        in_pi[i] = in;
        size_ind[i] = in * static_cast<double>(cell.members.size());
        large_ind[i] = in * (static_cast<double>(cell.members.size()) >= size_cut ? 1.0 : 0.0);
    });

    std::vector<BoundReport> reports(3);
    reports[0].id = BoundId::i;
    reports[0].bound = delta - delta * delta;
    reports[0].estimate = mean_estimate(in_pi, seed.master_seed);

    reports[1].id = BoundId::ii;
    reports[1].bound = abs_a * (1.0 - 2.0 * delta);
    reports[2].id = BoundId::iii;
    reports[2].bound =
        4.0 * delta * delta * (1.0 - 2.0 * delta) * (1.0 - 2.0 * delta);

    const double mass = pairwise_sum(in_pi);
    if (mass <= 0.0) {
        for (int j : {1, 2}) {
            reports[j].insufficient_conditioning = true;
            reports[j].estimate.n = n_samples;
            reports[j].estimate.seed = seed.master_seed;
        }
    } else {
        reports[1].estimate = ratio_estimate(size_ind, in_pi, seed.master_seed);
        reports[2].estimate = ratio_estimate(large_ind, in_pi, seed.master_seed);
    }

    for (BoundReport& r : reports)
        r.passes = r.insufficient_conditioning || r.ucl99() >= r.bound;
    return reports;
}

double delta_for_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
    return (1.0 - std::sqrt(1.0 - epsilon)) / 2.0;
}

}  // namespace irelab::fire
