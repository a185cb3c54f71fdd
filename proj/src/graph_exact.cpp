#include <algorithm>
#include <bit>
#include <numeric>

#include "irelab/graph.hpp"

namespace irelab::graphs {

namespace {

// ---------------------------------------------------------------------------
// Exact minimum edge deletion into components of size <= k, per connected
// component.  The optimum is always attained by the crossing edges of a
// partition into connected blocks of size <= k (a disconnected block splits
// into its components at no extra cost), so we search over such partitions.
// ---------------------------------------------------------------------------

struct LocalGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;  // bitmask rows, n <= 64 for the DP/B&B paths
    std::int64_t m = 0;
};

LocalGraph make_local(const FiniteGraph& g, const std::vector<int>& comp) {
    LocalGraph lg;
    lg.n = static_cast<int>(comp.size());
    lg.adj.assign(lg.n, 0);
    std::vector<int> place(g.n, -1);
    for (int i = 0; i < lg.n; ++i) place[comp[i]] = i;
    for (int i = 0; i < lg.n; ++i)
        for (int u : g.adj[comp[i]])
            if (place[u] >= 0) lg.adj[i] |= 1ULL << place[u];
    for (int i = 0; i < lg.n; ++i) lg.m += std::popcount(lg.adj[i]);
    lg.m /= 2;
    return lg;
}

// Max-retained-edges DP over vertex subsets (components <= 20 vertices),
// computed bottom-up: f(mask) = best over connected blocks B containing the
// lowest vertex of mask, of e(B) + f(mask \ B).
class SubsetDp {
public:
    SubsetDp(const LocalGraph& g, int k) : g_(g), k_(k) {
        value_.assign(std::size_t(1) << g_.n, 0);
        choice_.assign(std::size_t(1) << g_.n, 0);
    }

    std::int64_t min_cut(std::vector<std::pair<int, int>>* witness) {
        const std::uint32_t full = (1u << g_.n) - 1u;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            mask_ = mask;
            best_ = -1;
            best_block_ = 0;
            banned_ = 0;
            grow(1u << std::countr_zero(mask), 1, 0);
            value_[mask] = best_;
            choice_[mask] = best_block_;
        }
        if (witness) {
            std::vector<int> block_of(g_.n, -1);
            int nb = 0;
            for (std::uint32_t mask = full; mask;) {
                std::uint32_t b = choice_[mask];
                for (std::uint32_t rest = b; rest;) {
                    int v = std::countr_zero(rest);
                    rest &= rest - 1;
                    block_of[v] = nb;
                }
                ++nb;
                mask ^= b;
            }
            for (int v = 0; v < g_.n; ++v) {
                std::uint64_t row = g_.adj[v];
                while (row) {
                    int u = std::countr_zero(row);
                    row &= row - 1;
                    if (v < u && block_of[v] != block_of[u]) witness->emplace_back(v, u);
                }
            }
        }
        return g_.m - value_[full];
    }

private:
    // Enumerate connected blocks within mask_ containing its lowest vertex,
    // by frontier extension with sibling banning; each block exactly once.
    void grow(std::uint32_t block, int count, std::int64_t eins) {
        std::int64_t val = eins + value_[mask_ ^ block];  // strictly smaller mask
        if (val > best_) {
            best_ = val;
            best_block_ = block;
        }
        if (count == k_) return;
        std::uint32_t frontier = 0;
        for (std::uint32_t rest = block; rest;) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            frontier |= static_cast<std::uint32_t>(g_.adj[u]);
        }
        frontier &= mask_ & ~block & ~banned_;
        std::uint32_t newly_banned = 0;
        while (frontier) {
            int u = std::countr_zero(frontier);
            std::uint32_t ubit = 1u << u;
            frontier &= frontier - 1;
            std::int64_t add = std::popcount(g_.adj[u] & block);
            banned_ |= newly_banned;
            grow(block | ubit, count + 1, eins + add);
            banned_ &= ~newly_banned;
            newly_banned |= ubit;
        }
    }

    const LocalGraph& g_;
    int k_;
    std::vector<std::int64_t> value_;
    std::vector<std::uint32_t> choice_;
    std::uint32_t mask_ = 0;
    std::int64_t best_ = -1;
    std::uint32_t best_block_ = 0;
    std::uint32_t banned_ = 0;
};

// Branch and bound over block assignments for components beyond the DP
// size.  Lower bound for the unassigned set: the larger of the fractional
// count (retainable edges <= floor(sum_v min(deg_un(v), k-1)/2)) and the
// component count (a connected piece of m vertices needs >= ceil(m/k) - 1
// cuts), plus the edges already forced into the cut by full blocks.
class BranchBound {
public:
    BranchBound(const LocalGraph& g, int k, std::int64_t incumbent,
                std::vector<int> incumbent_assign)
        : g_(g), k_(k), best_(incumbent), best_assign_(std::move(incumbent_assign)) {
        order_.resize(g_.n);
        std::iota(order_.begin(), order_.end(), 0);  // BFS order of a connected component
        std::vector<int> bfs;
        std::vector<char> seen(g_.n, 0);
        bfs.push_back(0);
        seen[0] = 1;
        for (std::size_t h = 0; h < bfs.size(); ++h) {
            std::uint64_t row = g_.adj[bfs[h]];
            while (row) {
                int u = std::countr_zero(row);
                row &= row - 1;
                if (!seen[u]) {
                    seen[u] = 1;
                    bfs.push_back(u);
                }
            }
        }
        if (static_cast<int>(bfs.size()) == g_.n) order_ = std::move(bfs);
        assign_.assign(g_.n, -1);
    }

    std::int64_t run(std::vector<int>* assign_out) {
        rec(0, 0);
        if (assign_out) *assign_out = best_assign_;
        return best_;
    }

private:
    std::int64_t lower_bound(int next) const {
        std::uint64_t un = 0;
        for (int i = next; i < g_.n; ++i) un |= 1ULL << order_[i];
        std::int64_t e_un = 0, cap2 = 0, to_full = 0;
        for (int i = next; i < g_.n; ++i) {
            int v = order_[i];
            int d = std::popcount(g_.adj[v] & un);
            e_un += d;
            cap2 += std::min(d, k_ - 1);
            std::uint64_t row = g_.adj[v] & ~un;
            while (row) {
                int u = std::countr_zero(row);
                row &= row - 1;
                if (block_size_[assign_[u]] >= k_) ++to_full;
            }
        }
        e_un /= 2;
        std::int64_t by_fraction = std::max<std::int64_t>(0, e_un - cap2 / 2);

        std::int64_t by_components = 0;
        std::uint64_t left = un;
        while (left) {
            int s = std::countr_zero(left);
            std::uint64_t comp = 1ULL << s, frontier = comp;
            while (frontier) {
                std::uint64_t grown = comp;
                std::uint64_t f = frontier;
                while (f) {
                    int u = std::countr_zero(f);
                    f &= f - 1;
                    grown |= g_.adj[u] & un;
                }
                frontier = grown & ~comp;
                comp = grown;
            }
            std::int64_t m = std::popcount(comp);
            by_components += (m + k_ - 1) / k_ - 1;
            left &= ~comp;
        }
        return std::max(by_fraction, by_components) + to_full;
    }

    void rec(int next, std::int64_t cut) {
        if (cut >= best_) return;
        if (next == g_.n) {
            best_ = cut;
            best_assign_ = assign_;
            return;
        }
        if (cut + lower_bound(next) >= best_) return;
        int v = order_[next];
        int nb = static_cast<int>(block_size_.size());
        for (int b = 0; b <= nb && b < g_.n; ++b) {
            if (b < nb && block_size_[b] >= k_) continue;
            std::int64_t crossing = 0;
            std::uint64_t row = g_.adj[v];
            while (row) {
                int u = std::countr_zero(row);
                row &= row - 1;
                if (assign_[u] >= 0 && assign_[u] != b) ++crossing;
            }
            assign_[v] = b;
            if (b == nb) block_size_.push_back(1);
            else ++block_size_[b];
            rec(next + 1, cut + crossing);
            if (b == nb) block_size_.pop_back();
            else --block_size_[b];
            assign_[v] = -1;
        }
    }

    const LocalGraph& g_;
    int k_;
    std::vector<int> order_;
    std::vector<int> assign_;
    std::vector<int> block_size_;
    std::int64_t best_;
    std::vector<int> best_assign_;
};

}  // namespace

std::int64_t min_deletion_exact(const FiniteGraph& g, int k,
                                std::vector<std::pair<int, int>>* witness) {
    if (k < 1) throw ConfigError("component size bound k must be >= 1");
    if (witness) witness->clear();
    std::int64_t total = 0;
    for (const auto& comp : connected_components(g)) {
        if (static_cast<int>(comp.size()) <= k) continue;
        LocalGraph lg = make_local(g, comp);
        std::vector<std::pair<int, int>> local_witness;
        std::int64_t cut;
        if (lg.n <= 20) {
            SubsetDp dp(lg, k);
            cut = dp.min_cut(witness ? &local_witness : nullptr);
        } else if (lg.n <= 64) {
            // greedy warm start: incumbent bound plus a fallback partition
            std::vector<std::pair<int, int>> local_edges;
            for (int v = 0; v < lg.n; ++v) {
                std::uint64_t row = lg.adj[v];
                while (row) {
                    int u = std::countr_zero(row);
                    row &= row - 1;
                    if (v < u) local_edges.emplace_back(v, u);
                }
            }
            FiniteGraph comp_graph = FiniteGraph::from_edges(lg.n, local_edges);
            HyperfinitenessCertificate warm =
                hyperfinite_greedy(comp_graph, static_cast<double>(lg.m + 1), k);
            std::vector<std::pair<int, int>> kept;
            for (auto e : comp_graph.edges)
                if (!std::binary_search(warm.witness.begin(), warm.witness.end(), e))
                    kept.push_back(e);
            std::vector<int> warm_assign(lg.n, -1);
            {
                auto comps = connected_components(FiniteGraph::from_edges(lg.n, kept));
                for (std::size_t b = 0; b < comps.size(); ++b)
                    for (int v : comps[b]) warm_assign[v] = static_cast<int>(b);
            }
            BranchBound bb(lg, k, static_cast<std::int64_t>(warm.witness.size()) + 1,
                           std::move(warm_assign));
            std::vector<int> assign;
            cut = bb.run(&assign);
            if (witness) {
                for (int v = 0; v < lg.n; ++v) {
                    std::uint64_t row = lg.adj[v];
                    while (row) {
                        int u = std::countr_zero(row);
                        row &= row - 1;
                        if (v < u && assign[v] != assign[u]) local_witness.emplace_back(v, u);
                    }
                }
            }
        } else {
            throw BudgetError("exact solver limited to components of 64 vertices",
                              comp.size());
        }
        total += cut;
        if (witness)
            for (auto [u, v] : local_witness) {
                int gu = comp[u], gv = comp[v];
                witness->emplace_back(std::min(gu, gv), std::max(gu, gv));
            }
    }
    if (witness) std::sort(witness->begin(), witness->end());
    return total;
}

bool check_certificate(const FiniteGraph& g, const HyperfinitenessCertificate& cert) {
    if (!cert.yes) return true;
    if (static_cast<double>(cert.witness.size()) >
        cert.epsilon * static_cast<double>(g.n))
        return false;
    std::vector<std::pair<int, int>> kept;
    std::vector<std::pair<int, int>> removed = cert.witness;
    std::sort(removed.begin(), removed.end());
    for (auto [u, v] : removed)
        if (!std::binary_search(g.edges.begin(), g.edges.end(), std::make_pair(u, v)))
            return false;
    for (auto e : g.edges)
        if (!std::binary_search(removed.begin(), removed.end(), e)) kept.push_back(e);
    FiniteGraph residual = FiniteGraph::from_edges(g.n, std::move(kept));
    for (const auto& comp : connected_components(residual))
        if (static_cast<int>(comp.size()) > cert.k) return false;
    return true;
}

HyperfinitenessCertificate hyperfinite_exact(const FiniteGraph& g, double epsilon, int k) {
    if (k < 1) throw ConfigError("component size bound k must be >= 1");
    if (epsilon < 0.0) throw ConfigError("epsilon must be nonnegative");
    int non_isolated = 0;
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) > 0) ++non_isolated;
    if (!(non_isolated <= 40 || g.edge_count() <= 64))
        throw BudgetError("exact infeasible, use greedy (|V| > 40 and |E| > 64)",
                          static_cast<std::uint64_t>(non_isolated));

    HyperfinitenessCertificate cert;
    cert.epsilon = epsilon;
    cert.k = k;
    std::vector<std::pair<int, int>> witness;
    std::int64_t opt = min_deletion_exact(g, k, &witness);
    cert.optimal_cut_size = opt;
    cert.yes = static_cast<double>(opt) <= epsilon * static_cast<double>(g.n);
    if (cert.yes) cert.witness = std::move(witness);
    if (!check_certificate(g, cert))
        throw std::logic_error("exact hyperfiniteness certificate failed re-verification");
    return cert;
}

}  // namespace irelab::graphs
