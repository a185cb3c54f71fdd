#include <algorithm>
#include <numeric>

#include "irelab/graph.hpp"

namespace irelab::graphs {

namespace {

struct Dsu {
    std::vector<int> parent, size;
    explicit Dsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

struct Residual {
    const FiniteGraph* g;
    std::vector<std::vector<int>> adj;  // adjacency minus removed edges

    explicit Residual(const FiniteGraph& graph) : g(&graph), adj(graph.adj) {}

    void remove_edge(int u, int v) {
        std::erase(adj[u], v);
        std::erase(adj[v], u);
    }
};

// BFS-sweep cut: orders the component from `seed`, scores each prefix by
// cut edges over the smaller side, and returns the best prefix.
struct SweepCut {
    double score = 1e300;
    std::int64_t cut_edges = -1;
    std::vector<int> side;
};

SweepCut sweep_from(const Residual& r, const std::vector<int>& comp, int seed) {
    std::vector<int> order;
    std::vector<char> in_comp(r.g->n, 0), seen(r.g->n, 0);
    for (int v : comp) in_comp[v] = 1;
    order.push_back(seed);
    seen[seed] = 1;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (int u : r.adj[order[h]])
            if (in_comp[u] && !seen[u]) {
                seen[u] = 1;
                order.push_back(u);
            }

    SweepCut best;
    std::vector<char> in_prefix(r.g->n, 0);
    std::int64_t cut = 0;
    const std::int64_t n = static_cast<std::int64_t>(comp.size());
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        int v = order[i];
        std::int64_t to_prefix = 0, deg = 0;
        for (int u : r.adj[v])
            if (in_comp[u]) {
                ++deg;
                if (in_prefix[u]) ++to_prefix;
            }
        cut += deg - 2 * to_prefix;
        in_prefix[v] = 1;
        double denom = static_cast<double>(std::min(i + 1, n - i - 1));
        double score = static_cast<double>(cut) / denom;
        if (score < best.score) {
            best.score = score;
            best.cut_edges = cut;
            best.side.assign(order.begin(), order.begin() + i + 1);
        }
    }
    return best;
}

void split_component(Residual& r, const std::vector<int>& comp, int k,
                     std::vector<std::pair<int, int>>& removed) {
    if (static_cast<int>(comp.size()) <= k) return;

    // a few deterministic seeds: smallest id, max degree, BFS-farthest
    std::vector<int> seeds{comp.front()};
    int hi_deg = comp.front();
    for (int v : comp)
        if (r.adj[v].size() > r.adj[hi_deg].size()) hi_deg = v;
    seeds.push_back(hi_deg);
    {
        std::vector<char> in_comp(r.g->n, 0);
        for (int v : comp) in_comp[v] = 1;
        std::vector<int> order{comp.front()};
        std::vector<char> seen(r.g->n, 0);
        seen[comp.front()] = 1;
        for (std::size_t h = 0; h < order.size(); ++h)
            for (int u : r.adj[order[h]])
                if (in_comp[u] && !seen[u]) {
                    seen[u] = 1;
                    order.push_back(u);
                }
        seeds.push_back(order.back());
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    SweepCut best;
    for (int s : seeds) {
        SweepCut c = sweep_from(r, comp, s);
        if (c.cut_edges >= 0 && c.score < best.score) best = std::move(c);
    }
    if (best.cut_edges < 0) return;  // cannot happen on a connected component > k

    std::vector<char> in_side(r.g->n, 0);
    for (int v : best.side) in_side[v] = 1;
    for (int v : best.side)
        for (int u : std::vector<int>(r.adj[v]))
            if (!in_side[u]) {
                removed.emplace_back(std::min(u, v), std::max(u, v));
                r.remove_edge(u, v);
            }

    // recurse on both sides' residual components
    std::vector<char> in_comp(r.g->n, 0), seen(r.g->n, 0);
    for (int v : comp) in_comp[v] = 1;
    for (int s : comp) {
        if (seen[s]) continue;
        std::vector<int> part{s};
        seen[s] = 1;
        for (std::size_t h = 0; h < part.size(); ++h)
            for (int u : r.adj[part[h]])
                if (in_comp[u] && !seen[u]) {
                    seen[u] = 1;
                    part.push_back(u);
                }
        std::sort(part.begin(), part.end());
        split_component(r, part, k, removed);
    }
}

}  // namespace

HyperfinitenessCertificate hyperfinite_greedy(const FiniteGraph& g, double epsilon, int k) {
    if (k < 1) throw ConfigError("component size bound k must be >= 1");
    if (epsilon < 0.0) throw ConfigError("epsilon must be nonnegative");

    HyperfinitenessCertificate cert;
    cert.epsilon = epsilon;
    cert.k = k;
    cert.heuristic = true;

    Residual r(g);
    std::vector<std::pair<int, int>> removed;
    for (const auto& comp : connected_components(g)) split_component(r, comp, k, removed);
    std::sort(removed.begin(), removed.end());

    // edge-return passes: re-add any removed edge whose endpoints' current
    // components merge to size <= k (or already share a component)
    Dsu dsu(g.n);
    std::vector<char> is_removed(removed.size(), 1);
    for (auto e : g.edges)
        if (!std::binary_search(removed.begin(), removed.end(), e)) dsu.unite(e.first, e.second);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < removed.size(); ++i) {
            if (!is_removed[i]) continue;
            auto [u, v] = removed[i];
            int a = dsu.find(u), b = dsu.find(v);
            if (a == b || dsu.size[a] + dsu.size[b] <= k) {
                dsu.unite(u, v);
                is_removed[i] = 0;
                changed = true;
            }
        }
    }
    std::vector<std::pair<int, int>> final_removed;
    for (std::size_t i = 0; i < removed.size(); ++i)
        if (is_removed[i]) final_removed.push_back(removed[i]);

    cert.yes = static_cast<double>(final_removed.size()) <=
               epsilon * static_cast<double>(g.n);
    if (cert.yes) cert.witness = std::move(final_removed);
    if (!check_certificate(g, cert))
        throw std::logic_error("greedy hyperfiniteness certificate failed re-verification");
    return cert;
}

}  // namespace irelab::graphs
