#include "irelab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "irelab/rng.hpp"

namespace irelab::graphs {

FiniteGraph FiniteGraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw ConfigError("vertex count must be nonnegative");
    FiniteGraph g;
    g.n = n;
    for (auto& [u, v] : edges) {
        if (u == v) throw ConfigError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n)
            throw ConfigError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") outside vertex range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

FiniteGraph FiniteGraph::parse(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int declared_n = -1, max_v = -1, line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank or comment-only line
        if (first == "n") {
            if (!(ls >> declared_n) || declared_n < 0)
                throw ParseError("bad vertex-count header", line_no);
            continue;
        }
        long u, v;
        char* end = nullptr;
        u = std::strtol(first.c_str(), &end, 10);
        if (!end || *end != '\0') throw ParseError("bad vertex id '" + first + "'", line_no);
        if (!(ls >> v)) throw ParseError("missing second endpoint", line_no);
        std::string trailing;
        if (ls >> trailing) throw ParseError("trailing tokens after edge", line_no);
        if (u < 0 || v < 0) throw ParseError("negative vertex id", line_no);
        if (u == v) throw ParseError("self-loop", line_no);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_v = std::max(max_v, static_cast<int>(std::max(u, v)));
    }
    int n = declared_n >= 0 ? declared_n : max_v + 1;
    if (max_v >= n) throw ParseError("edge endpoint exceeds declared vertex count", line_no);
    return from_edges(n, std::move(edges));
}

FiniteGraph FiniteGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open graph file '" + path + "'");
    return parse(in);
}

std::string FiniteGraph::to_text() const {
    std::ostringstream os;
    os << "n " << n << "\n";
    for (auto [u, v] : edges) os << u << " " << v << "\n";
    return os.str();
}

int FiniteGraph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
    return d;
}

FiniteGraph induced_subgraph(const FiniteGraph& g, const std::vector<int>& keep) {
    std::vector<int> place(g.n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        int v = keep[i];
        if (v < 0 || v >= g.n) throw ConfigError("induced subgraph vertex outside range");
        if (place[v] >= 0) throw ConfigError("duplicate vertex in induced subgraph");
        place[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges)
        if (place[u] >= 0 && place[v] >= 0) edges.emplace_back(place[u], place[v]);
    return FiniteGraph::from_edges(static_cast<int>(keep.size()), std::move(edges));
}

std::vector<std::vector<int>> connected_components(const FiniteGraph& g) {
    std::vector<int> comp(g.n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int u : g.adj[v])
                if (comp[u] < 0) {
                    comp[u] = comp[s];
                    stack.push_back(u);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

bool is_connected(const FiniteGraph& g) {
    return g.n <= 1 || connected_components(g).size() == 1;
}

FiniteGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return FiniteGraph::from_edges(n, std::move(e));
}

FiniteGraph cycle_graph(int n) {
    if (n < 3) throw ConfigError("cycle needs >= 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return FiniteGraph::from_edges(n, std::move(e));
}

FiniteGraph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return FiniteGraph::from_edges(n, std::move(e));
}

FiniteGraph hypercube_graph(int d) {
    if (d < 1 || d > 20) throw ConfigError("hypercube dimension out of range");
    int n = 1 << d;
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < d; ++b)
            if (!(v & (1 << b))) e.emplace_back(v, v | (1 << b));
    return FiniteGraph::from_edges(n, std::move(e));
}

FiniteGraph random_regular_graph(int n, int d, std::uint64_t seed) {
    if (n < d + 1 || (static_cast<std::int64_t>(n) * d) % 2 != 0)
        throw ConfigError("no d-regular graph on these parameters");
    std::uint64_t state = rng::mix64(seed ^ 0x7265677261706864ULL);
    auto next = [&]() { return state = rng::mix64(state); };
    for (int attempt = 0; attempt < 10000; ++attempt) {
        // pairing model: shuffle n*d half-edges, read off consecutive pairs
        std::vector<int> stubs(static_cast<std::size_t>(n) * d);
        for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int>(i / d);
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[next() % i]);
        std::vector<std::pair<int, int>> e;
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) simple = false;
            else e.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (!simple) continue;
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) continue;  // parallel edge
        FiniteGraph g = FiniteGraph::from_edges(n, std::move(e));
        if (is_connected(g)) return g;
    }
    throw ConfigError("random regular graph generation failed to converge");
}

std::int64_t edge_boundary(const FiniteGraph& g, const std::vector<int>& f) {
    std::vector<char> in(g.n, 0);
    for (int v : f) {
        if (v < 0 || v >= g.n) throw ConfigError("boundary set vertex outside range");
        in[v] = 1;
    }
    std::int64_t b = 0;
    for (auto [u, v] : g.edges)
        if (in[u] != in[v]) ++b;
    return b;
}

}  // namespace irelab::graphs
