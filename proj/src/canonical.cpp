#include "irelab/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "irelab/rng.hpp"

namespace irelab::local {

void RootedGraph::normalize() {
    if (n < 1) throw ConfigError("rooted graph needs at least one vertex");
    if (root < 0 || root >= n) throw ConfigError("root outside vertex range");
    for (auto& [u, v] : edges) {
        if (u == v) throw ConfigError("self-loop in rooted graph");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw ConfigError("edge endpoint outside vertex range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::string Digest128::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 0; i < 16; ++i) {
        std::uint64_t w = i < 8 ? hi : lo;
        int shift = 56 - 8 * (i % 8);
        unsigned byte = static_cast<unsigned>((w >> shift) & 0xff);
        s[2 * i] = digits[byte >> 4];
        s[2 * i + 1] = digits[byte & 0xf];
    }
    return s;
}

namespace {

using AdjMask = std::vector<std::uint64_t>;  // one 64-bit row per vertex

// Refines colours to the coarsest stable colouring.  Colour ids are
// re-assigned each round by sorted signature, so they depend only on the
// isomorphism type, never on vertex labels.
void refine(const AdjMask& adj, int n, std::vector<int>& colour) {
    while (true) {
        std::vector<std::pair<std::vector<int>, int>> sorted(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig;
            sig.push_back(colour[v]);
            std::vector<int> nb;
            std::uint64_t row = adj[v];
            while (row) {
                int u = std::countr_zero(row);
                row &= row - 1;
                nb.push_back(colour[u]);
            }
            std::sort(nb.begin(), nb.end());
            sig.insert(sig.end(), nb.begin(), nb.end());
            sorted[v] = {std::move(sig), v};
        }
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(n);
        int classes = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++classes;
            next[sorted[i].second] = classes;
        }
        if (next == colour) return;
        colour = std::move(next);
    }
}

using Cert = std::vector<std::uint64_t>;

Cert certificate_for(const AdjMask& adj, int n, const std::vector<int>& colour) {
    std::vector<int> perm(n);  // canonical position -> vertex
    for (int v = 0; v < n; ++v) perm[colour[v]] = v;
    std::vector<int> place(n);  // vertex -> canonical position
    for (int pos = 0; pos < n; ++pos) place[perm[pos]] = pos;
    Cert cert(n, 0);
    for (int pos = 0; pos < n; ++pos) {
        std::uint64_t row = adj[perm[pos]];
        while (row) {
            int u = std::countr_zero(row);
            row &= row - 1;
            cert[pos] |= 1ULL << place[u];
        }
    }
    return cert;
}

void search(const AdjMask& adj, int n, std::vector<int> colour, Cert& best, bool& have_best) {
    refine(adj, n, colour);
    int max_colour = *std::max_element(colour.begin(), colour.end());
    if (max_colour == n - 1) {
        Cert cert = certificate_for(adj, n, colour);
        if (!have_best || cert < best) {
            best = std::move(cert);
            have_best = true;
        }
        return;
    }
    // first (smallest-id) non-singleton colour class
    std::vector<int> count(max_colour + 1, 0);
    for (int v = 0; v < n; ++v) ++count[colour[v]];
    int target = 0;
    while (count[target] < 2) ++target;
    for (int v = 0; v < n; ++v) {
        if (colour[v] != target) continue;
        std::vector<int> branched = colour;
        branched[v] = max_colour + 1;  // same fresh colour in every branch
        search(adj, n, std::move(branched), best, have_best);
    }
}

}  // namespace

CanonicalForm canonical_form(const RootedGraph& input) {
    RootedGraph g = input;
    g.normalize();
    if (g.n > 64) throw ConfigError("canonicalization is capped at 64 vertices");

    AdjMask adj(g.n, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= 1ULL << v;
        adj[v] |= 1ULL << u;
    }
    std::vector<int> colour(g.n, 1);
    colour[g.root] = 0;
    if (g.n == 1) colour[0] = 0;

    Cert best;
    bool have_best = false;
    search(adj, g.n, std::move(colour), best, have_best);

    CanonicalForm form;
    form.n = g.n;
    for (int pos = 0; pos < g.n; ++pos) {
        std::uint64_t row = best[pos];
        while (row) {
            int u = std::countr_zero(row);
            row &= row - 1;
            if (u > pos) form.edges.emplace_back(pos, u);
        }
    }
    std::sort(form.edges.begin(), form.edges.end());
    return form;
}

Digest128 canonical_hash(const RootedGraph& g) {
    CanonicalForm form = canonical_form(g);
    std::vector<std::uint64_t> words;
    words.reserve(form.edges.size() + 1);
    words.push_back(static_cast<std::uint64_t>(form.n));
    for (auto [u, v] : form.edges)
        words.push_back((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v));
    Digest128 d;
    d.lo = rng::digest(words);
    std::uint64_t h = 0x510e527fade682d1ULL;  // second chain, distinct IV
    for (std::uint64_t w : words) h = rng::absorb(h, w);
    d.hi = rng::absorb(h, words.size());
    return d;
}

}  // namespace irelab::local
