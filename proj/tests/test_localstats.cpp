#include "doctest.h"

#include <cmath>
#include <set>

#include "irelab/localstats.hpp"
#include "irelab/rng.hpp"
#include "support/oracles.hpp"

using namespace irelab;
using namespace irelab::groups;
using namespace irelab::local;

namespace {

// brute-force canonical form: minimum adjacency encoding over all
// permutations fixing the root at position 0
std::vector<std::uint64_t> brute_cert(const RootedGraph& g) {
    std::vector<int> others;
    for (int v = 0; v < g.n; ++v)
        if (v != g.root) others.push_back(v);
    std::vector<std::uint64_t> best;
    std::sort(others.begin(), others.end());
    do {
        std::vector<int> place(g.n);
        place[g.root] = 0;
        for (std::size_t i = 0; i < others.size(); ++i) place[others[i]] = static_cast<int>(i) + 1;
        std::vector<std::uint64_t> rows(g.n, 0);
        for (auto [u, v] : g.edges) {
            rows[place[u]] |= 1ULL << place[v];
            rows[place[v]] |= 1ULL << place[u];
        }
        if (best.empty() || rows < best) best = rows;
    } while (std::next_permutation(others.begin(), others.end()));
    return best;
}

RootedGraph random_rooted_graph(int n, double edge_p, std::uint64_t seed) {
    RootedGraph g;
    g.n = n;
    std::uint64_t state = rng::mix64(seed);
    auto next = [&]() { return state = rng::mix64(state); };
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng::to_unit_double(next()) < edge_p) g.edges.emplace_back(u, v);
    g.root = static_cast<int>(next() % n);
    return g;
}

RootedGraph relabel(const RootedGraph& g, std::uint64_t seed) {
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t state = rng::mix64(seed ^ 0xabcd);
    for (int i = g.n; i > 1; --i)
        std::swap(perm[i - 1], perm[(state = rng::mix64(state)) % i]);
    RootedGraph out;
    out.n = g.n;
    out.root = perm[g.root];
    for (auto [u, v] : g.edges) out.edges.emplace_back(perm[u], perm[v]);
    out.normalize();
    return out;
}

fire::RootCell z_cell(std::vector<std::int64_t> xs) {
    GroupSpec z1 = GroupSpec::free_abelian(1);
    fire::RootCell cell;
    for (auto x : xs) cell.members.emplace_back(z1, std::vector<std::int64_t>{x});
    std::sort(cell.members.begin(), cell.members.end());
    cell.in_pi_class = true;
    cell.determined = true;
    return cell;
}

}  // namespace

TEST_CASE("canonical form is a complete invariant on <= 5 vertices") {
    // exhaustive: all labelled graphs, every root; IR classes must coincide
    // with brute-force classes
    for (int n = 1; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        std::map<std::vector<std::uint64_t>, std::set<std::string>> brute_to_ir;
        std::map<std::string, std::set<std::vector<std::uint64_t>>> ir_to_brute;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            std::vector<std::pair<int, int>> edges;
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask & (1u << bit)) edges.emplace_back(u, v);
            for (int root = 0; root < n; ++root) {
                RootedGraph g{n, root, edges};
                CanonicalForm form = canonical_form(g);
                std::string key = std::to_string(form.n);
                for (auto [u, v] : form.edges)
                    key += "," + std::to_string(u) + "-" + std::to_string(v);
                brute_to_ir[brute_cert(g)].insert(key);
                ir_to_brute[key].insert(brute_cert(g));
            }
        }
        for (const auto& [b, irs] : brute_to_ir) CHECK(irs.size() == 1);
        for (const auto& [i, brutes] : ir_to_brute) CHECK(brutes.size() == 1);
    }
}

TEST_CASE("hash is invariant under relabelling (6-8 vertices, randomized)") {
    int checked = 0;
    for (int n = 6; n <= 8; ++n) {
        for (int t = 0; t < 70; ++t) {
            RootedGraph g = random_rooted_graph(n, 0.4, 1000 * n + t);
            g.normalize();
            Digest128 h = canonical_hash(g);
            for (int r = 0; r < 50; ++r) {
                RootedGraph g2 = relabel(g, 7919 * r + t);
                CHECK(canonical_hash(g2) == h);
                ++checked;
            }
        }
    }
    CHECK(checked >= 10000);
}

TEST_CASE("root placement changes the canonical form") {
    RootedGraph end{3, 0, {{0, 1}, {1, 2}}};
    RootedGraph mid{3, 1, {{0, 1}, {1, 2}}};
    CHECK(canonical_hash(end) != canonical_hash(mid));
    RootedGraph other_end{3, 2, {{0, 1}, {1, 2}}};
    CHECK(canonical_hash(end) == canonical_hash(other_end));
}

TEST_CASE("vertex cap") {
    RootedGraph big;
    big.n = 65;
    big.root = 0;
    for (int i = 0; i + 1 < 65; ++i) big.edges.emplace_back(i, i + 1);
    CHECK_THROWS_AS(canonical_form(big), ConfigError);
}

TEST_CASE("root component neighborhoods") {
    GroupSpec z1 = GroupSpec::free_abelian(1);
    auto window = ball(z1, Element::identity(z1), 3);

    auto singleton = z_cell({0});
    RootedNeighborhood nb1 = root_component_neighborhood(singleton, window, 2);
    CHECK(nb1.graph.n == 1);
    CHECK(nb1.graph.edges.empty());

    // cell {0,1,2}, radius 1: a path of two vertices rooted at an end
    auto cell = z_cell({0, 1, 2});
    RootedNeighborhood nb2 = root_component_neighborhood(cell, window, 1);
    CHECK(nb2.graph.n == 2);
    CHECK(nb2.graph.edges == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(nb2.graph.root == 0);

    // radius 2 reaches the whole path; root at an end
    RootedNeighborhood nb3 = root_component_neighborhood(cell, window, 2);
    CHECK(nb3.graph.n == 3);
    CHECK(nb3.hash == canonical_hash(RootedGraph{3, 0, {{0, 1}, {1, 2}}}));

    // the component of the root stops at gaps
    auto gapped = z_cell({0, 1, 3});
    RootedNeighborhood nb4 = root_component_neighborhood(gapped, window, 3);
    CHECK(nb4.graph.n == 2);

    fire::RootCell undet = z_cell({0});
    undet.determined = false;
    CHECK_THROWS_AS(root_component_neighborhood(undet, window, 1), ConfigError);
}

TEST_CASE("collect_distribution determinism and merging") {
    GroupSpec z1 = GroupSpec::free_abelian(1);
    // deterministic sampler: always the path {0,1}
    RootCellSampler sampler = [&](const SeedSpec&) { return z_cell({0, 1}); };
    auto d1 = collect_distribution(sampler, 1, 500, SeedSpec{1, 0}, 1);
    CHECK(d1.entries.size() == 1);
    CHECK(d1.entries.begin()->second.count == 500);
    CHECK(d1.total == 500);
    CHECK(d1.undetermined == 0);

    // stochastic sampler: workers must not change anything
    RootCellSampler mixed = [&](const SeedSpec& s) {
        std::uint64_t u = rng::draw(rng::seed_state(s), 0);
        if (u % 3 == 0) return z_cell({0});
        if (u % 3 == 1) return z_cell({0, 1});
        auto c = z_cell({0});
        c.determined = false;
        return c;
    };
    auto a = collect_distribution(mixed, 1, 4000, SeedSpec{77, 0}, 1);
    auto b = collect_distribution(mixed, 1, 4000, SeedSpec{77, 0}, 8);
    CHECK(a.total == b.total);
    CHECK(a.undetermined == b.undetermined);
    CHECK(a.undetermined > 0);
    std::int64_t count_sum = a.undetermined;
    for (const auto& [h, e] : a.entries) count_sum += e.count;
    CHECK(count_sum == a.total);
    REQUIRE(a.entries.size() == b.entries.size());
    auto ita = a.entries.begin();
    auto itb = b.entries.begin();
    for (; ita != a.entries.end(); ++ita, ++itb) {
        CHECK(ita->first == itb->first);
        CHECK(ita->second.count == itb->second.count);
        CHECK(ita->second.first_index == itb->second.first_index);
    }
}

TEST_CASE("tv distance") {
    GroupSpec z1 = GroupSpec::free_abelian(1);
    RootCellSampler s1 = [&](const SeedSpec&) { return z_cell({0, 1}); };
    RootCellSampler s2 = [&](const SeedSpec&) { return z_cell({0}); };
    auto d1 = collect_distribution(s1, 1, 100, SeedSpec{1, 0});
    auto d1b = collect_distribution(s1, 1, 50, SeedSpec{2, 0});
    auto d2 = collect_distribution(s2, 1, 100, SeedSpec{1, 0});
    CHECK(tv_distance(d1, d1b) == doctest::Approx(0.0));
    CHECK(tv_distance(d1, d2) == doctest::Approx(1.0));

    auto wrong_radius = collect_distribution(s1, 2, 10, SeedSpec{1, 0});
    CHECK_THROWS_AS(tv_distance(d1, wrong_radius), ConfigError);

    // metric sanity on random empirical distributions
    GroupSpec spec = z1;
    auto rnd_sampler = [&](std::uint64_t salt) {
        return RootCellSampler([&, salt](const SeedSpec& s) {
            std::uint64_t u = rng::draw(rng::seed_state(s), salt);
            switch (u % 4) {
                case 0: return z_cell({0});
                case 1: return z_cell({0, 1});
                case 2: return z_cell({-1, 0, 1});
                default: return z_cell({0, 1, 2, 3});
            }
        });
    };
    auto da = collect_distribution(rnd_sampler(1), 2, 600, SeedSpec{9, 0});
    auto db = collect_distribution(rnd_sampler(2), 2, 600, SeedSpec{10, 0});
    auto dc = collect_distribution(rnd_sampler(3), 2, 600, SeedSpec{11, 0});
    double ab = tv_distance(da, db), ba = tv_distance(db, da);
    CHECK(ab == doctest::Approx(ba));
    CHECK(tv_distance(da, dc) <= ab + tv_distance(db, dc) + 1e-12);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
}

TEST_CASE("a tiling-FIRE distribution has self-distance zero") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    auto tile = ball(z2, Element::identity(z2), 2).elements;
    fire::CellSet cs(z2, tile, 0.3);
    fire::TilingSampler sampler(cs);
    RootCellSampler cells = [&](const SeedSpec& s) { return sampler(s); };
    auto d = collect_distribution(cells, 2, 2000, SeedSpec{1847, 0}, 2);
    CHECK(tv_distance(d, d) == doctest::Approx(0.0));
    CHECK(d.total == 2000);
    CHECK(d.entries.size() > 1);
}

TEST_CASE("mtp_check: diagonal indicator gives exactly 1 on both sides") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    auto win = std::make_shared<const CayleyWindow>(ball(z2, Element::identity(z2), 2));
    ProcessSampler proc = [&](const SeedSpec& s) {
        return sampling::sample_marked(win, sampling::IntensitySpec(0.3), s);
    };
    LocalTestFunction f = [](const Element& x, const Element& y,
                             const sampling::MarkedConfiguration&) {
        return x == y ? 1.0 : 0.0;
    };
    auto res = mtp_check(proc, f, 1, 500, SeedSpec{4, 0});
    CHECK(res.lhs.value == doctest::Approx(1.0));
    CHECK(res.rhs.value == doctest::Approx(1.0));
    CHECK(res.diff.value == doctest::Approx(0.0));
    CHECK(res.diff.se == doctest::Approx(0.0));
}

TEST_CASE("mtp_check: Bernoulli neighbour count = 5p on Z^2") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    auto win = std::make_shared<const CayleyWindow>(ball(z2, Element::identity(z2), 3));
    const double p = 0.2;
    ProcessSampler proc = [&](const SeedSpec& s) {
        return sampling::sample_marked(win, sampling::IntensitySpec(p), s);
    };
    LocalTestFunction f = [](const Element& x, const Element& y,
                             const sampling::MarkedConfiguration& cfg) {
        if (word_distance(x, y) > 1) return 0.0;
        std::int32_t idx = cfg.window->index_of(y);
        return cfg.contains_index(idx) ? 1.0 : 0.0;
    };
    auto res = mtp_check(proc, f, 1, 20000, SeedSpec{123, 0}, 4);
    CHECK(std::abs(res.diff.value) <= 4 * res.diff.se + 1e-12);
    CHECK(std::abs(res.lhs.value - 5 * p) <= 4 * res.lhs.se);
    CHECK(std::abs(res.rhs.value - 5 * p) <= 4 * res.rhs.se);

    CHECK_THROWS_AS(mtp_check(proc, f, 9, 10, SeedSpec{1, 0}), ConfigError);
}
