#include <algorithm>
#include <cmath>
#include <limits>

#include "irelab/graph.hpp"
#include "irelab/rng.hpp"

namespace irelab::graphs {

double ExpansionProfile::kappa() const {
    double k = std::numeric_limits<double>::infinity();
    for (const auto& [s, e] : per_size) k = std::min(k, e.kappa);
    return k;
}

namespace {

// Connected-subset enumeration rooted at the minimum vertex, with frontier
// extension and path-local exclusion; every connected subset of size <= N
// whose minimum vertex is `root` appears exactly once.
struct Enumerator {
    const FiniteGraph& g;
    int upper_size;
    std::uint64_t budget;
    std::uint64_t count = 0;
    ExpansionProfile* profile;

    std::vector<int> cur;
    std::vector<char> seen;
    std::vector<int> ext;
    std::int64_t degsum = 0, eins = 0;

    Enumerator(const FiniteGraph& graph, int n, std::uint64_t b, ExpansionProfile* p)
        : g(graph), upper_size(n), budget(b), profile(p), seen(graph.n, 0) {}

    void record() {
        if (++count > budget)
            throw BudgetError("connected-subset budget exceeded while enumerating sets of size " +
                                  std::to_string(cur.size()),
                              count);
        const int s = static_cast<int>(cur.size());
        const double ratio =
            static_cast<double>(degsum - 2 * eins) / static_cast<double>(s);
        auto it = profile->per_size.find(s);
        if (it == profile->per_size.end()) {
            auto& e = profile->per_size[s];
            e.kappa = ratio;
            e.witness = cur;
            std::sort(e.witness.begin(), e.witness.end());
        } else if (ratio < it->second.kappa) {
            it->second.kappa = ratio;
            it->second.witness = cur;
            std::sort(it->second.witness.begin(), it->second.witness.end());
        }
    }

    void run(int root) {
        cur = {root};
        seen.assign(g.n, 0);
        seen[root] = 1;
        ext.clear();
        for (int u : g.adj[root])
            if (u > root) {
                ext.push_back(u);
                seen[u] = 1;
            }
        degsum = g.degree(root);
        eins = 0;
        record();
        if (upper_size > 1) rec(0);
    }

    void rec(std::size_t ext_from) {
        const std::size_t ext_end = ext.size();
        for (std::size_t i = ext_from; i < ext_end; ++i) {
            int u = ext[i];
            std::size_t save_ext = ext.size();
            std::int64_t to_cur = 0;
            for (int w : g.adj[u]) {
                if (w > cur.front() && !seen[w]) {
                    seen[w] = 1;
                    ext.push_back(w);
                }
                if (std::find(cur.begin(), cur.end(), w) != cur.end()) ++to_cur;
            }
            cur.push_back(u);
            degsum += g.degree(u);
            eins += to_cur;
            record();
            if (static_cast<int>(cur.size()) < upper_size) rec(i + 1);
            cur.pop_back();
            degsum -= g.degree(u);
            eins -= to_cur;
            for (std::size_t j = save_ext; j < ext.size(); ++j) seen[ext[j]] = 0;
            ext.resize(save_ext);
        }
    }
};

}  // namespace

ExpansionProfile expansion_profile(const FiniteGraph& g, int upper_size, std::uint64_t budget) {
    if (upper_size < 1) throw ConfigError("expansion profile needs N >= 1");
    ExpansionProfile profile;
    profile.upper_size = upper_size;
    Enumerator e(g, upper_size, budget, &profile);
    for (int root = 0; root < g.n; ++root) {
        e.run(root);
    }
    for (const auto& [s, entry] : profile.per_size) {
        double achieved = static_cast<double>(edge_boundary(g, entry.witness)) /
                          static_cast<double>(s);
        if (static_cast<int>(entry.witness.size()) != s || achieved != entry.kappa)
            throw std::logic_error("expansion witness does not achieve its ratio");
    }
    return profile;
}

RobustnessReport robustness_check(const FiniteGraph& g, double kappa, int upper_size,
                                  double epsilon, std::uint64_t subset_budget,
                                  std::uint64_t profile_budget, std::uint64_t sample_seed,
                                  std::int64_t sample_count) {
    if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
    ExpansionProfile prof = expansion_profile(g, upper_size, profile_budget);
    RobustnessReport report;
    report.kappa_claimed = kappa;
    report.kappa_actual = prof.kappa();
    report.upper_size = upper_size;
    report.epsilon = epsilon;
    if (report.kappa_actual < kappa - 1e-12)
        throw ConfigError("graph is not a (" + std::to_string(kappa) + "," +
                          std::to_string(upper_size) +
                          ")-expander: actual kappa = " + std::to_string(report.kappa_actual));
    const int d = g.max_degree();
    report.threshold = kappa / (2.0 * (1.0 + d) + kappa);
    if (!(epsilon > 0.0 && epsilon < report.threshold))
        throw ConfigError("epsilon must satisfy 0 < epsilon < kappa/(2(1+d)+kappa) = " +
                          std::to_string(report.threshold));

    const int n = g.n;
    const int s_min = static_cast<int>(
        std::ceil((1.0 - epsilon) * static_cast<double>(n) - 1e-9));

    // count the A's; fall back to seeded sampling if enumeration is too big
    long double total = 0.0L;
    for (int s = std::max(s_min, 0); s <= n; ++s) {
        long double c = 1.0L;
        for (int i = 0; i < s; ++i) c = c * static_cast<long double>(n - i) / (i + 1);
        total += c;
    }
    report.exhaustive = total <= static_cast<long double>(subset_budget);

    auto check_one = [&](const std::vector<int>& a) {
        HyperfinitenessCertificate cert = hyperfinite_exact(induced_subgraph(g, a), epsilon,
                                                            upper_size);
        ++report.checked;
        if (cert.yes) report.counterexamples.push_back(a);
    };

    if (report.exhaustive) {
        for (int s = std::max(s_min, 1); s <= n; ++s) {
            std::vector<int> a(s);
            for (int i = 0; i < s; ++i) a[i] = i;
            while (true) {
                check_one(a);
                int i = s - 1;
                while (i >= 0 && a[i] == n - s + i) --i;
                if (i < 0) break;
                ++a[i];
                for (int j = i + 1; j < s; ++j) a[j] = a[j - 1] + 1;
            }
        }
    } else {
        std::uint64_t state = rng::mix64(sample_seed ^ 0x726f627573746e73ULL);
        auto next = [&]() { return state = rng::mix64(state); };
        for (std::int64_t t = 0; t < sample_count; ++t) {
            int s = s_min + static_cast<int>(next() % static_cast<std::uint64_t>(n - s_min + 1));
            std::vector<int> pool(n);
            for (int i = 0; i < n; ++i) pool[i] = i;
            for (int i = 0; i < s; ++i)
                std::swap(pool[i], pool[i + next() % static_cast<std::uint64_t>(n - i)]);
            std::vector<int> a(pool.begin(), pool.begin() + s);
            std::sort(a.begin(), a.end());
            check_one(a);
        }
    }
    return report;
}

}  // namespace irelab::graphs
