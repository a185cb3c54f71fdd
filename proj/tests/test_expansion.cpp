#include "doctest.h"

#include <cmath>

#include "irelab/graph.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace irelab;
using namespace irelab::graphs;

TEST_CASE("edge boundary") {
    FiniteGraph k6 = complete_graph(6);
    CHECK(edge_boundary(k6, {0}) == 5);
    CHECK(edge_boundary(k6, {0, 1}) == 8);
    CHECK(edge_boundary(k6, {0, 1, 2}) == 9);
    CHECK(edge_boundary(path_graph(10), {0, 1, 2, 3, 4}) == 1);
}

TEST_CASE("expansion profiles on named graphs") {
    ExpansionProfile k6 = expansion_profile(complete_graph(6), 3);
    CHECK(k6.per_size.at(1).kappa == doctest::Approx(5.0));
    CHECK(k6.per_size.at(2).kappa == doctest::Approx(4.0));
    CHECK(k6.per_size.at(3).kappa == doctest::Approx(3.0));
    CHECK(k6.kappa() == doctest::Approx(3.0));

    ExpansionProfile k2 = expansion_profile(FiniteGraph::from_edges(2, {{0, 1}}), 1);
    CHECK(k2.per_size.at(1).kappa == doctest::Approx(1.0));

    ExpansionProfile p10 = expansion_profile(path_graph(10), 5);
    CHECK(p10.per_size.at(5).kappa == doctest::Approx(0.2));

    ExpansionProfile q3 = expansion_profile(hypercube_graph(3), 3);
    CHECK(q3.per_size.at(3).kappa == doctest::Approx(5.0 / 3.0));
    CHECK(q3.kappa() == doctest::Approx(5.0 / 3.0));

    // witnesses achieve their ratios
    for (const auto& [s, e] : q3.per_size) {
        CHECK(static_cast<int>(e.witness.size()) == s);
        CHECK(static_cast<double>(edge_boundary(hypercube_graph(3), e.witness)) / s ==
              doctest::Approx(e.kappa));
    }
}

TEST_CASE("enumeration counts and budget") {
    // P_6: n-s+1 connected subsets of each size; C_6: 6 arcs per size < 6
    FiniteGraph p6 = path_graph(6);
    std::int64_t count_p6 = testing::brute_connected_subset_count(p6, 4);
    CHECK(count_p6 == 6 + 5 + 4 + 3);
    CHECK_NOTHROW(expansion_profile(p6, 4, count_p6));
    CHECK_THROWS_AS(expansion_profile(p6, 4, count_p6 - 1), BudgetError);

    FiniteGraph c6 = cycle_graph(6);
    CHECK(testing::brute_connected_subset_count(c6, 3) == 18);
    CHECK_NOTHROW(expansion_profile(c6, 3, 18));
    CHECK_THROWS_AS(expansion_profile(c6, 3, 17), BudgetError);
}

TEST_CASE("connected minimum equals unrestricted minimum") {
    for (const auto& g : testing::connected_graph_corpus(5)) {
        int upper = std::max(1, std::min(4, g.n - 1));
        ExpansionProfile prof = expansion_profile(g, upper);
        CHECK(prof.kappa() == doctest::Approx(testing::brute_expansion_min(g, upper)));
    }
    // and on a few named mid-size graphs
    for (const FiniteGraph& g :
         {hypercube_graph(3), cycle_graph(9), random_regular_graph(10, 3, 5)}) {
        ExpansionProfile prof = expansion_profile(g, 4);
        CHECK(prof.kappa() == doctest::Approx(testing::brute_expansion_min(g, 4)));
    }
}

TEST_CASE("robustness on K_6") {
    FiniteGraph k6 = complete_graph(6);
    RobustnessReport rep = robustness_check(k6, 3.0, 3, 0.1);
    CHECK(rep.threshold == doctest::Approx(0.2));  // 3 / (2*6 + 3)
    CHECK(rep.kappa_actual == doctest::Approx(3.0));
    CHECK(rep.exhaustive);
    CHECK(rep.checked == 1);  // only A = V has |A| >= 5.4
    CHECK(rep.counterexamples.empty());
}

TEST_CASE("robustness preconditions") {
    FiniteGraph k6 = complete_graph(6);
    CHECK_THROWS_AS(robustness_check(k6, 3.0, 3, 0.2), ConfigError);   // at the threshold
    CHECK_THROWS_AS(robustness_check(k6, 3.0, 3, 0.25), ConfigError);  // above it
    CHECK_THROWS_AS(robustness_check(k6, 3.5, 3, 0.1), ConfigError);   // not that much expansion
    CHECK_THROWS_AS(robustness_check(k6, -1.0, 3, 0.1), ConfigError);
}

TEST_CASE("robustness on Q_3 with a wider enumeration") {
    FiniteGraph q3 = hypercube_graph(3);
    double kappa = 5.0 / 3.0;
    double threshold = kappa / (2.0 * 4.0 + kappa);
    RobustnessReport rep = robustness_check(q3, kappa, 3, 0.15);
    CHECK(rep.threshold == doctest::Approx(threshold));
    CHECK(rep.exhaustive);
    CHECK(rep.checked == 9);  // |A| >= 6.8: the 8 seven-subsets and V itself
    CHECK(rep.counterexamples.empty());
}

TEST_CASE("robustness on Q_4") {
    FiniteGraph q4 = hypercube_graph(4);
    ExpansionProfile prof = expansion_profile(q4, 3);
    double kappa = prof.kappa();
    CHECK(kappa == doctest::Approx(8.0 / 3.0));  // triangle-free, 4-regular
    RobustnessReport rep = robustness_check(q4, kappa, 3, 0.1);
    CHECK(rep.exhaustive);
    CHECK(rep.checked == 17);  // |A| >= 14.4: sizes 15 and 16
    CHECK(rep.counterexamples.empty());
}

TEST_CASE("robustness sampling mode on a larger instance") {
    FiniteGraph r = random_regular_graph(14, 3, 7);
    ExpansionProfile prof = expansion_profile(r, 3);
    double kappa = prof.kappa();
    double threshold = kappa / (2.0 * 4.0 + kappa);
    double eps = threshold * 0.8;
    // tiny budget forces the sampled path
    RobustnessReport rep =
        robustness_check(r, kappa, 3, eps, /*subset_budget=*/4,
                         Budget{}.connected_subsets, /*seed=*/9, /*sample_count=*/40);
    CHECK(!rep.exhaustive);
    CHECK(rep.checked == 40);
    CHECK(rep.counterexamples.empty());
}
