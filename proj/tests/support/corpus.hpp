#pragma once

#include <vector>

#include "irelab/graph.hpp"

namespace irelab::testing {

/// All connected graphs on <= max_n vertices (max_n <= 6), one per
/// isomorphism class, generated by canonical filtering of labelled graphs.
std::vector<graphs::FiniteGraph> connected_graph_corpus(int max_n);

/// The bundled solver corpus: connected graphs on <= 6 vertices plus
/// C_12, K_5 and Q_3 (every member has at most 16 edges).
std::vector<graphs::FiniteGraph> solver_corpus();

}  // namespace irelab::testing
