#pragma once

#include <string>

#include "json.hpp"

#include "irelab/estimate.hpp"
#include "irelab/graph.hpp"
#include "irelab/localstats.hpp"
#include "irelab/voronoi.hpp"

namespace irelab::io {

using nlohmann::json;

json to_json(const Estimate& e);
json to_json(const fire::BoundReport& r);
json to_json(const local::NeighborhoodDistribution& d);
local::NeighborhoodDistribution distribution_from_json(const json& j);
json to_json(const graphs::HyperfinitenessCertificate& c);
json to_json(const graphs::ExpansionProfile& p);
json to_json(const graphs::RobustnessReport& r);
json to_json(const bvt::VoronoiRootCell& c);

}  // namespace irelab::io
