#include "irelab/json_io.hpp"

namespace irelab::io {

json to_json(const Estimate& e) {
    return json{{"value", e.value},
                {"se", e.se},
                {"ci95", {e.ci95_lo(), e.ci95_hi()}},
                {"n", e.n},
                {"seed", e.seed}};
}

json to_json(const fire::BoundReport& r) {
    json j{{"id", fire::bound_name(r.id)},
           {"bound", r.bound},
           {"estimate", to_json(r.estimate)},
           {"lcl99", r.lcl99()},
           {"ucl99", r.ucl99()},
           {"passes", r.passes},
           {"status", r.insufficient_conditioning ? "insufficient_conditioning_mass" : "ok"}};
    return j;
}

json to_json(const local::NeighborhoodDistribution& d) {
    json entries = json::array();
    for (const auto& [h, e] : d.entries) {
        json edges = json::array();
        for (auto [u, v] : e.example.edges) edges.push_back(json::array({u, v}));
        entries.push_back(json{{"hash", h.hex()},
                               {"count", e.count},
                               {"example_graph", edges},
                               {"example_vertices", e.example.n}});
    }
    return json{{"radius", d.radius},
                {"total", d.total},
                {"undetermined", d.undetermined},
                {"entries", entries},
                {"provenance",
                 {{"group", d.group}, {"process", d.process}, {"params", d.params},
                  {"seed", d.seed}}}};
}

local::NeighborhoodDistribution distribution_from_json(const json& j) {
    local::NeighborhoodDistribution d;
    d.radius = j.at("radius").get<int>();
    d.total = j.at("total").get<std::int64_t>();
    d.undetermined = j.at("undetermined").get<std::int64_t>();
    for (const auto& ej : j.at("entries")) {
        std::string hex = ej.at("hash").get<std::string>();
        if (hex.size() != 32) throw ConfigError("bad digest hex '" + hex + "'");
        local::Digest128 h;
        h.hi = std::stoull(hex.substr(0, 16), nullptr, 16);
        h.lo = std::stoull(hex.substr(16), nullptr, 16);
        auto& e = d.entries[h];
        e.count = ej.at("count").get<std::int64_t>();
        e.example.n = ej.value("example_vertices", 0);
        for (const auto& edge : ej.at("example_graph"))
            e.example.edges.emplace_back(edge.at(0).get<int>(), edge.at(1).get<int>());
    }
    if (j.contains("provenance")) {
        const auto& p = j.at("provenance");
        d.group = p.value("group", "");
        d.process = p.value("process", "");
        d.params = p.value("params", "");
        d.seed = p.value("seed", std::uint64_t{0});
    }
    return d;
}

json to_json(const graphs::HyperfinitenessCertificate& c) {
    json witness = json::array();
    for (auto [u, v] : c.witness) witness.push_back(json::array({u, v}));
    json j{{"epsilon", c.epsilon},
           {"k", c.k},
           {"verdict", c.yes ? "yes" : "no"},
           {"heuristic", c.heuristic},
           {"witness", witness}};
    if (c.optimal_cut_size) j["optimal_cut_size"] = *c.optimal_cut_size;
    return j;
}

json to_json(const graphs::ExpansionProfile& p) {
    json sizes = json::array();
    for (const auto& [s, e] : p.per_size)
        sizes.push_back(json{{"size", s}, {"kappa_n", e.kappa}, {"witness", e.witness}});
    return json{{"N", p.upper_size}, {"kappa", p.kappa()}, {"per_size", sizes}};
}

json to_json(const graphs::RobustnessReport& r) {
    json cex = json::array();
    for (const auto& a : r.counterexamples) cex.push_back(a);
    return json{{"kappa_claimed", r.kappa_claimed},
                {"kappa_actual", r.kappa_actual},
                {"N", r.upper_size},
                {"epsilon", r.epsilon},
                {"threshold", r.threshold},
                {"exhaustive", r.exhaustive},
                {"checked", r.checked},
                {"counterexamples", cex}};
}

json to_json(const bvt::VoronoiRootCell& c) {
    json members = json::array();
    for (const auto& m : c.cell.members) members.push_back(m.str());
    json j{{"determined", c.determined},
           {"sampled_radius", c.sampled_radius},
           {"in_pi_class", c.cell.in_pi_class},
           {"members", members},
           {"size", c.cell.members.size()}};
    j["center"] = c.center ? json(c.center->str()) : json(nullptr);
    j["nearest_distance"] = c.nearest_distance;
    return j;
}

}  // namespace irelab::io
