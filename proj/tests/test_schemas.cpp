#include "doctest.h"

#include <fstream>

#include "irelab/graph.hpp"
#include "support/schema_check.hpp"
#include "support/subprocess.hpp"

using namespace irelab;
using namespace irelab::testing;
using nlohmann::json;

namespace {

void check_payload(const std::string& command, const std::string& schema_name) {
    RunResult r = run_cli(command);
    REQUIRE(r.exit_code == 0);
    json out = r.json_out();
    std::string error;
    bool env_ok = validate_schema(out["envelope"], load_schema("envelope"), &error);
    CHECK_MESSAGE(env_ok, "envelope: " << error);
    bool payload_ok = validate_schema(out["payload"], load_schema(schema_name), &error);
    CHECK_MESSAGE(payload_ok, schema_name << ": " << error);
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/irelab_schema_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("every CLI payload validates against its published schema") {
    std::string c12 = write_temp("c12.txt", graphs::cycle_graph(12).to_text());
    std::string k6 = write_temp("k6.txt", graphs::complete_graph(6).to_text());
    RunResult nbhd = run_cli("bvt nbhd --group z:2 --p 0.3 --rmax 30 --samples 400 --seed 2 "
                             "--radius 2");
    REQUIRE(nbhd.exit_code == 0);
    std::string dist = write_temp("dist.json", nbhd.out);

    check_payload("fire-verify --group z:1 --cell-set explicit:0,1 --delta 0.25 "
                  "--samples 1000 --seed 1 --oracle",
                  "fire_verify");
    check_payload("bvt sample --group z:2 --p 0.4 --rmax 20 --seed 2", "bvt_sample");
    check_payload("bvt intensity-check --group z:1 --p 0.5 --rmax 30 --samples 1000 --seed 2",
                  "bvt_intensity_check");
    check_payload("bvt histogram --group z:2 --p 0.3 --rmax 25 --samples 500 --seed 2",
                  "bvt_histogram");
    check_payload("bvt nbhd --group z:2 --p 0.3 --rmax 30 --samples 400 --seed 2 --radius 2",
                  "neighborhood_distribution");
    check_payload("graph hyperfinite --input " + c12 + " --epsilon 0.25 --k 4",
                  "graph_hyperfinite");
    check_payload("graph expansion --input " + k6 + " --N 3", "graph_expansion");
    check_payload("graph robustness --input " + k6 + " --kappa 3 --N 3 --epsilon 0.1",
                  "graph_robustness");
    check_payload("bs-distance " + dist + " " + dist, "bs_distance");
}

TEST_CASE("the validator itself rejects broken payloads") {
    json schema = load_schema("bs_distance");
    json good{{"radius", 2},        {"tv_distance", 0.5},   {"total_a", 10},
              {"total_b", 10},      {"undetermined_a", 0},  {"undetermined_b", 0}};
    std::string error;
    CHECK(validate_schema(good, schema, &error));
    json missing = good;
    missing.erase("tv_distance");
    CHECK(!validate_schema(missing, schema, &error));
    json wrong_type = good;
    wrong_type["radius"] = "two";
    CHECK(!validate_schema(wrong_type, schema, &error));
}
