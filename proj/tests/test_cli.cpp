#include "doctest.h"

#include <fstream>

#include "irelab/graph.hpp"
#include "support/subprocess.hpp"

using namespace irelab;
using namespace irelab::testing;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/irelab_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("fire-verify: determinism and bounds payload") {
    std::string args = "fire-verify --group z:1 --cell-set explicit:0,1 --delta 0.25 "
                       "--samples 2000 --seed 11";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    json payload = a.json_out()["payload"];
    CHECK(payload["bounds"].size() == 3);
    CHECK(payload["all_pass"] == true);
    CHECK(payload["cell_set_size"] == 2);
    CHECK(payload["determinacy_window_size"] == 4);
    CHECK(payload["bounds"][0]["bound"].get<double>() == doctest::Approx(0.1875));

    RunResult w8 = run_cli(args + " --workers 8");
    CHECK(w8.payload_text() == a.payload_text());
}

TEST_CASE("fire-verify: oracle output and the near-1/2 bound value") {
    RunResult r = run_cli("fire-verify --group z:1 --cell-set explicit:0,1 --delta 0.49 "
                          "--samples 2000 --seed 3 --oracle");
    REQUIRE(r.exit_code == 0);
    json oracle = r.json_out()["payload"]["oracle"];
    // exact P[o in [Pi]_R] = 1 - (1 - 0.245)^2, comfortably above delta - delta^2
    CHECK(oracle["p_in_pi"].get<double>() == doctest::Approx(1.0 - 0.755 * 0.755));
    CHECK(oracle["p_in_pi"].get<double>() >= 0.49 - 0.49 * 0.49);
    CHECK(r.json_out()["payload"]["bounds"][0]["bound"].get<double>() ==
          doctest::Approx(0.49 - 0.49 * 0.49));
}

TEST_CASE("fire-verify: validation and feasibility exits") {
    CHECK(run_cli("fire-verify --group z:1 --cell-set explicit:0,1 --delta 0.6 "
                  "--samples 2000 --seed 1")
              .exit_code == 2);
    CHECK(run_cli("fire-verify --group q:1 --cell-set explicit:0 --delta 0.2 "
                  "--samples 2000 --seed 1")
              .exit_code == 2);
    // oracle infeasible: F_2 ball:2 has a 1457-element window
    CHECK(run_cli("fire-verify --group f:2 --cell-set ball:2 --delta 0.1 "
                  "--samples 1000 --seed 1 --oracle")
              .exit_code == 3);
}

TEST_CASE("bvt intensity-check and validation") {
    RunResult ok = run_cli("bvt intensity-check --group z:1 --p 0.5 --rmax 40 "
                           "--samples 3000 --seed 5");
    REQUIRE(ok.exit_code == 0);
    json payload = ok.json_out()["payload"];
    CHECK(payload["pass"] == true);
    CHECK(payload["undetermined_fraction"].get<double>() < 0.01);

    CHECK(run_cli("bvt intensity-check --group z:1 --p 1.0 --rmax 10 --samples 1000 --seed 1")
              .exit_code == 2);

    // a radius cap of 1 only ever certifies the all-neighbours-occupied
    // singleton, so the determined-only estimator is badly biased: exit 1
    RunResult biased = run_cli("bvt intensity-check --group z:2 --p 0.3 --rmax 1 "
                               "--samples 3000 --seed 5");
    CHECK(biased.exit_code == 1);
    CHECK(biased.json_out()["payload"]["warn_undetermined"] == true);
}

TEST_CASE("bvt histogram masses partition the samples") {
    RunResult r = run_cli("bvt histogram --group z:2 --p 0.3 --rmax 30 --samples 2000 --seed 9");
    REQUIRE(r.exit_code == 0);
    json payload = r.json_out()["payload"];
    double mass = payload["undetermined_fraction"].get<double>();
    for (const auto& row : payload["sizes"]) mass += row["probability"].get<double>();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

    RunResult csv =
        run_cli("bvt histogram --group z:2 --p 0.3 --rmax 30 --samples 500 --seed 9 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("size,count,probability", 0) == 0);
}

TEST_CASE("bvt nbhd output feeds bs-distance") {
    std::string args_a =
        "bvt nbhd --group z:2 --p 0.3 --rmax 30 --samples 3000 --seed 21 --radius 2";
    RunResult a = run_cli(args_a);
    REQUIRE(a.exit_code == 0);
    // worker count must not change a byte of the payload
    RunResult a8 = run_cli(args_a + " --workers 8");
    CHECK(a8.payload_text() == a.payload_text());

    RunResult b =
        run_cli("bvt nbhd --group z:2 --p 0.35 --rmax 30 --samples 3000 --seed 22 --radius 2");
    std::string fa = write_temp("dist_a.json", a.out);
    std::string fb = write_temp("dist_b.json", b.out);

    RunResult self = run_cli("bs-distance " + fa + " " + fa);
    REQUIRE(self.exit_code == 0);
    CHECK(self.json_out()["payload"]["tv_distance"].get<double>() == doctest::Approx(0.0));

    RunResult cross = run_cli("bs-distance " + fa + " " + fb);
    REQUIRE(cross.exit_code == 0);
    double tv = cross.json_out()["payload"]["tv_distance"].get<double>();
    CHECK(tv > 0.0);
    CHECK(tv <= 1.0);

    RunResult mismatched = run_cli(
        "bs-distance " + fa + " " +
        write_temp("dist_c.json",
                   run_cli("bvt nbhd --group z:2 --p 0.3 --rmax 30 --samples 500 --seed 23 "
                           "--radius 3")
                       .out));
    CHECK(mismatched.exit_code == 2);

    // disjoint supports give distance 1
    json d1{{"radius", 1}, {"total", 10}, {"undetermined", 0},
            {"entries", json::array({json{{"hash", std::string(32, 'a')},
                                          {"count", 10},
                                          {"example_graph", json::array()},
                                          {"example_vertices", 1}}})}};
    json d2 = d1;
    d2["entries"][0]["hash"] = std::string(32, 'b');
    std::string f1 = write_temp("disjoint1.json", d1.dump());
    std::string f2 = write_temp("disjoint2.json", d2.dump());
    RunResult disjoint = run_cli("bs-distance " + f1 + " " + f2);
    REQUIRE(disjoint.exit_code == 0);
    CHECK(disjoint.json_out()["payload"]["tv_distance"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("graph hyperfinite on C_12") {
    std::string path = write_temp("c12.txt", graphs::cycle_graph(12).to_text());
    RunResult r = run_cli("graph hyperfinite --input " + path + " --epsilon 0.25 --k 4");
    REQUIRE(r.exit_code == 0);
    json payload = r.json_out()["payload"];
    CHECK(payload["verdict"] == "yes");
    CHECK(payload["witness"].size() == 3);
    CHECK(payload["optimal_cut_size"] == 3);
    CHECK(payload["verified"] == true);

    RunResult greedy =
        run_cli("graph hyperfinite --input " + path + " --epsilon 0.25 --k 4 --mode greedy");
    REQUIRE(greedy.exit_code == 0);
    CHECK(greedy.json_out()["payload"]["heuristic"] == true);

    // malformed edge list: exit 2
    std::string bad = write_temp("bad.txt", "0 1\noops\n");
    CHECK(run_cli("graph hyperfinite --input " + bad + " --epsilon 0.5 --k 2").exit_code == 2);

    // exact infeasible: exit 3
    std::string big = write_temp("c80.txt", graphs::cycle_graph(80).to_text());
    CHECK(run_cli("graph hyperfinite --input " + big + " --epsilon 0.5 --k 4").exit_code == 3);
    CHECK(run_cli("graph hyperfinite --input " + big + " --epsilon 0.5 --k 4 --mode greedy")
              .exit_code == 0);
}

TEST_CASE("graph expansion and robustness") {
    std::string k6 = write_temp("k6.txt", graphs::complete_graph(6).to_text());
    RunResult exp = run_cli("graph expansion --input " + k6 + " --N 3");
    REQUIRE(exp.exit_code == 0);
    CHECK(exp.json_out()["payload"]["kappa"].get<double>() == doctest::Approx(3.0));

    RunResult csv = run_cli("graph expansion --input " + k6 + " --N 3 --format csv");
    CHECK(csv.out.rfind("size,kappa_n", 0) == 0);

    RunResult rob = run_cli("graph robustness --input " + k6 +
                            " --kappa 3 --N 3 --epsilon 0.1");
    REQUIRE(rob.exit_code == 0);
    json payload = rob.json_out()["payload"];
    CHECK(payload["threshold"].get<double>() == doctest::Approx(0.2));
    CHECK(payload["counterexamples"].empty());

    // epsilon at/above the threshold: exit 2
    CHECK(run_cli("graph robustness --input " + k6 + " --kappa 3 --N 3 --epsilon 0.2")
              .exit_code == 2);
}

TEST_CASE("config file provides defaults, flags win") {
    std::string cfg = write_temp("cfg.txt", "delta=0.2\nsamples=1500\n# a comment\nseed=77\n");
    RunResult r = run_cli("fire-verify --config " + cfg +
                          " --group z:1 --cell-set explicit:0,1");
    REQUIRE(r.exit_code == 0);
    json payload = r.json_out()["payload"];
    CHECK(payload["delta"].get<double>() == doctest::Approx(0.2));
    CHECK(payload["samples"] == 1500);
    CHECK(r.json_out()["envelope"]["seed"] == 77);

    RunResult flag_wins = run_cli("fire-verify --config " + cfg +
                                  " --group z:1 --cell-set explicit:0,1 --delta 0.3");
    CHECK(flag_wins.json_out()["payload"]["delta"].get<double>() == doctest::Approx(0.3));
}

TEST_CASE("budget environment variable reaches the enumeration caps") {
    std::string k6 = write_temp("k6b.txt", graphs::complete_graph(6).to_text());
    std::string cmd = std::string("IRELAB_BUDGET=5 ") + IRELAB_BIN + " graph expansion --input " +
                      k6 + " --N 3 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);
}
