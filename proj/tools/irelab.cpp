// irelab: samplers, verifiers and certifiers for invariant random
// equivalence relations on Z^d and F_k, with reproducible seeded runs.
//
// JSON results go to stdout ({envelope, payload}); a short human summary
// goes to stderr.  Exit codes: 0 success, 1 verification failure,
// 2 invalid input, 3 budget/feasibility.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "irelab/coinduce.hpp"
#include "irelab/fire.hpp"
#include "irelab/json_io.hpp"
#include "irelab/localstats.hpp"
#include "irelab/voronoi.hpp"

using nlohmann::json;
using namespace irelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitBudget = 3;

struct FlatConfig {
    std::map<std::string, std::string> kv;

    static FlatConfig load(const std::string& path) {
        FlatConfig cfg;
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  " is not key=value");
            auto trim = [](std::string s) {
                auto a = s.find_first_not_of(" \t\r");
                auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            cfg.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return cfg;
    }
};

// fills flag values from the config file for options absent on the command
// line; command-line flags always win
class ConfigMerger {
public:
    void track(CLI::Option* opt, const std::string& key,
               std::function<void(const std::string&)> apply) {
        entries_.push_back({opt, key, std::move(apply)});
    }
    void track_string(CLI::Option* opt, const std::string& key, std::string* target) {
        track(opt, key, [target](const std::string& v) { *target = v; });
    }
    void track_double(CLI::Option* opt, const std::string& key, double* target) {
        track(opt, key, [target, key](const std::string& v) {
            try {
                *target = std::stod(v);
            } catch (...) {
                throw ConfigError("bad config value for " + key + ": '" + v + "'");
            }
        });
    }
    template <class Int>
    void track_int(CLI::Option* opt, const std::string& key, Int* target) {
        track(opt, key, [target, key](const std::string& v) {
            try {
                *target = static_cast<Int>(std::stoll(v));
            } catch (...) {
                throw ConfigError("bad config value for " + key + ": '" + v + "'");
            }
        });
    }
    void apply(const FlatConfig& cfg) {
        for (auto& e : entries_) {
            auto it = cfg.kv.find(e.key);
            if (it == cfg.kv.end()) continue;
            if (e.opt && e.opt->count() > 0) continue;  // flags win
            e.apply(it->second);
        }
    }

private:
    struct Entry {
        CLI::Option* opt;
        std::string key;
        std::function<void(const std::string&)> apply;
    };
    std::vector<Entry> entries_;
};

json make_envelope(const std::string& command, std::uint64_t seed, json config) {
    return json{{"tool", "irelab"},
                {"version", kToolVersion},
                {"command", command},
                {"seed", seed},
                {"config", std::move(config)}};
}

void emit(const json& envelope, const json& payload) {
    json out{{"envelope", envelope}, {"payload", payload}};
    std::cout << out.dump(2) << "\n";
}

std::vector<groups::Element> parse_cell_set(const groups::GroupSpec& spec,
                                            const std::string& text) {
    if (text.rfind("ball:", 0) == 0) {
        int radius = 0;
        try {
            radius = std::stoi(text.substr(5));
        } catch (...) {
            throw ConfigError("bad cell-set radius in '" + text + "'");
        }
        return groups::ball(spec, groups::Element::identity(spec), radius).elements;
    }
    if (text.rfind("explicit:", 0) == 0) {
        std::vector<groups::Element> tile;
        std::string body = text.substr(9);
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            std::string token = comma == std::string::npos ? body.substr(start)
                                                           : body.substr(start, comma - start);
            if (!token.empty()) tile.push_back(groups::Element::parse(spec, token));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (tile.empty()) throw ConfigError("empty explicit cell set");
        return tile;
    }
    throw ConfigError("cell-set must be 'ball:<r>' or 'explicit:<e1,e2,...>'");
}

std::string element_list_string(const std::vector<groups::Element>& es) {
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) s += ",";
        s += es[i].str();
    }
    return s;
}

// ---------------------------------------------------------------------------
// fire-verify
// ---------------------------------------------------------------------------

struct FireVerifyArgs {
    std::string group = "z:1";
    std::string cell_set = "explicit:0,1";
    double delta = 0.1;
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
    bool oracle = false;
};

int run_fire_verify(const FireVerifyArgs& a) {
    groups::GroupSpec spec = groups::GroupSpec::parse(a.group);
    if (!(a.delta > 0.0 && a.delta < 0.5))
        throw ConfigError("delta must lie in (0, 1/2): the bounds |A|(1-2delta) and "
                          "4 delta^2 (1-2delta)^2 are vacuous at delta >= 1/2");
    fire::CellSet cs(spec, parse_cell_set(spec, a.cell_set), a.delta);
    auto window = fire::determinacy_window(cs);

    auto reports = fire::verify_tiling_bounds(cs, a.samples, SeedSpec{a.seed, 0}, a.workers);

    json payload{{"group", spec.str()},
                 {"cell_set", element_list_string(cs.tile)},
                 {"cell_set_size", cs.tile.size()},
                 {"delta", cs.delta},
                 {"intensity", cs.intensity()},
                 {"determinacy_window_size", window.size()},
                 {"samples", a.samples}};
    json bounds = json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        bounds.push_back(io::to_json(r));
        all_pass = all_pass && r.passes;
    }
    payload["bounds"] = bounds;
    payload["all_pass"] = all_pass;

    if (a.oracle) {
        fire::ExactLaw law = fire::exact_distribution(cs, Budget::from_env().oracle_work);
        double p_exact = law.p_in_pi();
        const auto& est_i = reports[0].estimate;
        json oracle{{"p_in_pi", p_exact},
                    {"mean_size_indicator", law.mean_size_indicator()},
                    {"conditional_mean_size", law.conditional_mean_size()}};
        if (est_i.se > 0)
            oracle["p_in_pi_deviation_sigma"] = (est_i.value - p_exact) / est_i.se;
        json law_json = json::array();
        for (const auto& [key, prob] : law.probs)
            law_json.push_back(
                json{{"in_pi_class", key.first}, {"size", key.second}, {"probability", prob}});
        oracle["law"] = law_json;
        payload["oracle"] = oracle;
    }

    json config{{"group", a.group},     {"cell-set", a.cell_set}, {"delta", a.delta},
                {"samples", a.samples}, {"seed", a.seed},         {"workers", a.workers},
                {"oracle", a.oracle}};
    emit(make_envelope("fire-verify", a.seed, config), payload);

    for (const auto& r : reports)
        std::cerr << "bound (" << fire::bound_name(r.id) << "): estimate " << r.estimate.value
                  << " vs bound " << r.bound
                  << (r.insufficient_conditioning ? " [insufficient conditioning mass]"
                                                  : (r.passes ? " [pass]" : " [FAIL]"))
                  << "\n";
    return all_pass ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// bvt
// ---------------------------------------------------------------------------

struct BvtArgs {
    std::string group = "z:2";
    double p = 0.2;
    int rmax = 50;
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    int workers = 1;
    int radius = 2;
    std::string format = "json";
};

json bvt_config(const BvtArgs& a, bool with_radius) {
    json c{{"group", a.group},     {"p", a.p},       {"rmax", a.rmax},
           {"samples", a.samples}, {"seed", a.seed}, {"workers", a.workers}};
    if (with_radius) c["radius"] = a.radius;
    return c;
}

int run_bvt_sample(const BvtArgs& a) {
    bvt::BvtParams params(groups::GroupSpec::parse(a.group), a.p, a.rmax);
    bvt::BvtSampler sampler(params, Budget::from_env().ball_elements);
    auto cell = sampler(SeedSpec{a.seed, 0});
    emit(make_envelope("bvt sample", a.seed, bvt_config(a, false)), io::to_json(cell));
    std::cerr << "cell of the root: " << cell.cell.members.size() << " members, "
              << (cell.determined ? "determined" : "NOT determined (radius cap)") << "\n";
    return kExitOk;
}

int run_bvt_intensity(const BvtArgs& a) {
    bvt::BvtParams params(groups::GroupSpec::parse(a.group), a.p, a.rmax);
    auto check = bvt::bvt_intensity_identity(params, a.samples, SeedSpec{a.seed, 0}, a.workers);
    double deviation = std::abs(check.estimate.value - check.p);
    bool pass = check.estimate.se > 0 && deviation <= 4.0 * check.estimate.se;
    json payload{{"p", check.p},
                 {"estimate", io::to_json(check.estimate)},
                 {"abs_deviation", deviation},
                 {"deviation_sigma", check.estimate.se > 0 ? deviation / check.estimate.se : 0.0},
                 {"undetermined_fraction", check.undetermined_fraction},
                 {"warn_undetermined", check.warn_undetermined},
                 {"samples", check.n},
                 {"pass", pass}};
    emit(make_envelope("bvt intensity-check", a.seed, bvt_config(a, false)), payload);
    std::cerr << "E[1/|cell|] = " << check.estimate.value << " vs p = " << check.p << " ("
              << (pass ? "pass" : "FAIL") << ", undetermined "
              << check.undetermined_fraction * 100 << "%)\n";
    return pass ? kExitOk : kExitVerificationFailure;
}

int run_bvt_histogram(const BvtArgs& a) {
    bvt::BvtParams params(groups::GroupSpec::parse(a.group), a.p, a.rmax);
    auto hist = bvt::bvt_cell_size_histogram(params, a.samples, SeedSpec{a.seed, 0}, a.workers);
    if (a.format == "csv") {
        std::cout << "size,count,probability\n";
        for (const auto& [size, count] : hist.counts)
            std::cout << size << "," << count << "," << hist.mass(size) << "\n";
        std::cout << "undetermined," << hist.undetermined << "," << hist.undetermined_fraction()
                  << "\n";
        return kExitOk;
    }
    json sizes = json::array();
    for (const auto& [size, count] : hist.counts)
        sizes.push_back(json{{"size", size}, {"count", count}, {"probability", hist.mass(size)}});
    json payload{{"p", a.p},
                 {"rmax", a.rmax},
                 {"samples", hist.total},
                 {"sizes", sizes},
                 {"undetermined_count", hist.undetermined},
                 {"undetermined_fraction", hist.undetermined_fraction()}};
    emit(make_envelope("bvt histogram", a.seed, bvt_config(a, false)), payload);
    std::cerr << "histogram over " << hist.total << " samples, " << hist.counts.size()
              << " distinct sizes\n";
    return kExitOk;
}

int run_bvt_nbhd(const BvtArgs& a) {
    bvt::BvtParams params(groups::GroupSpec::parse(a.group), a.p, a.rmax);
    bvt::BvtSampler sampler(params, Budget::from_env().ball_elements);
    local::RootCellSampler cell_sampler = [&](const SeedSpec& s) { return sampler(s).cell; };
    auto dist = local::collect_distribution(cell_sampler, a.radius, a.samples,
                                            SeedSpec{a.seed, 0}, a.workers);
    dist.group = params.group.str();
    dist.process = "bvt";
    std::ostringstream ps;
    ps << "p=" << a.p << ";rmax=" << a.rmax;
    dist.params = ps.str();
    dist.seed = a.seed;
    emit(make_envelope("bvt nbhd", a.seed, bvt_config(a, true)), io::to_json(dist));
    std::cerr << "neighborhood distribution: " << dist.entries.size() << " classes over "
              << dist.total << " samples (undetermined " << dist.undetermined << ")\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

int run_graph_hyperfinite(const std::string& input, double epsilon, int k,
                          const std::string& mode) {
    graphs::FiniteGraph g = graphs::FiniteGraph::load(input);
    graphs::HyperfinitenessCertificate cert;
    if (mode == "exact") cert = graphs::hyperfinite_exact(g, epsilon, k);
    else if (mode == "greedy") cert = graphs::hyperfinite_greedy(g, epsilon, k);
    else throw ConfigError("mode must be exact or greedy");
    json payload = io::to_json(cert);
    payload["n"] = g.n;
    payload["m"] = g.edge_count();
    payload["verified"] = graphs::check_certificate(g, cert);
    json config{{"input", input}, {"epsilon", epsilon}, {"k", k}, {"mode", mode}};
    emit(make_envelope("graph hyperfinite", 0, config), payload);
    std::cerr << "(" << epsilon << "," << k << ")-hyperfinite: " << (cert.yes ? "yes" : "no")
              << (cert.heuristic && !cert.yes ? " (heuristic, not a refutation)" : "") << "\n";
    return kExitOk;
}

int run_graph_expansion(const std::string& input, int upper_size, const std::string& format) {
    graphs::FiniteGraph g = graphs::FiniteGraph::load(input);
    auto profile = graphs::expansion_profile(g, upper_size, Budget::from_env().connected_subsets);
    if (format == "csv") {
        std::cout << "size,kappa_n\n";
        for (const auto& [s, e] : profile.per_size) std::cout << s << "," << e.kappa << "\n";
        return kExitOk;
    }
    json payload = io::to_json(profile);
    payload["n"] = g.n;
    payload["m"] = g.edge_count();
    json config{{"input", input}, {"N", upper_size}};
    emit(make_envelope("graph expansion", 0, config), payload);
    std::cerr << "kappa = " << profile.kappa() << " over sets of size <= " << upper_size << "\n";
    return kExitOk;
}

int run_graph_robustness(const std::string& input, double kappa, int upper_size, double epsilon,
                         std::uint64_t seed) {
    graphs::FiniteGraph g = graphs::FiniteGraph::load(input);
    Budget budget = Budget::from_env();
    auto report = graphs::robustness_check(g, kappa, upper_size, epsilon,
                                           budget.subset_enumeration, budget.connected_subsets,
                                           seed);
    json payload = io::to_json(report);
    json config{{"input", input},
                {"kappa", kappa},
                {"N", upper_size},
                {"epsilon", epsilon},
                {"seed", seed}};
    emit(make_envelope("graph robustness", seed, config), payload);
    std::cerr << "checked " << report.checked << " induced subgraphs, "
              << report.counterexamples.size() << " counterexamples\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bs-distance
// ---------------------------------------------------------------------------

int run_bs_distance(const std::string& file_a, const std::string& file_b) {
    auto load = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open distribution file '" + path + "'");
        json j = json::parse(in);
        if (j.contains("payload")) j = j["payload"];  // accept raw CLI output
        return io::distribution_from_json(j);
    };
    auto a = load(file_a);
    auto b = load(file_b);
    double tv = local::tv_distance(a, b);
    json payload{{"radius", a.radius},
                 {"tv_distance", tv},
                 {"total_a", a.total},
                 {"total_b", b.total},
                 {"undetermined_a", a.undetermined},
                 {"undetermined_b", b.undetermined}};
    json config{{"a", file_a}, {"b", file_b}};
    emit(make_envelope("bs-distance", 0, config), payload);
    std::cerr << "TV distance at radius " << a.radius << ": " << tv << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant random equivalence relation laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    ConfigMerger merge;

    // fire-verify
    FireVerifyArgs fire_args;
    CLI::App* fire_cmd = app.add_subcommand("fire-verify", "verify the tiling-FIRE bounds");
    merge.track_string(fire_cmd->add_option("--group", fire_args.group, "z:<d> or f:<k>"),
                       "group", &fire_args.group);
    merge.track_string(
        fire_cmd->add_option("--cell-set", fire_args.cell_set, "ball:<r> or explicit:<e1,...>"),
        "cell-set", &fire_args.cell_set);
    merge.track_double(fire_cmd->add_option("--delta", fire_args.delta, "density in (0,1/2)"),
                       "delta", &fire_args.delta);
    merge.track_int(fire_cmd->add_option("--samples", fire_args.samples, "Monte Carlo samples"),
                    "samples", &fire_args.samples);
    merge.track_int(fire_cmd->add_option("--seed", fire_args.seed, "master seed"), "seed",
                    &fire_args.seed);
    merge.track_int(fire_cmd->add_option("--workers", fire_args.workers, "worker threads"),
                    "workers", &fire_args.workers);
    fire_cmd->add_flag("--oracle", fire_args.oracle, "also run the exact enumeration oracle");

    // bvt with nested subcommands
    BvtArgs bvt_args;
    CLI::App* bvt_cmd = app.add_subcommand("bvt", "Bernoulli Voronoi tessellation");
    bvt_cmd->require_subcommand(1);
    CLI::App* bvt_sample = bvt_cmd->add_subcommand("sample", "one root cell");
    CLI::App* bvt_int = bvt_cmd->add_subcommand("intensity-check", "E[1/|cell|] = p identity");
    CLI::App* bvt_hist = bvt_cmd->add_subcommand("histogram", "cell-size histogram");
    CLI::App* bvt_nbhd = bvt_cmd->add_subcommand("nbhd", "neighborhood distribution");
    for (CLI::App* sub : {bvt_sample, bvt_int, bvt_hist, bvt_nbhd}) {
        merge.track_string(sub->add_option("--group", bvt_args.group, "z:<d> or f:<k>"), "group",
                           &bvt_args.group);
        merge.track_double(sub->add_option("--p", bvt_args.p, "intensity in (0,1)"), "p",
                           &bvt_args.p);
        merge.track_int(sub->add_option("--rmax", bvt_args.rmax, "radius cap"), "rmax",
                        &bvt_args.rmax);
        merge.track_int(sub->add_option("--samples", bvt_args.samples, "samples"), "samples",
                        &bvt_args.samples);
        merge.track_int(sub->add_option("--seed", bvt_args.seed, "master seed"), "seed",
                        &bvt_args.seed);
        merge.track_int(sub->add_option("--workers", bvt_args.workers, "worker threads"),
                        "workers", &bvt_args.workers);
    }
    merge.track_int(bvt_nbhd->add_option("--radius", bvt_args.radius, "neighborhood radius"),
                    "radius", &bvt_args.radius);
    merge.track_string(bvt_hist->add_option("--format", bvt_args.format, "json or csv"), "format",
                       &bvt_args.format);

    // graph with nested subcommands
    std::string graph_input, graph_mode = "exact", graph_format = "json";
    double graph_epsilon = 0.1, graph_kappa = 1.0;
    int graph_k = 2, graph_n = 3;
    std::uint64_t graph_seed = 1;
    CLI::App* graph_cmd = app.add_subcommand("graph", "finite-graph certification");
    graph_cmd->require_subcommand(1);
    CLI::App* g_hyp = graph_cmd->add_subcommand("hyperfinite", "(epsilon,k)-hyperfiniteness");
    CLI::App* g_exp = graph_cmd->add_subcommand("expansion", "small-scale expansion profile");
    CLI::App* g_rob = graph_cmd->add_subcommand("robustness", "expander robustness check");
    for (CLI::App* sub : {g_hyp, g_exp, g_rob})
        merge.track_string(sub->add_option("--input", graph_input, "edge-list file")->required(),
                           "input", &graph_input);
    merge.track_double(g_hyp->add_option("--epsilon", graph_epsilon, "edge fraction"), "epsilon",
                       &graph_epsilon);
    merge.track_int(g_hyp->add_option("--k", graph_k, "component size bound"), "k", &graph_k);
    merge.track_string(g_hyp->add_option("--mode", graph_mode, "exact or greedy"), "mode",
                       &graph_mode);
    merge.track_int(g_exp->add_option("--N", graph_n, "set size bound"), "N", &graph_n);
    merge.track_string(g_exp->add_option("--format", graph_format, "json or csv"), "format",
                       &graph_format);
    merge.track_double(g_rob->add_option("--kappa", graph_kappa, "claimed expansion"), "kappa",
                       &graph_kappa);
    merge.track_int(g_rob->add_option("--N", graph_n, "expander scale"), "N", &graph_n);
    merge.track_double(g_rob->add_option("--epsilon", graph_epsilon, "deletion fraction"),
                       "epsilon", &graph_epsilon);
    merge.track_int(g_rob->add_option("--seed", graph_seed, "sampling seed"), "seed",
                    &graph_seed);

    // bs-distance
    std::string bs_a, bs_b;
    CLI::App* bs_cmd = app.add_subcommand("bs-distance", "TV distance of two distributions");
    bs_cmd->add_option("a", bs_a, "first NeighborhoodDistribution JSON")->required();
    bs_cmd->add_option("b", bs_b, "second NeighborhoodDistribution JSON")->required();

    for (CLI::App* leaf : {fire_cmd, bvt_sample, bvt_int, bvt_hist, bvt_nbhd, g_hyp, g_exp,
                           g_rob, bs_cmd})
        leaf->add_option("--config", config_path, "flat key=value config file; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (!config_path.empty()) merge.apply(FlatConfig::load(config_path));

        if (fire_cmd->parsed()) return run_fire_verify(fire_args);
        if (bvt_cmd->parsed()) {
            if (bvt_sample->parsed()) return run_bvt_sample(bvt_args);
            if (bvt_int->parsed()) return run_bvt_intensity(bvt_args);
            if (bvt_hist->parsed()) return run_bvt_histogram(bvt_args);
            if (bvt_nbhd->parsed()) return run_bvt_nbhd(bvt_args);
        }
        if (graph_cmd->parsed()) {
            if (g_hyp->parsed())
                return run_graph_hyperfinite(graph_input, graph_epsilon, graph_k, graph_mode);
            if (g_exp->parsed()) return run_graph_expansion(graph_input, graph_n, graph_format);
            if (g_rob->parsed())
                return run_graph_robustness(graph_input, graph_kappa, graph_n, graph_epsilon,
                                            graph_seed);
        }
        if (bs_cmd->parsed()) return run_bs_distance(bs_a, bs_b);
        std::cerr << "no command given\n";
        return kExitInvalidInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.line_number << ")\n";
        return kExitInvalidInput;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
