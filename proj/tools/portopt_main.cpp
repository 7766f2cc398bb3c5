#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "portopt/bench.hpp"
#include "portopt/config.hpp"
#include "portopt/errors.hpp"
#include "portopt/graph.hpp"
#include "portopt/lssa.hpp"
#include "portopt/market.hpp"

namespace {

using namespace portopt;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

MarketModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open market model: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IngestError("market model " + path + " is not valid JSON: " + e.what());
    }
    return market_model_from_json(j);
}

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write output file: " + path);
    out << j.dump(2) << '\n';
}

struct Cli {
    RunConfig cfg;
    std::string config_path;

    // Flag presence so explicit flags override config-file values.
    double flag_gamma = 0.5, flag_alpha = 0.25;
    std::uint64_t flag_seed = 0, flag_vqe_seed = 0;
    int flag_ng = 0, flag_ns = 0;
    std::string flag_method, flag_solver, flag_shots;

    static bool given(CLI::App* cmd, const std::string& name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    }

    void finalize(CLI::App* cmd) {
        if (!config_path.empty()) {
            apply_config_entries(cfg, parse_key_value_file(config_path));
        } else if (const char* env = std::getenv("PORTOPT_SEED")) {
            // Fallback default seed; flags and config files take precedence.
            try {
                cfg.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw ConfigError("PORTOPT_SEED is not an integer: " + std::string(env));
            }
        }
        if (given(cmd, "--gamma")) cfg.gamma = flag_gamma;
        if (given(cmd, "--alpha")) cfg.alpha = flag_alpha;
        if (given(cmd, "--ng")) cfg.n_g = flag_ng;
        if (given(cmd, "--ns")) cfg.n_s = flag_ns;
        if (given(cmd, "--seed")) cfg.seed = flag_seed;
        if (given(cmd, "--method")) cfg.method = flag_method;
        if (given(cmd, "--solver")) cfg.solver.kind = solver_kind_from_name(flag_solver);
        if (given(cmd, "--shots")) {
            if (flag_shots == "exact") {
                cfg.vqe.shots.shots.reset();
            } else {
                cfg.vqe.shots.shots = std::stoi(flag_shots);
            }
        }
        if (given(cmd, "--vqe-seed")) cfg.vqe.seed = flag_vqe_seed;
    }
};

void add_common_flags(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--config", cli.config_path, "key=value config file");
    cmd->add_option("--gamma", cli.flag_gamma, "risk-aversion factor");
    cmd->add_option("--alpha", cli.flag_alpha, "correlation threshold");
    cmd->add_option("--ng", cli.flag_ng, "sub-system size (0 = N/2)");
    cmd->add_option("--ns", cli.flag_ns, "sub-system count (0 = N/2)");
    cmd->add_option("--seed", cli.flag_seed, "run seed");
    cmd->add_option("--solver", cli.flag_solver, "sub-system solver: exact|sa|tabu");
    cmd->add_option("--shots", cli.flag_shots, "recombiner readout: exact or a shot count");
    cmd->add_option("--vqe-seed", cli.flag_vqe_seed, "recombiner seed (default derived)");
}

int run(int argc, char** argv) {
    CLI::App app{"QUBO portfolio decomposition pipeline"};
    app.require_subcommand(1);

    Cli cli;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "CSV prices -> market model JSON");
    std::string prices_path, out_path;
    ingest->add_option("--prices", prices_path, "input CSV")->required();
    ingest->add_option("--out", out_path, "output model JSON")->required();
    add_common_flags(ingest, cli);

    // synth
    auto* synth = app.add_subcommand("synth", "write a synthetic price CSV");
    int synth_n = 16, synth_clusters = 4;
    synth->add_option("--n", synth_n, "asset count");
    synth->add_option("--clusters", synth_clusters, "correlated blocks");
    synth->add_option("--out", out_path, "output CSV")->required();
    add_common_flags(synth, cli);

    // graph
    auto* graph = app.add_subcommand("graph", "market model -> thresholded edge list");
    std::string market_path;
    graph->add_option("--market", market_path, "market model JSON")->required();
    graph->add_option("--out", out_path, "output edge list")->required();
    add_common_flags(graph, cli);

    // solve
    auto* solve = app.add_subcommand("solve", "run one pipeline method");
    solve->add_option("--market", market_path, "market model JSON")->required();
    solve->add_option("--method", cli.flag_method,
                      "lssa-random|lssa-mis|lssa-mis-random|exact|tabu");
    solve->add_option("--out", out_path, "output report JSON")->required();
    add_common_flags(solve, cli);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "run a benchmark grid");
    std::string spec_path;
    bench->add_option("--market", market_path, "market model JSON")->required();
    bench->add_option("--spec", spec_path, "benchmark grid file")->required();
    bench->add_option("--out", out_path, "output CSV")->required();
    add_common_flags(bench, cli);

    // frontier
    auto* frontier = app.add_subcommand("frontier", "return/volatility scatter CSV");
    std::vector<std::string> report_paths;
    int samples = 5000;
    frontier->add_option("--market", market_path, "market model JSON")->required();
    frontier->add_option("--reports", report_paths, "report JSON files to overlay");
    frontier->add_option("--samples", samples, "random portfolio count");
    frontier->add_option("--out", out_path, "output CSV")->required();
    add_common_flags(frontier, cli);

    CLI11_PARSE(app, argc, argv);
    CLI::App* cmd = app.get_subcommands().front();
    cli.finalize(cmd);
    RunConfig& cfg = cli.cfg;

    if (cmd == ingest) {
        const PriceSeries prices = load_prices(prices_path);
        nlohmann::json j = market_model_to_json(build_market_model(prices));
        j["config"] = config_to_json(cfg);
        write_json(j, out_path);
        std::cout << prices.num_assets() << " assets, " << prices.num_dates() << " dates ("
                  << prices.dates.front() << " .. " << prices.dates.back() << ")\n"
                  << "model written to " << out_path << '\n';
        return kExitOk;
    }

    if (cmd == synth) {
        const PriceSeries prices = synthesize_market(synth_n, cfg.seed, synth_clusters);
        write_prices_csv(prices, out_path);
        std::cout << "synthetic prices: " << prices.num_assets() << " assets, "
                  << prices.num_dates() << " dates -> " << out_path << '\n';
        return kExitOk;
    }

    if (cmd == graph) {
        const MarketModel model = load_model(market_path);
        const MarketGraph g = build_market_graph(model, cfg.alpha);
        write_graph(g, out_path);
        std::cout << g.n << " vertices, " << g.num_edges() << " edges, density " << g.density()
                  << " at alpha " << cfg.alpha << '\n';
        return kExitOk;
    }

    if (cmd == solve) {
        if (cfg.method.empty()) {
            throw ConfigError("solve needs --method (or method= in the config file)");
        }
        const MarketModel model = load_model(market_path);
        const int n = model.num_assets();
        if (cfg.method == "lssa-random") {
            const int ng = cfg.n_g > 0 ? cfg.n_g : (n + 1) / 2;
            const int ns = cfg.n_s > 0 ? cfg.n_s : std::max((n + 1) / 2, (n + ng - 1) / ng);
            if (static_cast<long long>(ns) * ng < n) {
                throw ConfigError("ns*ng = " + std::to_string(static_cast<long long>(ns) * ng) +
                                  " cannot cover " + std::to_string(n) + " assets");
            }
        }
        const PipelineReport rep = run_method(cfg.method, model, cfg.gamma, cfg.alpha, cfg.n_g,
                                              cfg.n_s, cfg.solver, cfg.vqe, cfg.seed);
        nlohmann::json j = report_to_json(rep);
        j["config"] = config_to_json(cfg);
        write_json(j, out_path);

        std::cout << "selected:";
        for (int a = 0; a < n; ++a) {
            if (rep.selected[a]) std::cout << ' ' << model.symbols[a];
        }
        std::cout << "\nenergy " << rep.energy << ", classical " << rep.classical_energy
                  << ", r_ar " << rep.r_ar << '\n';
        return kExitOk;
    }

    if (cmd == bench) {
        const MarketModel model = load_model(market_path);
        BenchmarkSpec spec = parse_benchmark_spec(spec_path);
        const BenchmarkResult result = run_benchmark(spec, model);
        write_benchmark_csv(result, out_path, config_echo_string(cfg));
        std::cout << "tick\tmethod\tmedian_r_ar\tbest_r_ar\tns_po\n";
        for (const auto& s : result.summary) {
            std::cout << s.tick << '\t' << s.method << '\t' << s.median_r_ar << '\t'
                      << s.best_r_ar << '\t' << s.ns_po_max << '\n';
        }
        return kExitOk;
    }

    if (cmd == frontier) {
        const MarketModel model = load_model(market_path);
        std::vector<PipelineReport> reports;
        for (const auto& path : report_paths) {
            std::ifstream in(path);
            if (!in) throw IngestError("cannot open report: " + path);
            nlohmann::json j;
            in >> j;
            reports.push_back(report_from_json(j));
        }
        const auto points = frontier_scatter(model, samples, cfg.seed, reports);
        write_frontier_csv(points, out_path, config_echo_string(cfg));
        std::cout << points.size() << " frontier points -> " << out_path << '\n';
        return kExitOk;
    }

    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IngestError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const ModelError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const StatsError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}
