#include "portopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>

#include "portopt/errors.hpp"
#include "portopt/rng.hpp"

namespace portopt {

namespace {

constexpr int kExactBaselineLimit = 20;   // exact below, tabu from here up
constexpr std::uint64_t kBaselineSeed = 0xBA5E11FEULL;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    if (v.empty()) return 0.0;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int default_ns(int n) { return (n + 1) / 2; }

}  // namespace

SolveResult classical_baseline(const IsingProblem& p) {
    if (p.n() < kExactBaselineLimit) {
        return solve_exhaustive(p);
    }
    SolverConfig cfg;
    cfg.kind = SolverKind::Tabu;
    return dispatch_solver(p, cfg, kBaselineSeed);
}

double approximation_ratio(double method_energy, double classical_energy) {
    if (!(classical_energy < 0.0)) {
        throw RatioError("approximation ratio undefined for baseline energy " +
                         std::to_string(classical_energy));
    }
    return method_energy / classical_energy;
}

PipelineReport run_method(const std::string& method, const MarketModel& m, double gamma,
                          double alpha, int n_g, int n_s, const SolverConfig& solver,
                          const RecombinerConfig& recombiner, std::uint64_t seed) {
    const int n = m.num_assets();
    if (n_g <= 0) n_g = default_ns(n);
    if (n_s <= 0) n_s = std::max(default_ns(n), (n + n_g - 1) / n_g);

    if (method == "lssa-random") {
        const IsingProblem p = qubo_to_ising(build_portfolio_qubo(m, PortfolioConfig{gamma}));
        const SamplePlan plan = sample_random(n, n_g, n_s, derive_seed(seed, 7));
        return run_lssa(p, plan, solver, recombiner, seed);
    }
    if (method == "lssa-mis") {
        return run_mis_portfolio(m, alpha, gamma, n_g, solver, recombiner, seed);
    }
    if (method == "lssa-mis-random") {
        return run_mis_random_portfolio(m, alpha, gamma, n_g, n_s, solver, recombiner, seed);
    }
    if (method == "exact" || method == "tabu") {
        const auto start = std::chrono::steady_clock::now();
        const IsingProblem p = qubo_to_ising(build_portfolio_qubo(m, PortfolioConfig{gamma}));
        SolverConfig direct = solver;
        direct.kind = method == "exact" ? SolverKind::Exact : SolverKind::Tabu;
        const SolveResult res = dispatch_solver(p, direct, seed);
        const SolveResult baseline = classical_baseline(p);
        PipelineReport r;
        r.method = method;
        r.selected = spin_to_binary(res.config);
        r.energy = res.energy;
        r.classical_energy = baseline.energy;
        r.r_ar = approximation_ratio(res.energy, baseline.energy);
        r.ns_mis = 0;
        r.ns_po = 1;
        r.seed = seed;
        r.wall_time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        return r;
    }
    throw ConfigError("unknown method \"" + method +
                      "\" (expected lssa-random|lssa-mis|lssa-mis-random|exact|tabu)");
}

BenchmarkResult run_benchmark(const BenchmarkSpec& spec, const MarketModel& market) {
    if (spec.sizes.empty()) throw ConfigError("benchmark spec lists no sizes");
    if (spec.methods.empty()) throw ConfigError("benchmark spec lists no methods");
    if (spec.seeds.empty()) throw ConfigError("benchmark spec lists no seeds");
    for (const auto& [n, ng] : spec.sizes) {
        if (ng > n) throw ConfigError("benchmark size has N_g > N");
        if (n > market.num_assets()) {
            throw ConfigError("benchmark needs " + std::to_string(n) + " assets, market has " +
                              std::to_string(market.num_assets()));
        }
    }

    BenchmarkResult result;
    for (const auto& [n, ng] : spec.sizes) {
        const MarketModel sub = market.head(n);
        for (const auto& method : spec.methods) {
            std::vector<double> ratios;
            double best = 0.0;
            int ns_po_max = 0;
            for (std::uint64_t seed : spec.seeds) {
                const PipelineReport rep = run_method(method, sub, spec.gamma, spec.alpha, ng,
                                                      spec.n_s, spec.solver, spec.recombiner,
                                                      seed);
                BenchRow row;
                row.n = n;
                row.n_g = ng;
                row.method = method;
                row.seed = seed;
                row.r_ar = rep.r_ar;
                row.energy = rep.energy;
                row.classical_energy = rep.classical_energy;
                row.ns_mis = rep.ns_mis;
                row.ns_po = rep.ns_po;
                row.wall_time_ms = rep.wall_time_ms;
                result.rows.push_back(std::move(row));
                ratios.push_back(rep.r_ar);
                best = std::max(best, rep.r_ar);
                ns_po_max = std::max(ns_po_max, rep.ns_po);
            }
            BenchSummary s;
            s.tick = std::to_string(n) + "-" + std::to_string(ng);
            s.method = method;
            s.median_r_ar = median(ratios);
            s.best_r_ar = best;
            s.ns_po_max = ns_po_max;
            result.summary.push_back(std::move(s));
        }
    }
    return result;
}

std::vector<FrontierPoint> frontier_scatter(const MarketModel& m, int n_random,
                                            std::uint64_t seed,
                                            const std::vector<PipelineReport>& reports) {
    if (n_random < 0) throw ConfigError("random portfolio count must be >= 0");
    const int n = m.num_assets();
    std::vector<FrontierPoint> points;
    points.reserve(n_random + n + reports.size());

    auto rng = make_rng(seed);
    BinaryConfig selection(n);
    for (int k = 0; k < n_random; ++k) {
        int chosen = 0;
        do {  // uniform over nonempty subsets, by rejection
            chosen = 0;
            for (int a = 0; a < n; ++a) {
                selection[a] = static_cast<int>(rng() & 1);
                chosen += selection[a];
            }
        } while (chosen == 0);
        const PortfolioStats s = portfolio_stats(m, selection);
        points.push_back({"random", s.ret, s.volatility});
    }

    for (int a = 0; a < n; ++a) {
        BinaryConfig single(n, 0);
        single[a] = 1;
        const PortfolioStats s = portfolio_stats(m, single);
        points.push_back({"asset", s.ret, s.volatility});
    }

    for (const auto& rep : reports) {
        const int chosen = std::accumulate(rep.selected.begin(), rep.selected.end(), 0);
        if (chosen == 0) {
            std::cerr << "warning: report \"" << rep.method
                      << "\" selects no assets; skipped in frontier\n";
            continue;
        }
        const PortfolioStats s = portfolio_stats(m, rep.selected);
        points.push_back({rep.method, s.ret, s.volatility});
    }
    return points;
}

void write_benchmark_csv(const BenchmarkResult& r, const std::string& path,
                         const std::string& config_echo) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write benchmark file: " + path);
    if (!config_echo.empty()) out << "# config: " << config_echo << '\n';
    out << "n,ng,method,seed,r_ar,energy,classical_energy,ns_mis,ns_po,wall_time_ms\n";
    char buf[256];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%llu,%.12g,%.12g,%.12g,%d,%d,%.3f\n", row.n,
                      row.n_g, row.method.c_str(),
                      static_cast<unsigned long long>(row.seed), row.r_ar, row.energy,
                      row.classical_energy, row.ns_mis, row.ns_po, row.wall_time_ms);
        out << buf;
    }
}

void write_frontier_csv(const std::vector<FrontierPoint>& points, const std::string& path,
                        const std::string& config_echo) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write frontier file: " + path);
    if (!config_echo.empty()) out << "# config: " << config_echo << '\n';
    out << "label,return,volatility\n";
    char buf[160];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g\n", p.label.c_str(), p.ret, p.volatility);
        out << buf;
    }
}

}  // namespace portopt
