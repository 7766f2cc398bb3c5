#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portopt/lssa.hpp"
#include "portopt/market.hpp"
#include "portopt/solvers.hpp"

namespace portopt {

/// One evaluation grid: problem sizes, pipeline methods and seeds.
struct BenchmarkSpec {
    std::vector<std::pair<int, int>> sizes;  // (N, N_g)
    std::vector<std::string> methods;        // lssa-random | lssa-mis | lssa-mis-random | exact | tabu
    std::vector<std::uint64_t> seeds;
    SolverConfig solver;
    RecombinerConfig recombiner;
    double gamma = 0.5;
    double alpha = 0.25;
    int n_s = 0;  // random-sampling sub-system count; 0 = ceil(N/2)
};

struct BenchRow {
    int n = 0;
    int n_g = 0;
    std::string method;
    std::uint64_t seed = 0;
    double r_ar = 0.0;
    double energy = 0.0;
    double classical_energy = 0.0;
    int ns_mis = 0;
    int ns_po = 0;
    double wall_time_ms = 0.0;
};

struct BenchSummary {
    std::string tick;  // "N-Ng", the figure-axis label
    std::string method;
    double median_r_ar = 0.0;
    double best_r_ar = 0.0;
    int ns_po_max = 0;
};

struct BenchmarkResult {
    std::vector<BenchRow> rows;
    std::vector<BenchSummary> summary;
};

struct FrontierPoint {
    std::string label;  // "random" | "asset" | method name
    double ret = 0.0;
    double volatility = 0.0;
};

/// Reference energy: exact enumeration below 20 variables, tabu search
/// (fixed seed) from 20 variables up.
SolveResult classical_baseline(const IsingProblem& p);

/// method_energy / classical_energy; defined only for a strictly negative
/// baseline energy.
double approximation_ratio(double method_energy, double classical_energy);

/// Runs every (size, method, seed) cell of the spec on prefixes of the
/// market and aggregates per-cell medians (and the best seed, matching
/// the pick-the-best reporting style) across seeds.
BenchmarkResult run_benchmark(const BenchmarkSpec& spec, const MarketModel& market);

/// Runs one pipeline method on a market; `n_s` applies to the random
/// stages and defaults to ceil(N/2) when 0.
PipelineReport run_method(const std::string& method, const MarketModel& m, double gamma,
                          double alpha, int n_g, int n_s, const SolverConfig& solver,
                          const RecombinerConfig& recombiner, std::uint64_t seed);

/// Return/volatility cloud: `n_random` uniformly random nonempty
/// selections, one singleton point per asset, and one point per report's
/// selection (reports with an empty selection are skipped with a warning
/// on stderr).
std::vector<FrontierPoint> frontier_scatter(const MarketModel& m, int n_random,
                                            std::uint64_t seed,
                                            const std::vector<PipelineReport>& reports);

void write_benchmark_csv(const BenchmarkResult& r, const std::string& path,
                         const std::string& config_echo = "");
void write_frontier_csv(const std::vector<FrontierPoint>& points, const std::string& path,
                        const std::string& config_echo = "");

}  // namespace portopt
