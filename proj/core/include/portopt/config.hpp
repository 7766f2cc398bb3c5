#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "portopt/bench.hpp"
#include "portopt/solvers.hpp"
#include "portopt/vqe.hpp"

namespace portopt {

/// All run tunables with their defaults. gamma and alpha default to the
/// values used throughout the experiments (0.5 and 0.25); the recombiner
/// reads exact amplitudes unless vqe.shots selects a shot count.
struct RunConfig {
    double gamma = 0.5;
    double alpha = 0.25;
    int n_g = 0;  // 0 = ceil(N/2)
    int n_s = 0;  // 0 = ceil(N/2)
    std::uint64_t seed = 0;
    std::string method;
    SolverConfig solver;
    RecombinerConfig vqe;
};

/// Parses a flat key=value file ('#' comments, blank lines ignored).
/// Later duplicates override earlier ones.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

/// Applies recognized keys to the config; unrecognized keys are an error.
/// Keys: gamma, alpha, ng, ns, seed, method, solver, sa.sweeps,
/// sa.beta_initial, sa.beta_final, sa.restarts, tabu.max_iter,
/// tabu.tenure, vqe.layers, vqe.budget, vqe.shots ("exact" or count),
/// vqe.seed.
void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries);

/// Benchmark grid file: the RunConfig keys plus sizes ("N:Ng,N:Ng,..."),
/// methods (comma list) and seeds (comma list).
BenchmarkSpec parse_benchmark_spec(const std::string& path);

/// Single-line "key=value key=value ..." form, echoed into outputs so
/// every artifact records the settings that produced it.
std::string config_echo_string(const RunConfig& cfg);

/// JSON object with the same content as config_echo_string.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace portopt
