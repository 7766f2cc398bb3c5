#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "portopt/graph.hpp"
#include "portopt/market.hpp"
#include "portopt/qubo.hpp"
#include "portopt/solvers.hpp"
#include "portopt/vqe.hpp"

namespace portopt {

/// A decomposition of an n-variable problem into sub-systems of at most
/// n_g variables whose union covers every variable.
struct SamplePlan {
    std::vector<std::vector<int>> subsystems;  // sorted index lists
    int n = 0;
    int n_g = 0;
    std::string method;  // "random" | "mis" | "mis_random"

    int n_s() const { return static_cast<int>(subsystems.size()); }
};

struct PipelineReport {
    std::string method;
    BinaryConfig selected;
    double energy = 0.0;
    double classical_energy = 0.0;
    double r_ar = 0.0;
    int ns_mis = 0;  // sub-system solves spent on the independent-set stage
    int ns_po = 0;   // sub-system solves spent on the portfolio stage
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
};

/// Random sampling: repeated whole-population shuffles sliced into
/// n_g-sized chunks; a chunk crossing a shuffle boundary is topped up
/// from the fresh shuffle, deferring duplicates to the next chunk. Every
/// variable is covered at least floor(n_s*n_g/n) times.
SamplePlan sample_random(int n, int n_g, int n_s, std::uint64_t seed);

/// One sub-system per independent-set member: the placeholder plus its
/// neighbors by descending edge weight, truncated to n_g in total.
/// Variables the truncation leaves uncovered are grouped into overflow
/// sub-systems keyed by their highest-weight covered neighbor.
SamplePlan sample_mis(const MarketGraph& g, const IndependentSet& mis, int n_g);

/// Forces a selection into a maximal independent set: drops the
/// lower-degree endpoint of each violated edge (ties drop the higher
/// index), then augments with any still-addable vertex in index order.
IndependentSet repair_independent_set(const MarketGraph& g, const BinaryConfig& selection);

struct LssaOutcome {
    SpinConfig config;
    double energy = 0.0;
    int subsystems_used = 0;  // after deduplication
};

/// Decomposition run without baseline bookkeeping: solves each sub-system
/// on the restricted Hamiltonian (duplicated site sets are solved once)
/// and recombines with the amplitude-weighted sign rule.
LssaOutcome run_lssa_core(const IsingProblem& p, const SamplePlan& plan, const SolverConfig& solver,
                          const RecombinerConfig& recombiner, std::uint64_t seed);

/// Full pipeline on one problem: decomposition run plus the classical
/// baseline (exact below 20 variables, tabu from 20 up) and the
/// approximation ratio.
PipelineReport run_lssa(const IsingProblem& p, const SamplePlan& plan, const SolverConfig& solver,
                        const RecombinerConfig& recombiner, std::uint64_t seed);

/// Level-1 pipeline: builds the market graph, solves the independent-set
/// model whole, repairs the outcome to a maximal independent set, and
/// runs the placeholder-group decomposition on the portfolio model.
PipelineReport run_mis_portfolio(const MarketModel& m, double alpha, double gamma, int n_g,
                                 const SolverConfig& solver, const RecombinerConfig& recombiner,
                                 std::uint64_t seed);

/// Level-2 pipeline: the independent-set model is itself decomposed with
/// random sampling (n_s_mis sub-systems) before the portfolio stage.
PipelineReport run_mis_random_portfolio(const MarketModel& m, double alpha, double gamma, int n_g,
                                        int n_s_mis, const SolverConfig& solver,
                                        const RecombinerConfig& recombiner, std::uint64_t seed);

nlohmann::json report_to_json(const PipelineReport& r);
PipelineReport report_from_json(const nlohmann::json& j);

}  // namespace portopt
