#pragma once

#include <cstdint>
#include <string>

#include "portopt/qubo.hpp"

namespace portopt {

/// Metropolis single-spin-flip schedule with geometric inverse-temperature
/// interpolation across sweeps; the best configuration over all restarts
/// is kept.
struct AnnealSchedule {
    int sweeps = 1000;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    int restarts = 32;
    std::uint64_t seed = 0;
};

struct SolveResult {
    SpinConfig config;
    double energy = 0.0;
    std::string solver_name;
    std::uint64_t evaluations = 0;
};

/// Exact ground state by enumeration; ties broken toward the
/// lexicographically smallest spin vector (-1 before +1). Guarded to
/// n <= 24.
SolveResult solve_exhaustive(const IsingProblem& p);

SolveResult solve_sa(const IsingProblem& p, const AnnealSchedule& s);

/// Steepest single-flip search with a recency tabu list and aspiration
/// (a tabu flip is admitted when it improves the best energy seen).
/// Returns the best configuration visited. Requires 1 <= tenure < n.
SolveResult solve_tabu(const IsingProblem& p, int max_iter, int tenure, std::uint64_t seed);

enum class SolverKind { Exact, Sa, Tabu };

/// Hyperparameters behind the "solver" config block.
struct SolverConfig {
    SolverKind kind = SolverKind::Sa;
    AnnealSchedule sa;           // sa.seed is ignored; per-call seeds are passed in
    int tabu_max_iter = 5000;
    int tabu_tenure = 10;        // clamped to n-1 at dispatch
};

SolverKind solver_kind_from_name(const std::string& name);
std::string solver_kind_name(SolverKind kind);

/// Runs the configured solver on `p` with the given seed (ignored by the
/// exact solver).
SolveResult dispatch_solver(const IsingProblem& p, const SolverConfig& cfg, std::uint64_t seed);

}  // namespace portopt
