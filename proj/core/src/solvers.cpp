#include "portopt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "portopt/errors.hpp"
#include "portopt/rng.hpp"

namespace portopt {

namespace {

constexpr int kExhaustiveLimit = 24;

/// Dense symmetric coupling table plus bias vector for O(1) flip deltas.
struct FlipWorkspace {
    int n;
    std::vector<double> coupling;  // n*n, symmetric, zero diagonal
    std::vector<double> bias;

    explicit FlipWorkspace(const IsingProblem& p) : n(p.n()), coupling(n * n, 0.0), bias(n) {
        for (int i = 0; i < n; ++i) {
            bias[i] = p.h(i);
            for (int k = i + 1; k < n; ++k) {
                coupling[i * n + k] = coupling[k * n + i] = p.j(i, k);
            }
        }
    }

    /// Local field f_i = h_i + sum_k J_ik z_k; flipping spin i changes the
    /// energy by -2 z_i f_i.
    void fields(const SpinConfig& z, std::vector<double>& f) const {
        f.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = bias[i];
            const double* row = coupling.data() + static_cast<std::size_t>(i) * n;
            for (int k = 0; k < n; ++k) acc += row[k] * z[k];
            f[i] = acc;
        }
    }

    void apply_flip(SpinConfig& z, std::vector<double>& f, int i) const {
        z[i] = -z[i];
        const double dz = 2.0 * z[i];
        const double* row = coupling.data() + static_cast<std::size_t>(i) * n;
        for (int k = 0; k < n; ++k) f[k] += row[k] * dz;
        f[i] -= row[i] * dz;  // row diagonal is zero anyway
    }
};

bool lex_less(const SpinConfig& a, const SpinConfig& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SolveResult checked_result(const IsingProblem& p, SpinConfig config, std::string name,
                           std::uint64_t evaluations) {
    const double energy = ising_energy(p, config);
    return SolveResult{std::move(config), energy, std::move(name), evaluations};
}

SpinConfig random_config(int n, std::mt19937_64& rng) {
    SpinConfig z(n);
    for (int i = 0; i < n; ++i) z[i] = (rng() & 1) ? 1 : -1;
    return z;
}

}  // namespace

SolveResult solve_exhaustive(const IsingProblem& p) {
    const int n = p.n();
    if (n > kExhaustiveLimit) {
        throw SizeError("exhaustive enumeration limited to n <= " +
                        std::to_string(kExhaustiveLimit) + ", got " + std::to_string(n));
    }
    FlipWorkspace ws(p);

    // Count upward through bit patterns with variable 0 as the most
    // significant bit, so configurations are visited in lexicographic
    // order of the spin vector and the first minimum found is the
    // lexicographically smallest one.
    SpinConfig z(n, -1);
    std::vector<double> f;
    ws.fields(z, f);
    double energy = ising_energy(p, z);

    SpinConfig best = z;
    double best_energy = energy;

    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t m = 1; m < total; ++m) {
        std::uint64_t changed = m ^ (m - 1);
        while (changed) {
            const int bit = std::countr_zero(changed);
            changed &= changed - 1;
            const int var = n - 1 - bit;
            energy += -2.0 * z[var] * f[var];
            ws.apply_flip(z, f, var);
        }
        if ((m & 0xFFFF) == 0) energy = ising_energy(p, z);  // shed rounding drift
        if (energy < best_energy - 1e-9) {
            best_energy = ising_energy(p, z);
            best = z;
        } else if (energy < best_energy + 1e-9) {
            const double exact = ising_energy(p, z);
            if (exact < best_energy) {
                best_energy = exact;
                best = z;
            }
        }
    }
    return checked_result(p, std::move(best), "exact", total);
}

SolveResult solve_sa(const IsingProblem& p, const AnnealSchedule& s) {
    if (s.sweeps < 1 || s.restarts < 1) {
        throw ConfigError("annealing schedule needs sweeps >= 1 and restarts >= 1");
    }
    if (!(s.beta_final >= s.beta_initial && s.beta_initial > 0.0)) {
        throw ConfigError("annealing schedule needs beta_final >= beta_initial > 0");
    }
    const int n = p.n();
    FlipWorkspace ws(p);

    SpinConfig best;
    double best_energy = std::numeric_limits<double>::infinity();
    std::uint64_t evaluations = 0;

    const double beta_ratio = s.beta_final / s.beta_initial;
    std::vector<double> f;
    for (int restart = 0; restart < s.restarts; ++restart) {
        auto rng = make_rng(derive_seed(s.seed, static_cast<std::uint64_t>(restart)));
        std::uniform_real_distribution<double> u01(0.0, 1.0);

        SpinConfig z = random_config(n, rng);
        ws.fields(z, f);
        double energy = ising_energy(p, z);
        SpinConfig restart_best = z;
        double restart_best_energy = energy;

        for (int sweep = 0; sweep < s.sweeps; ++sweep) {
            const double frac = s.sweeps > 1 ? static_cast<double>(sweep) / (s.sweeps - 1) : 1.0;
            const double beta = s.beta_initial * std::pow(beta_ratio, frac);
            for (int i = 0; i < n; ++i) {
                const double delta = -2.0 * z[i] * f[i];
                ++evaluations;
                if (delta <= 0.0 || u01(rng) < std::exp(-beta * delta)) {
                    ws.apply_flip(z, f, i);
                    energy += delta;
                    if (energy < restart_best_energy) {
                        restart_best_energy = energy;
                        restart_best = z;
                    }
                }
            }
        }

        restart_best_energy = ising_energy(p, restart_best);
        if (restart_best_energy < best_energy ||
            (restart_best_energy == best_energy && lex_less(restart_best, best))) {
            best_energy = restart_best_energy;
            best = std::move(restart_best);
        }
    }
    return checked_result(p, std::move(best), "sa", evaluations);
}

SolveResult solve_tabu(const IsingProblem& p, int max_iter, int tenure, std::uint64_t seed) {
    const int n = p.n();
    if (max_iter < 1) throw ConfigError("tabu search needs max_iter >= 1");
    if (tenure < 1 || tenure >= n) {
        throw ConfigError("tabu tenure must satisfy 1 <= tenure < n");
    }
    FlipWorkspace ws(p);
    auto rng = make_rng(seed);

    SpinConfig z = random_config(n, rng);
    std::vector<double> f;
    ws.fields(z, f);
    double energy = ising_energy(p, z);

    SpinConfig best = z;
    double best_energy = energy;
    std::vector<int> tabu_until(n, 0);
    std::uint64_t evaluations = 0;

    for (int iter = 1; iter <= max_iter; ++iter) {
        int move = -1;
        double move_delta = 0.0;
        int fallback = -1;  // soonest-expiring tabu move, used if all are blocked
        for (int i = 0; i < n; ++i) {
            const double delta = -2.0 * z[i] * f[i];
            ++evaluations;
            const bool tabu = iter < tabu_until[i];
            const bool aspirated = energy + delta < best_energy - 1e-12;
            if (tabu && !aspirated) {
                if (fallback < 0 || tabu_until[i] < tabu_until[fallback]) fallback = i;
                continue;
            }
            if (move < 0 || delta < move_delta) {
                move = i;
                move_delta = delta;
            }
        }
        if (move < 0) move = fallback;
        if (move < 0) break;

        const double delta = -2.0 * z[move] * f[move];
        ws.apply_flip(z, f, move);
        energy += delta;
        tabu_until[move] = iter + tenure;
        if (energy < best_energy) {
            best_energy = energy;
            best = z;
        }
    }
    return checked_result(p, std::move(best), "tabu", evaluations);
}

SolverKind solver_kind_from_name(const std::string& name) {
    if (name == "exact") return SolverKind::Exact;
    if (name == "sa") return SolverKind::Sa;
    if (name == "tabu") return SolverKind::Tabu;
    throw ConfigError("unknown solver \"" + name + "\" (expected exact|sa|tabu)");
}

std::string solver_kind_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::Exact: return "exact";
        case SolverKind::Sa: return "sa";
        case SolverKind::Tabu: return "tabu";
    }
    return "?";
}

SolveResult dispatch_solver(const IsingProblem& p, const SolverConfig& cfg, std::uint64_t seed) {
    switch (cfg.kind) {
        case SolverKind::Exact:
            return solve_exhaustive(p);
        case SolverKind::Sa: {
            AnnealSchedule s = cfg.sa;
            s.seed = seed;
            return solve_sa(p, s);
        }
        case SolverKind::Tabu: {
            const int tenure = std::max(1, std::min(cfg.tabu_tenure, p.n() - 1));
            if (p.n() < 2) return solve_exhaustive(p);  // tabu tenure undefined for n = 1
            return solve_tabu(p, cfg.tabu_max_iter, tenure, seed);
        }
    }
    throw ConfigError("unhandled solver kind");
}

}  // namespace portopt
