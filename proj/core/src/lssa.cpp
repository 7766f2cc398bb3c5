#include "portopt/lssa.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "portopt/bench.hpp"
#include "portopt/errors.hpp"
#include "portopt/rng.hpp"

namespace portopt {

namespace {

// Seed-derivation stream tags for the pipeline stages.
constexpr std::uint64_t kMisSampleStream = 101;
constexpr std::uint64_t kMisSolveStream = 102;
constexpr std::uint64_t kPortfolioSolveStream = 103;
constexpr std::uint64_t kRecombinerStream = 104;

void check_coverage(const SamplePlan& plan) {
    std::vector<bool> covered(plan.n, false);
    for (const auto& sub : plan.subsystems) {
        if (static_cast<int>(sub.size()) > plan.n_g) {
            throw CoverageError("sub-system larger than n_g");
        }
        for (int v : sub) {
            if (v < 0 || v >= plan.n) throw IndexError("sub-system index out of range");
            covered[v] = true;
        }
    }
    std::string missing;
    for (int v = 0; v < plan.n; ++v) {
        if (!covered[v]) missing += (missing.empty() ? "" : ", ") + std::to_string(v);
    }
    if (!missing.empty()) throw CoverageError("plan leaves variables uncovered: " + missing);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

SamplePlan full_plan(int n, const std::string& method) {
    SamplePlan plan;
    plan.n = n;
    plan.n_g = n;
    plan.method = method;
    plan.subsystems.emplace_back(n);
    std::iota(plan.subsystems.back().begin(), plan.subsystems.back().end(), 0);
    return plan;
}

PipelineReport finish_report(std::string method, const IsingProblem& problem,
                             const LssaOutcome& outcome, int ns_mis, int ns_po,
                             std::uint64_t seed,
                             std::chrono::steady_clock::time_point start) {
    const SolveResult baseline = classical_baseline(problem);
    PipelineReport r;
    r.method = std::move(method);
    r.selected = spin_to_binary(outcome.config);
    r.energy = outcome.energy;
    r.classical_energy = baseline.energy;
    r.r_ar = approximation_ratio(outcome.energy, baseline.energy);
    r.ns_mis = ns_mis;
    r.ns_po = ns_po;
    r.seed = seed;
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

}  // namespace

SamplePlan sample_random(int n, int n_g, int n_s, std::uint64_t seed) {
    if (n < 1) throw ConfigError("problem size must be >= 1");
    if (n_g < 1 || n_g > n) throw ConfigError("sub-system size must satisfy 1 <= n_g <= n");
    if (n_s < 1 || static_cast<long long>(n_s) * n_g < n) {
        throw CoverageError("n_s * n_g = " + std::to_string(static_cast<long long>(n_s) * n_g) +
                            " cannot cover " + std::to_string(n) + " variables");
    }

    auto rng = make_rng(seed);
    std::vector<int> shuffle(n);
    std::iota(shuffle.begin(), shuffle.end(), 0);
    int cursor = n;  // forces a fresh shuffle on first use
    std::deque<int> pending;

    auto next_index = [&]() {
        if (!pending.empty()) {
            const int v = pending.front();
            pending.pop_front();
            return v;
        }
        if (cursor == n) {
            std::shuffle(shuffle.begin(), shuffle.end(), rng);
            cursor = 0;
        }
        return shuffle[cursor++];
    };

    SamplePlan plan;
    plan.n = n;
    plan.n_g = n_g;
    plan.method = "random";
    plan.subsystems.reserve(n_s);

    std::vector<int> deferred;
    std::unordered_set<int> in_chunk;
    for (int c = 0; c < n_s; ++c) {
        std::vector<int> chunk;
        chunk.reserve(n_g);
        in_chunk.clear();
        deferred.clear();
        while (static_cast<int>(chunk.size()) < n_g) {
            const int v = next_index();
            if (in_chunk.insert(v).second) {
                chunk.push_back(v);
            } else {
                deferred.push_back(v);  // same shuffle crosses this chunk twice
            }
        }
        pending.insert(pending.begin(), deferred.begin(), deferred.end());
        std::sort(chunk.begin(), chunk.end());
        plan.subsystems.push_back(std::move(chunk));
    }
    check_coverage(plan);
    return plan;
}

SamplePlan sample_mis(const MarketGraph& g, const IndependentSet& mis, int n_g) {
    if (n_g < 1) throw ConfigError("sub-system size must be >= 1");

    SamplePlan plan;
    plan.n = g.n;
    plan.n_g = std::min(n_g, g.n);
    plan.method = "mis";

    std::vector<bool> covered(g.n, false);
    for (int placeholder : mis.members) {
        auto neighbors = g.adjacency[placeholder];
        std::sort(neighbors.begin(), neighbors.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        std::vector<int> sub{placeholder};
        for (const auto& [v, w] : neighbors) {
            if (static_cast<int>(sub.size()) >= plan.n_g) break;
            sub.push_back(v);
        }
        for (int v : sub) covered[v] = true;
        std::sort(sub.begin(), sub.end());
        plan.subsystems.push_back(std::move(sub));
    }

    // Truncation can leave high-degree neighborhoods partially covered;
    // bucket the leftovers by their strongest covered neighbor.
    std::map<int, std::vector<int>> overflow;
    for (int v = 0; v < g.n; ++v) {
        if (covered[v]) continue;
        int key = v;
        double key_weight = -1.0;
        int any_key = v;
        double any_weight = -1.0;
        for (const auto& [u, w] : g.adjacency[v]) {
            if (w > any_weight) {
                any_weight = w;
                any_key = u;
            }
            if (covered[u] && w > key_weight) {
                key_weight = w;
                key = u;
            }
        }
        overflow[key_weight >= 0.0 ? key : any_key].push_back(v);
    }
    for (auto& [key, members] : overflow) {
        for (std::size_t from = 0; from < members.size(); from += plan.n_g) {
            const std::size_t to = std::min(members.size(), from + plan.n_g);
            std::vector<int> sub(members.begin() + from, members.begin() + to);
            std::sort(sub.begin(), sub.end());
            plan.subsystems.push_back(std::move(sub));
        }
    }

    check_coverage(plan);
    return plan;
}

IndependentSet repair_independent_set(const MarketGraph& g, const BinaryConfig& selection) {
    if (static_cast<int>(selection.size()) != g.n) {
        throw DimensionError("selection length does not match vertex count");
    }
    std::vector<int> keep(selection.begin(), selection.end());
    auto degree = [&](int v) { return static_cast<int>(g.adjacency[v].size()); };

    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (const auto& [i, j] : g.edges) {
            if (keep[i] && keep[j]) {
                int drop;
                if (degree(i) != degree(j)) {
                    drop = degree(i) < degree(j) ? i : j;
                } else {
                    drop = std::max(i, j);
                }
                keep[drop] = 0;
                dirty = true;
            }
        }
    }
    for (int v = 0; v < g.n; ++v) {
        if (keep[v]) continue;
        bool blocked = false;
        for (const auto& [u, w] : g.adjacency[v]) {
            if (keep[u]) { blocked = true; break; }
        }
        if (!blocked) keep[v] = 1;
    }
    return validate_independent_set(g, BinaryConfig(keep.begin(), keep.end()));
}

LssaOutcome run_lssa_core(const IsingProblem& p, const SamplePlan& plan, const SolverConfig& solver,
                          const RecombinerConfig& recombiner, std::uint64_t seed) {
    if (plan.n != p.n()) throw DimensionError("plan size does not match problem size");
    check_coverage(plan);

    // Identical site sets would only repeat the same sub-solve; drop them.
    std::vector<std::vector<int>> unique_sites;
    std::set<std::vector<int>> seen;
    for (const auto& sub : plan.subsystems) {
        if (seen.insert(sub).second) unique_sites.push_back(sub);
    }

    std::vector<SubsystemSolution> solutions;
    solutions.reserve(unique_sites.size());
    for (std::size_t k = 0; k < unique_sites.size(); ++k) {
        const auto& sites = unique_sites[k];
        const IsingProblem sub = restrict_to(p, sites);
        const SolveResult res = dispatch_solver(sub, solver, derive_seed(seed, k));
        SubsystemSolution sol;
        sol.sites = sites;
        sol.partial.assign(plan.n, 0);
        for (std::size_t a = 0; a < sites.size(); ++a) sol.partial[sites[a]] = res.config[a];
        sol.energy = res.energy;
        solutions.push_back(std::move(sol));
    }

    const std::uint64_t vqe_seed =
        recombiner.seed.value_or(derive_seed(seed, kRecombinerStream));
    const RecombineResult rec = optimize_coefficients(solutions, p, recombiner.budget,
                                                      recombiner.shots, vqe_seed,
                                                      recombiner.layers);

    LssaOutcome out;
    out.config = rec.config;
    out.energy = rec.energy;
    out.subsystems_used = static_cast<int>(unique_sites.size());
    return out;
}

PipelineReport run_lssa(const IsingProblem& p, const SamplePlan& plan, const SolverConfig& solver,
                        const RecombinerConfig& recombiner, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const LssaOutcome outcome = run_lssa_core(p, plan, solver, recombiner, seed);
    return finish_report("lssa-" + plan.method, p, outcome, 0, outcome.subsystems_used, seed,
                         start);
}

PipelineReport run_mis_portfolio(const MarketModel& m, double alpha, double gamma, int n_g,
                                 const SolverConfig& solver, const RecombinerConfig& recombiner,
                                 std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const MarketGraph g = build_market_graph(m, alpha);
    const IsingProblem mis_ising = qubo_to_ising(mis_qubo(g));

    // Level 1 solves the independent-set model whole; running it through
    // the trivial one-chunk plan keeps the seed path shared with level 2.
    const LssaOutcome mis_outcome = run_lssa_core(mis_ising, full_plan(g.n, "mis"), solver,
                                                  recombiner, derive_seed(seed, kMisSolveStream));
    const IndependentSet mis = repair_independent_set(g, spin_to_binary(mis_outcome.config));

    const SamplePlan plan = sample_mis(g, mis, n_g);
    const IsingProblem portfolio = qubo_to_ising(build_portfolio_qubo(m, PortfolioConfig{gamma}));
    const LssaOutcome outcome = run_lssa_core(portfolio, plan, solver, recombiner,
                                              derive_seed(seed, kPortfolioSolveStream));
    return finish_report("lssa-mis", portfolio, outcome, mis_outcome.subsystems_used,
                         outcome.subsystems_used, seed, start);
}

PipelineReport run_mis_random_portfolio(const MarketModel& m, double alpha, double gamma, int n_g,
                                        int n_s_mis, const SolverConfig& solver,
                                        const RecombinerConfig& recombiner, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const MarketGraph g = build_market_graph(m, alpha);
    const IsingProblem mis_ising = qubo_to_ising(mis_qubo(g));

    const SamplePlan mis_plan =
        sample_random(g.n, std::min(n_g, g.n), n_s_mis, derive_seed(seed, kMisSampleStream));
    const LssaOutcome mis_outcome = run_lssa_core(mis_ising, mis_plan, solver, recombiner,
                                                  derive_seed(seed, kMisSolveStream));
    const IndependentSet mis = repair_independent_set(g, spin_to_binary(mis_outcome.config));

    const SamplePlan plan = sample_mis(g, mis, n_g);
    const IsingProblem portfolio = qubo_to_ising(build_portfolio_qubo(m, PortfolioConfig{gamma}));
    const LssaOutcome outcome = run_lssa_core(portfolio, plan, solver, recombiner,
                                              derive_seed(seed, kPortfolioSolveStream));
    return finish_report("lssa-mis-random", portfolio, outcome, mis_outcome.subsystems_used,
                         outcome.subsystems_used, seed, start);
}

nlohmann::json report_to_json(const PipelineReport& r) {
    return {{"method", r.method},
            {"selected", r.selected},
            {"energy", r.energy},
            {"classical_energy", r.classical_energy},
            {"r_ar", r.r_ar},
            {"samples", {{"mis", r.ns_mis}, {"po", r.ns_po}}},
            {"seed", r.seed},
            {"wall_time_ms", r.wall_time_ms}};
}

PipelineReport report_from_json(const nlohmann::json& j) {
    PipelineReport r;
    r.method = j.at("method").get<std::string>();
    r.selected = j.at("selected").get<BinaryConfig>();
    r.energy = j.at("energy").get<double>();
    r.classical_energy = j.at("classical_energy").get<double>();
    r.r_ar = j.at("r_ar").get<double>();
    r.ns_mis = j.at("samples").at("mis").get<int>();
    r.ns_po = j.at("samples").at("po").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    return r;
}

}  // namespace portopt
