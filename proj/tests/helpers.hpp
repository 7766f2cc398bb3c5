#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "portopt/graph.hpp"
#include "portopt/market.hpp"
#include "portopt/qubo.hpp"

namespace testutil {

using namespace portopt;

inline IsingProblem random_ising(int n, std::mt19937_64& rng, double coupling_density = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd h(n);
    for (int a = 0; a < n; ++a) {
        h(a) = gauss(rng);
        for (int b = a + 1; b < n; ++b) {
            if (u01(rng) <= coupling_density) j(a, b) = gauss(rng);
        }
    }
    return make_ising(std::move(j), std::move(h), 0.0);
}

inline QuboProblem random_qubo(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a(r, c) = gauss(rng);
    }
    return make_qubo_symmetrized(a, gauss(rng));
}

inline BinaryConfig bits_of(std::uint64_t m, int n) {
    BinaryConfig x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<int>((m >> i) & 1);
    return x;
}

/// Maximum independent-set size by direct subset enumeration; independent
/// of the QUBO formulation it is used to check.
inline int brute_force_mis_size(const MarketGraph& g) {
    int best = 0;
    for (std::uint64_t m = 0; m < (1ULL << g.n); ++m) {
        bool ok = true;
        for (const auto& [i, j] : g.edges) {
            if ((m >> i & 1) && (m >> j & 1)) { ok = false; break; }
        }
        if (!ok) continue;
        best = std::max(best, static_cast<int>(std::popcount(m)));
    }
    return best;
}

/// Mean-variance objective evaluated directly from the model, bypassing
/// the QUBO construction entirely.
inline double direct_portfolio_energy(const MarketModel& m, double gamma, const BinaryConfig& w) {
    double ret = 0.0, var = 0.0;
    for (int a = 0; a < m.num_assets(); ++a) {
        if (!w[a]) continue;
        ret += m.mu(a);
        for (int b = 0; b < m.num_assets(); ++b) {
            if (w[b]) var += m.sigma(a, b);
        }
    }
    return -ret + gamma * var;
}

/// Argmin of the direct objective over all nonzero-or-zero selections.
inline BinaryConfig brute_force_portfolio_argmin(const MarketModel& m, double gamma) {
    const int n = m.num_assets();
    BinaryConfig best = bits_of(0, n);
    double best_e = direct_portfolio_energy(m, gamma, best);
    for (std::uint64_t k = 1; k < (1ULL << n); ++k) {
        const BinaryConfig w = bits_of(k, n);
        const double e = direct_portfolio_energy(m, gamma, w);
        if (e < best_e) {
            best_e = e;
            best = w;
        }
    }
    return best;
}

/// Random 0.3-edge-probability graph wrapped in the market-graph shape.
inline MarketGraph random_graph(int n, double edge_prob, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    MarketGraph g;
    g.n = n;
    g.alpha = 0.0;
    g.adjacency.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (u01(rng) < edge_prob) {
                const double w = 0.25 + 0.75 * u01(rng);
                g.edges.emplace_back(i, j);
                g.weights.push_back(w);
                g.adjacency[i].emplace_back(j, w);
                g.adjacency[j].emplace_back(i, w);
            }
        }
    }
    return g;
}

/// Scratch directory that cleans up after the test.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("portopt_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace testutil
