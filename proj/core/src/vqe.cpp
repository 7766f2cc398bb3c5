#include "portopt/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "portopt/dfo.hpp"
#include "portopt/errors.hpp"
#include "portopt/rng.hpp"

namespace portopt {

namespace {

int ceil_log2(int x) {
    int bits = 0;
    while ((1 << bits) < x) ++bits;
    return bits;
}

void apply_ry(std::vector<double>& amps, int n_qubits, int qubit, double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::size_t stride = 1ULL << qubit;
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const double a0 = amps[i];
            const double a1 = amps[i + stride];
            amps[i] = c * a0 - s * a1;
            amps[i + stride] = s * a0 + c * a1;
        }
    }
    (void)n_qubits;
}

void apply_cnot(std::vector<double>& amps, int control, int target) {
    const std::size_t cbit = 1ULL << control;
    const std::size_t tbit = 1ULL << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

}  // namespace

int Statevector::n_qubits() const {
    return ceil_log2(static_cast<int>(amplitudes.size()));
}

double Statevector::norm() const {
    double s = 0.0;
    for (double a : amplitudes) s += a * a;
    return std::sqrt(s);
}

Statevector simulate_ansatz(const AnsatzParams& p) {
    if (p.n_qubits < 0 || p.layers < 0) throw ConfigError("ansatz sizes must be non-negative");
    if (static_cast<int>(p.theta.size()) != p.layers * p.n_qubits) {
        throw DimensionError("ansatz needs layers * n_qubits angles, got " +
                             std::to_string(p.theta.size()));
    }
    Statevector v;
    v.amplitudes.assign(1ULL << p.n_qubits, 0.0);
    v.amplitudes[0] = 1.0;
    for (int layer = 0; layer < p.layers; ++layer) {
        for (int q = 0; q < p.n_qubits; ++q) {
            apply_ry(v.amplitudes, p.n_qubits, q, p.theta[layer * p.n_qubits + q]);
        }
        if (layer + 1 < p.layers) {
            for (int q = 0; q + 1 < p.n_qubits; ++q) apply_cnot(v.amplitudes, q, q + 1);
        }
    }
    return v;
}

CoefficientVector amplitudes_to_coefficients(const Statevector& v, int n_s,
                                             const ShotConfig& shots, std::mt19937_64& rng) {
    const int dim = static_cast<int>(v.amplitudes.size());
    if (n_s < 1 || n_s > dim) {
        throw DimensionError("coefficient count " + std::to_string(n_s) +
                             " exceeds statevector size " + std::to_string(dim));
    }

    std::vector<double> magnitudes(n_s);
    if (shots.exact()) {
        for (int i = 0; i < n_s; ++i) magnitudes[i] = std::abs(v.amplitudes[i]);
    } else {
        const int count = *shots.shots;
        if (count < 1) throw ConfigError("shot count must be >= 1");
        std::vector<double> cdf(dim);
        double acc = 0.0;
        for (int i = 0; i < dim; ++i) {
            acc += v.amplitudes[i] * v.amplitudes[i];
            cdf[i] = acc;
        }
        std::vector<int> hits(dim, 0);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int s = 0; s < count; ++s) {
            const double u = u01(rng) * acc;
            const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            ++hits[std::min<int>(static_cast<int>(it - cdf.begin()), dim - 1)];
        }
        for (int i = 0; i < n_s; ++i) {
            magnitudes[i] = std::sqrt(static_cast<double>(hits[i]) / count);
        }
    }

    double norm2 = 0.0;
    for (double m : magnitudes) norm2 += m * m;
    if (!(norm2 > 0.0)) {
        throw RecombineError("degenerate encoding: the first " + std::to_string(n_s) +
                             " amplitudes carry no weight");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    CoefficientVector out;
    out.c.resize(n_s);
    for (int i = 0; i < n_s; ++i) {
        const double sign = v.amplitudes[i] < 0.0 ? -1.0 : 1.0;
        out.c[i] = sign * magnitudes[i] * inv;
    }
    return out;
}

SpinConfig sign_combine(const std::vector<SubsystemSolution>& subsystems,
                        const CoefficientVector& coeffs, int n) {
    if (coeffs.c.size() != subsystems.size()) {
        throw DimensionError("coefficient count does not match sub-system count");
    }
    std::vector<double> weighted(n, 0.0);
    for (std::size_t s = 0; s < subsystems.size(); ++s) {
        const auto& partial = subsystems[s].partial;
        if (static_cast<int>(partial.size()) != n) {
            throw DimensionError("partial configuration length does not match problem size");
        }
        for (int v = 0; v < n; ++v) weighted[v] += coeffs.c[s] * partial[v];
    }
    SpinConfig z(n);
    for (int v = 0; v < n; ++v) z[v] = weighted[v] > 0.0 ? 1 : -1;  // sign(0) -> -1
    return z;
}

RecombineResult optimize_coefficients(const std::vector<SubsystemSolution>& subsystems,
                                      const IsingProblem& full, int budget,
                                      const ShotConfig& shots, std::uint64_t seed, int layers) {
    if (subsystems.empty()) throw RecombineError("no sub-systems to recombine");
    const int n = full.n();

    std::vector<bool> covered(n, false);
    for (const auto& s : subsystems) {
        for (int site : s.sites) {
            if (site < 0 || site >= n) throw IndexError("sub-system site out of range");
            covered[site] = true;
        }
    }
    std::string missing;
    for (int v = 0; v < n; ++v) {
        if (!covered[v]) missing += (missing.empty() ? "" : ", ") + std::to_string(v);
    }
    if (!missing.empty()) {
        throw RecombineError("variables not covered by any sub-system: " + missing);
    }

    const int n_s = static_cast<int>(subsystems.size());
    if (n_s == 1) {
        RecombineResult r;
        r.coefficients.c = {1.0};
        r.config = sign_combine(subsystems, r.coefficients, n);
        r.energy = ising_energy(full, r.config);
        r.evaluations = 1;
        return r;
    }

    const int n_qubits = ceil_log2(n_s);
    if (layers < 1) throw ConfigError("recombiner needs at least one rotation layer");
    const int dim = layers * n_qubits;

    auto rng = make_rng(seed);

    RecombineResult best;
    best.energy = std::numeric_limits<double>::infinity();
    int evaluations = 0;

    auto track = [&](const CoefficientVector& coeffs) {
        SpinConfig config = sign_combine(subsystems, coeffs, n);
        const double e = ising_energy(full, config);
        ++evaluations;
        if (e < best.energy) {
            best.energy = e;
            best.config = std::move(config);
            best.coefficients = coeffs;
        }
        return e;
    };

    // Uniform weighting is the plain majority vote; keep it as a baseline
    // candidate so the returned energy never loses to it.
    CoefficientVector uniform;
    uniform.c.assign(n_s, 1.0 / std::sqrt(static_cast<double>(n_s)));
    track(uniform);

    auto cost = [&](const Eigen::VectorXd& theta) {
        AnsatzParams params;
        params.layers = layers;
        params.n_qubits = n_qubits;
        params.theta.assign(theta.data(), theta.data() + theta.size());
        const Statevector v = simulate_ansatz(params);
        try {
            return track(amplitudes_to_coefficients(v, n_s, shots, rng));
        } catch (const RecombineError&) {
            // All usable amplitudes vanished at this point of the landscape;
            // repel the search instead of aborting the pipeline.
            ++evaluations;
            return std::numeric_limits<double>::infinity();
        }
    };

    const int remaining = std::max(0, budget - 1);
    const int budget_zero = remaining / 2;
    const int budget_random = remaining - budget_zero;

    if (budget_zero > 0) {
        minimize_linear_tr(cost, Eigen::VectorXd::Zero(dim), 0.7, 1e-3, budget_zero);
    }
    if (budget_random > 0) {
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        Eigen::VectorXd start(dim);
        for (int i = 0; i < dim; ++i) start(i) = angle(rng);
        minimize_linear_tr(cost, start, 0.7, 1e-3, budget_random);
    }

    best.evaluations = evaluations;
    return best;
}

}  // namespace portopt
