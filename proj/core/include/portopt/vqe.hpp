#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "portopt/qubo.hpp"

namespace portopt {

/// Angles of the real-amplitude ansatz: `layers` rotation layers over
/// `n_qubits` qubits with an entangling chain between consecutive layers.
struct AnsatzParams {
    std::vector<double> theta;  // length layers * n_qubits
    int layers = 0;
    int n_qubits = 0;
};

/// Real amplitudes of a normalized 2^n_qubits state.
struct Statevector {
    std::vector<double> amplitudes;

    int n_qubits() const;
    double norm() const;
};

/// Combination weights over the sub-systems; unit Euclidean norm.
struct CoefficientVector {
    std::vector<double> c;
};

/// Partial spin configuration: entries in {-1, 0, +1}, nonzero exactly on
/// `sites`; `energy` is the sub-Hamiltonian energy of the restriction.
struct SubsystemSolution {
    std::vector<int> sites;
    std::vector<int> partial;  // full length n
    double energy = 0.0;
};

/// Shot-based amplitude readout; default is the exact amplitudes.
struct ShotConfig {
    std::optional<int> shots;  // nullopt = exact

    bool exact() const { return !shots.has_value(); }
};

/// Simulates the ansatz on the all-zeros basis state: one Y-rotation per
/// qubit per layer, a CNOT chain q -> q+1 between consecutive layers.
/// All amplitudes stay real.
Statevector simulate_ansatz(const AnsatzParams& p);

/// Extracts n_s combination coefficients from the first n_s amplitudes.
/// Exact mode renormalizes them directly. Shot mode estimates each
/// magnitude as sqrt(count/shots) from a multinomial measurement of the
/// state and carries the exact amplitude's sign before renormalizing.
CoefficientVector amplitudes_to_coefficients(const Statevector& v, int n_s,
                                             const ShotConfig& shots, std::mt19937_64& rng);

/// Final spin for each variable: sign of the coefficient-weighted sum of
/// the partial configurations, with sign(0) mapped to -1.
SpinConfig sign_combine(const std::vector<SubsystemSolution>& subsystems,
                        const CoefficientVector& coeffs, int n);

struct RecombineResult {
    CoefficientVector coefficients;
    SpinConfig config;
    double energy = 0.0;
    int evaluations = 0;
};

struct RecombinerConfig {
    int layers = 2;
    int budget = 200;            // total cost evaluations, all starts included
    ShotConfig shots;            // exact by default
    std::optional<std::uint64_t> seed;  // derived from the pipeline seed when unset
};

/// Optimizes the combination coefficients by encoding them as amplitudes
/// of a ceil(log2 n_s)-qubit ansatz and minimizing the full-problem energy
/// of the signed combination with a derivative-free trust-region search
/// from the zero start and one seeded random start. The uniform-weight
/// combination is always evaluated as a baseline candidate, and the
/// best-seen point (not the final iterate) is returned. Every variable of
/// `full` must be covered by at least one sub-system.
RecombineResult optimize_coefficients(const std::vector<SubsystemSolution>& subsystems,
                                      const IsingProblem& full, int budget,
                                      const ShotConfig& shots, std::uint64_t seed, int layers = 2);

}  // namespace portopt
