#pragma once

#include <Eigen/Dense>
#include <vector>

#include <json.hpp>

namespace portopt {

/// Spin assignment, entries in {-1, +1}.
using SpinConfig = std::vector<int>;

/// Binary assignment, entries in {0, 1}.
using BinaryConfig = std::vector<int>;

/// Quadratic unconstrained binary model: energy(x) = x^T q x + offset
/// over x in {0,1}^n. q is symmetric; its diagonal holds the linear
/// coefficients (x_i^2 == x_i).
struct QuboProblem {
    Eigen::MatrixXd q;
    double offset = 0.0;

    int n() const { return static_cast<int>(q.rows()); }
};

/// Spin model: energy(z) = sum_{i<j} j(i,j) z_i z_j + sum_i h_i z_i + offset
/// over z in {-1,+1}^n. j is strictly upper triangular.
struct IsingProblem {
    Eigen::MatrixXd j;
    Eigen::VectorXd h;
    double offset = 0.0;

    int n() const { return static_cast<int>(h.size()); }
};

/// Validates symmetry (1e-12) and n >= 1.
QuboProblem make_qubo(Eigen::MatrixXd q, double offset = 0.0);

/// Builds a QuboProblem from an arbitrary square matrix by symmetrizing
/// (a + a^T)/2; energies are unchanged by the symmetrization.
QuboProblem make_qubo_symmetrized(const Eigen::MatrixXd& a, double offset = 0.0);

/// Validates the strictly-upper-triangular shape of j and matching sizes.
IsingProblem make_ising(Eigen::MatrixXd j, Eigen::VectorXd h, double offset = 0.0);

IsingProblem qubo_to_ising(const QuboProblem& p);
QuboProblem ising_to_qubo(const IsingProblem& p);

double qubo_energy(const QuboProblem& p, const BinaryConfig& x);
double ising_energy(const IsingProblem& p, const SpinConfig& z);

/// Sub-Hamiltonian over the given sites: keeps exactly the couplings and
/// biases whose indices all lie in `sites` (reindexed by position); the
/// restricted offset is zero. Sites must be distinct and in range.
IsingProblem restrict_to(const IsingProblem& p, const std::vector<int>& sites);

/// Maps binary {0,1} to spin {-1,+1} via z = 2x - 1, and back.
SpinConfig binary_to_spin(const BinaryConfig& x);
BinaryConfig spin_to_binary(const SpinConfig& z);

nlohmann::json qubo_to_json(const QuboProblem& p);
QuboProblem qubo_from_json(const nlohmann::json& j);
nlohmann::json ising_to_json(const IsingProblem& p);
IsingProblem ising_from_json(const nlohmann::json& j);

}  // namespace portopt
