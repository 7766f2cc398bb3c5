#include "portopt/qubo.hpp"

#include <cmath>
#include <unordered_set>

#include "portopt/errors.hpp"

namespace portopt {

namespace {
constexpr double kSymmetryTol = 1e-12;
}

QuboProblem make_qubo(Eigen::MatrixXd q, double offset) {
    if (q.rows() < 1 || q.rows() != q.cols()) {
        throw DimensionError("QUBO matrix must be square with n >= 1");
    }
    const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol) {
        throw DimensionError("QUBO matrix not symmetric (max asymmetry " +
                             std::to_string(asym) + ")");
    }
    return QuboProblem{std::move(q), offset};
}

QuboProblem make_qubo_symmetrized(const Eigen::MatrixXd& a, double offset) {
    if (a.rows() < 1 || a.rows() != a.cols()) {
        throw DimensionError("QUBO matrix must be square with n >= 1");
    }
    Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    return QuboProblem{std::move(sym), offset};
}

IsingProblem make_ising(Eigen::MatrixXd j, Eigen::VectorXd h, double offset) {
    const int n = static_cast<int>(h.size());
    if (n < 1 || j.rows() != n || j.cols() != n) {
        throw DimensionError("Ising coupling matrix must be n x n with n >= 1");
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c <= r; ++c) {
            if (j(r, c) != 0.0) {
                throw DimensionError("Ising couplings must be strictly upper triangular");
            }
        }
    }
    return IsingProblem{std::move(j), std::move(h), offset};
}

IsingProblem qubo_to_ising(const QuboProblem& p) {
    const int n = p.n();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    double offset = p.offset;

    // x_i = (1 + z_i) / 2 applied to x^T q x with a symmetric q.
    for (int i = 0; i < n; ++i) {
        h(i) += 0.5 * p.q(i, i);
        offset += 0.5 * p.q(i, i);
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double cross = p.q(a, b) + p.q(b, a);  // coefficient of x_a x_b
            if (cross == 0.0) continue;
            j(a, b) += 0.25 * cross;
            h(a) += 0.25 * cross;
            h(b) += 0.25 * cross;
            offset += 0.25 * cross;
        }
    }
    return IsingProblem{std::move(j), std::move(h), offset};
}

QuboProblem ising_to_qubo(const IsingProblem& p) {
    const int n = p.n();
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    double offset = p.offset;

    // z_i = 2 x_i - 1.
    for (int i = 0; i < n; ++i) {
        q(i, i) += 2.0 * p.h(i);
        offset -= p.h(i);
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double jab = p.j(a, b);
            if (jab == 0.0) continue;
            q(a, b) += 2.0 * jab;
            q(b, a) += 2.0 * jab;
            q(a, a) -= 2.0 * jab;
            q(b, b) -= 2.0 * jab;
            offset += jab;
        }
    }
    return QuboProblem{std::move(q), offset};
}

double qubo_energy(const QuboProblem& p, const BinaryConfig& x) {
    const int n = p.n();
    if (static_cast<int>(x.size()) != n) {
        throw DimensionError("assignment length " + std::to_string(x.size()) +
                             " does not match QUBO size " + std::to_string(n));
    }
    double e = p.offset;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int k = 0; k < n; ++k) {
            if (x[k] != 0) e += p.q(i, k);
        }
    }
    return e;
}

double ising_energy(const IsingProblem& p, const SpinConfig& z) {
    const int n = p.n();
    if (static_cast<int>(z.size()) != n) {
        throw DimensionError("spin vector length " + std::to_string(z.size()) +
                             " does not match Ising size " + std::to_string(n));
    }
    double e = p.offset;
    for (int i = 0; i < n; ++i) {
        e += p.h(i) * z[i];
        for (int k = i + 1; k < n; ++k) {
            const double jik = p.j(i, k);
            if (jik != 0.0) e += jik * z[i] * z[k];
        }
    }
    return e;
}

IsingProblem restrict_to(const IsingProblem& p, const std::vector<int>& sites) {
    const int n = p.n();
    const int m = static_cast<int>(sites.size());
    if (m < 1) throw IndexError("restriction requires at least one site");
    std::unordered_set<int> seen;
    for (int s : sites) {
        if (s < 0 || s >= n) {
            throw IndexError("site index " + std::to_string(s) + " out of range [0, " +
                             std::to_string(n) + ")");
        }
        if (!seen.insert(s).second) {
            throw IndexError("duplicate site index " + std::to_string(s));
        }
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd h(m);
    for (int a = 0; a < m; ++a) {
        h(a) = p.h(sites[a]);
        for (int b = a + 1; b < m; ++b) {
            const int u = std::min(sites[a], sites[b]);
            const int v = std::max(sites[a], sites[b]);
            j(a, b) = p.j(u, v);
        }
    }
    return IsingProblem{std::move(j), std::move(h), 0.0};
}

SpinConfig binary_to_spin(const BinaryConfig& x) {
    SpinConfig z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = 2 * x[i] - 1;
    return z;
}

BinaryConfig spin_to_binary(const SpinConfig& z) {
    BinaryConfig x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = (z[i] + 1) / 2;
    return x;
}

nlohmann::json qubo_to_json(const QuboProblem& p) {
    const int n = p.n();
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < n; ++k) row.push_back(p.q(i, k));
        rows.push_back(std::move(row));
    }
    return {{"n", n}, {"q", std::move(rows)}, {"offset", p.offset}};
}

QuboProblem qubo_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    Eigen::MatrixXd q(n, n);
    const auto& rows = j.at("q");
    if (static_cast<int>(rows.size()) != n) {
        throw DimensionError("QUBO JSON: matrix row count does not match n");
    }
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) {
            throw DimensionError("QUBO JSON: matrix column count does not match n");
        }
        for (int k = 0; k < n; ++k) q(i, k) = rows[i][k].get<double>();
    }
    return make_qubo(std::move(q), j.at("offset").get<double>());
}

nlohmann::json ising_to_json(const IsingProblem& p) {
    const int n = p.n();
    nlohmann::json triples = nlohmann::json::array();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (p.j(a, b) != 0.0) triples.push_back({a, b, p.j(a, b)});
        }
    }
    nlohmann::json h = nlohmann::json::array();
    for (int i = 0; i < n; ++i) h.push_back(p.h(i));
    return {{"n", n}, {"j", std::move(triples)}, {"h", std::move(h)}, {"offset", p.offset}};
}

IsingProblem ising_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : j.at("j")) {
        const int a = t.at(0).get<int>();
        const int b = t.at(1).get<int>();
        if (a < 0 || b < 0 || a >= n || b >= n || a >= b) {
            throw IndexError("Ising JSON: bad coupling indices");
        }
        couplings(a, b) = t.at(2).get<double>();
    }
    Eigen::VectorXd h(n);
    const auto& hj = j.at("h");
    if (static_cast<int>(hj.size()) != n) {
        throw DimensionError("Ising JSON: bias length does not match n");
    }
    for (int i = 0; i < n; ++i) h(i) = hj[i].get<double>();
    return make_ising(std::move(couplings), std::move(h), j.at("offset").get<double>());
}

}  // namespace portopt
