#include "portopt/dfo.hpp"

#include <cmath>
#include <limits>

#include "portopt/errors.hpp"

namespace portopt {

DfoResult minimize_linear_tr(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, double rho_begin, double rho_end,
                             int max_evals) {
    if (!(rho_begin > rho_end && rho_end > 0.0)) {
        throw ConfigError("trust-region radii must satisfy rho_begin > rho_end > 0");
    }
    const int dim = static_cast<int>(start.size());

    DfoResult best;
    best.x = start;
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        const double v = objective(x);
        ++evals;
        if (evals == 1 || v < best.value) {
            best.value = v;
            best.x = x;
        }
        return v;
    };

    if (dim == 0 || max_evals < 1) {
        best.value = objective(start);
        best.evaluations = 1;
        return best;
    }

    double rho = rho_begin;
    Eigen::MatrixXd points(dim + 1, dim);
    Eigen::VectorXd values(dim + 1);

    // (Re)builds the interpolation simplex around a center point.
    auto rebuild = [&](const Eigen::VectorXd& center, double center_value, bool have_center) {
        points.row(0) = center.transpose();
        values(0) = have_center ? center_value : eval(center);
        for (int i = 0; i < dim && evals < max_evals; ++i) {
            Eigen::VectorXd p = center;
            p(i) += rho;
            points.row(i + 1) = p.transpose();
            values(i + 1) = eval(p);
        }
    };

    rebuild(start, 0.0, false);
    if (evals >= max_evals) {
        best.evaluations = evals;
        return best;
    }

    while (evals < max_evals && rho > rho_end) {
        int ibest = 0, iworst = 0;
        for (int i = 1; i <= dim; ++i) {
            if (values(i) < values(ibest)) ibest = i;
            if (values(i) > values(iworst)) iworst = i;
        }
        const Eigen::VectorXd center = points.row(ibest).transpose();
        const double center_value = values(ibest);

        // Linear model g of the objective from the simplex differences.
        Eigen::MatrixXd d(dim, dim);
        Eigen::VectorXd rhs(dim);
        int row = 0;
        for (int i = 0; i <= dim; ++i) {
            if (i == ibest) continue;
            d.row(row) = points.row(i) - points.row(ibest);
            rhs(row) = values(i) - center_value;
            ++row;
        }
        Eigen::VectorXd g = d.colPivHouseholderQr().solve(rhs);
        const double gnorm = g.norm();
        if (!g.allFinite() || gnorm < 1e-14) {
            // Flat or degenerate model: contract and re-anchor at the best point.
            rho *= 0.5;
            if (rho <= rho_end || evals >= max_evals) break;
            rebuild(center, center_value, true);
            continue;
        }

        const Eigen::VectorXd candidate = center - (rho / gnorm) * g;
        const double cv = eval(candidate);
        if (cv < center_value - 1e-14 * (1.0 + std::abs(center_value))) {
            points.row(iworst) = candidate.transpose();
            values(iworst) = cv;
        } else {
            if (cv < values(iworst)) {
                points.row(iworst) = candidate.transpose();
                values(iworst) = cv;
            }
            rho *= 0.5;
            if (rho <= rho_end || evals >= max_evals) break;
            rebuild(center, center_value, true);
        }
    }

    best.evaluations = evals;
    return best;
}

}  // namespace portopt
