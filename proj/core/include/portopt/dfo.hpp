#pragma once

#include <Eigen/Dense>
#include <functional>

namespace portopt {

struct DfoResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
};

/// Derivative-free local minimizer in the linear-approximation
/// trust-region family: keeps a simplex of dim+1 points, fits a linear
/// model of the objective by interpolation, steps against the model
/// gradient within the trust radius, and halves the radius when the step
/// fails to improve. Stops at `max_evals` objective calls or when the
/// radius falls below `rho_end`. Deterministic for a fixed start point.
DfoResult minimize_linear_tr(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, double rho_begin, double rho_end,
                             int max_evals);

}  // namespace portopt
