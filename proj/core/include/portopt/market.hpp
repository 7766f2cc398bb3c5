#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "portopt/qubo.hpp"

namespace portopt {

/// Closing-price history: rows are trading dates, columns are assets.
struct PriceSeries {
    std::vector<std::string> symbols;
    std::vector<std::string> dates;  // ISO-8601, strictly increasing
    Eigen::MatrixXd close;           // dates x assets, strictly positive

    int num_assets() const { return static_cast<int>(symbols.size()); }
    int num_dates() const { return static_cast<int>(dates.size()); }
};

/// First and second moments of daily simple returns.
struct MarketModel {
    std::vector<std::string> symbols;
    Eigen::VectorXd mu;     // mean daily return per asset
    Eigen::MatrixXd sigma;  // sample covariance of daily returns
    Eigen::MatrixXd corr;   // correlation derived from sigma

    int num_assets() const { return static_cast<int>(symbols.size()); }

    /// Sub-model over the first `count` assets.
    MarketModel head(int count) const;
};

struct PortfolioConfig {
    double gamma = 0.5;  // risk-aversion weight on the variance term
};

/// Parses a closing-price CSV with header "date,SYM1,SYM2,...".
/// Interior missing cells are forward-filled from the previous date; a
/// missing cell on an asset's first date is an error.
PriceSeries load_prices(const std::string& path);

/// Writes the CSV format accepted by load_prices.
void write_prices_csv(const PriceSeries& p, const std::string& path);

/// Geometric-random-walk price generator with block-correlated daily
/// innovations: assets are split into contiguous clusters, intra-cluster
/// return correlation is ~0.6 against ~0.05 across clusters. Produces
/// 1260 trading days (about five years) and is deterministic per seed.
PriceSeries synthesize_market(int n, std::uint64_t seed, int clusters = 1);

/// Daily simple returns p_t/p_{t-1} - 1, mean vector, sample covariance
/// (T-1 denominator) and the implied correlation matrix.
MarketModel build_market_model(const PriceSeries& p);

/// Mean-variance selection model: energy(w) = -mu^T w + gamma * w^T sigma w
/// over binary w. Diagonal q_ii = -mu_i + gamma*sigma_ii, off-diagonal
/// q_ik = gamma*sigma_ik, offset 0.
QuboProblem build_portfolio_qubo(const MarketModel& m, const PortfolioConfig& c);

struct PortfolioStats {
    double ret = 0.0;
    double volatility = 0.0;
};

/// Equal-weight statistics of the selected assets: return = w^T mu and
/// volatility = sqrt(w^T sigma w) with w_i = 1/k on the k selected assets.
PortfolioStats portfolio_stats(const MarketModel& m, const BinaryConfig& selection);

nlohmann::json market_model_to_json(const MarketModel& m);
MarketModel market_model_from_json(const nlohmann::json& j);

}  // namespace portopt
