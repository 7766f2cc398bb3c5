#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "portopt/errors.hpp"
#include "portopt/market.hpp"

using namespace portopt;
using namespace testutil;

TEST_CASE("load_prices: well-formed two-asset file") {
    TempDir dir;
    const auto path = dir.file("prices.csv");
    write_file(path,
               "date,AAA,BBB\n"
               "2020-01-01,10.0,20.0\n"
               "2020-01-02,10.5,19.0\n"
               "2020-01-03,11.0,21.5\n");
    const PriceSeries p = load_prices(path);
    CHECK(p.symbols == std::vector<std::string>{"AAA", "BBB"});
    CHECK(p.num_dates() == 3);
    CHECK(p.close(2, 1) == doctest::Approx(21.5));
}

TEST_CASE("load_prices: interior blank cell is forward-filled") {
    TempDir dir;
    const auto path = dir.file("prices.csv");
    write_file(path,
               "date,AAA,BBB\n"
               "2020-01-01,10.0,20.0\n"
               "2020-01-02,,19.0\n"
               "2020-01-03,11.0,21.5\n");
    const PriceSeries p = load_prices(path);
    CHECK(p.close(1, 0) == doctest::Approx(10.0));
}

TEST_CASE("load_prices: rejects bad cells naming the position") {
    TempDir dir;
    const auto path = dir.file("prices.csv");

    write_file(path, "date,AAA\n2020-01-01,-3.0\n2020-01-02,4.0\n");
    CHECK_THROWS_WITH_AS(load_prices(path), doctest::Contains("AAA"), IngestError);

    write_file(path, "date,AAA\n2020-01-01,,\n2020-01-02,4.0\n");
    CHECK_THROWS_AS(load_prices(path), IngestError);  // leading gap

    write_file(path, "date,AAA\nJan 1 2020,3.0\n2020-01-02,4.0\n");
    CHECK_THROWS_WITH_AS(load_prices(path), doctest::Contains("date"), IngestError);

    write_file(path, "date,AAA\n2020-01-02,3.0\n2020-01-01,4.0\n");
    CHECK_THROWS_AS(load_prices(path), IngestError);  // out of order

    CHECK_THROWS_AS(load_prices(dir.file("missing.csv")), IngestError);
}

TEST_CASE("synthesize_market: clusters correlate more inside than across") {
    const PriceSeries p = synthesize_market(8, 1, 2);
    const MarketModel m = build_market_model(p);
    double intra = 0.0, inter = 0.0;
    int n_intra = 0, n_inter = 0;
    for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
            const bool same = (a / 4) == (b / 4);
            (same ? intra : inter) += std::abs(m.corr(a, b));
            (same ? n_intra : n_inter) += 1;
        }
    }
    CHECK(intra / n_intra > inter / n_inter);
}

TEST_CASE("synthesize_market: shape and determinism") {
    const PriceSeries a = synthesize_market(2, 42, 1);
    CHECK(a.num_dates() == 1260);
    CHECK(a.num_assets() == 2);
    CHECK(a.close.minCoeff() > 0.0);

    const PriceSeries b = synthesize_market(2, 42, 1);
    CHECK(a.dates == b.dates);
    CHECK((a.close - b.close).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(synthesize_market(1, 0, 1), ConfigError);
}

TEST_CASE("build_market_model: proportional series are perfectly correlated") {
    PriceSeries p;
    p.symbols = {"A", "B"};
    p.dates = {"2020-01-01", "2020-01-02", "2020-01-03", "2020-01-06"};
    p.close.resize(4, 2);
    p.close << 10, 30, 11, 33, 9, 27, 12, 36;
    const MarketModel m = build_market_model(p);
    CHECK(m.corr(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("build_market_model: constant asset has no defined correlation") {
    PriceSeries p;
    p.symbols = {"FLAT", "B"};
    p.dates = {"2020-01-01", "2020-01-02", "2020-01-03"};
    p.close.resize(3, 2);
    p.close << 5, 30, 5, 33, 5, 27;
    CHECK_THROWS_WITH_AS(build_market_model(p), doctest::Contains("FLAT"), ModelError);
}

TEST_CASE("build_market_model: synthetic covariance is positive semi-definite") {
    const MarketModel m = build_market_model(synthesize_market(8, 1, 2));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.sigma);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
    for (int a = 0; a < 8; ++a) CHECK(m.corr(a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("build_portfolio_qubo: no risk aversion selects every positive-return asset") {
    const MarketModel m = build_market_model(synthesize_market(6, 3, 2));
    const QuboProblem q = build_portfolio_qubo(m, PortfolioConfig{0.0});
    for (int a = 0; a < 6; ++a) {
        CHECK(q.q(a, a) == doctest::Approx(-m.mu(a)).epsilon(1e-12));
        for (int b = 0; b < 6; ++b) {
            if (a != b) CHECK(q.q(a, b) == 0.0);
        }
    }
    const BinaryConfig best = brute_force_portfolio_argmin(m, 0.0);
    for (int a = 0; a < 6; ++a) CHECK(best[a] == (m.mu(a) > 0.0 ? 1 : 0));
}

TEST_CASE("build_portfolio_qubo: worked two-asset example") {
    MarketModel m;
    m.symbols = {"A", "B"};
    m.mu.resize(2);
    m.mu << 0.1, 0.2;
    m.sigma.resize(2, 2);
    m.sigma << 0.04, 0.02, 0.02, 0.09;
    m.corr = Eigen::MatrixXd::Identity(2, 2);
    const QuboProblem q = build_portfolio_qubo(m, PortfolioConfig{0.5});
    CHECK(qubo_energy(q, {1, 1}) == doctest::Approx(-0.215).epsilon(1e-12));
}

TEST_CASE("build_portfolio_qubo: agrees with the direct objective everywhere") {
    const MarketModel m = build_market_model(synthesize_market(6, 9, 3));
    const double gamma = 0.5;
    const QuboProblem q = build_portfolio_qubo(m, PortfolioConfig{gamma});
    for (std::uint64_t k = 0; k < 64; ++k) {
        const BinaryConfig w = bits_of(k, 6);
        CHECK(qubo_energy(q, w) ==
              doctest::Approx(direct_portfolio_energy(m, gamma, w)).epsilon(1e-12));
    }
}

TEST_CASE("portfolio_stats: singleton portfolio") {
    const MarketModel m = build_market_model(synthesize_market(4, 2, 2));
    BinaryConfig w(4, 0);
    w[2] = 1;
    const PortfolioStats s = portfolio_stats(m, w);
    CHECK(s.ret == doctest::Approx(m.mu(2)).epsilon(1e-12));
    CHECK(s.volatility == doctest::Approx(std::sqrt(m.sigma(2, 2))).epsilon(1e-12));
}

TEST_CASE("portfolio_stats: two uncorrelated assets halve the variance") {
    MarketModel m;
    m.symbols = {"A", "B"};
    m.mu.resize(2);
    m.mu << 0.01, 0.02;
    m.sigma = Eigen::MatrixXd::Identity(2, 2) * 0.09;
    m.corr = Eigen::MatrixXd::Identity(2, 2);
    const PortfolioStats s = portfolio_stats(m, {1, 1});
    CHECK(s.volatility == doctest::Approx(std::sqrt(0.045)).epsilon(1e-12));
}

TEST_CASE("portfolio_stats: matches an independent recomputation") {
    const MarketModel m = build_market_model(synthesize_market(8, 1, 2));
    const BinaryConfig best = brute_force_portfolio_argmin(m, 0.5);
    if (std::accumulate(best.begin(), best.end(), 0) > 0) {
        const PortfolioStats s = portfolio_stats(m, best);
        // Recompute with explicit weights through Eigen.
        const int k = std::accumulate(best.begin(), best.end(), 0);
        Eigen::VectorXd w = Eigen::VectorXd::Zero(8);
        for (int a = 0; a < 8; ++a) w(a) = best[a] ? 1.0 / k : 0.0;
        CHECK(s.ret == doctest::Approx(w.dot(m.mu)).epsilon(1e-12));
        CHECK(s.volatility ==
              doctest::Approx(std::sqrt(w.transpose() * m.sigma * w)).epsilon(1e-12));
        CHECK(s.volatility >= 0.0);
        CHECK(!std::isnan(s.volatility));
    }
    CHECK_THROWS_AS(portfolio_stats(m, BinaryConfig(8, 0)), StatsError);
}

TEST_CASE("market model json: round trip") {
    const MarketModel m = build_market_model(synthesize_market(5, 4, 2));
    const MarketModel m2 = market_model_from_json(market_model_to_json(m));
    CHECK(m.symbols == m2.symbols);
    CHECK((m.mu - m2.mu).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.sigma - m2.sigma).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.corr - m2.corr).cwiseAbs().maxCoeff() == 0.0);
}
