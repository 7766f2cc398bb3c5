#include "portopt/market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "portopt/errors.hpp"
#include "portopt/rng.hpp"

namespace portopt {

namespace {

constexpr int kTradingDays = 1260;  // ~5 years

bool parse_iso_date(const std::string& s, int& y, int& m, int& d) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    y = std::stoi(s.substr(0, 4));
    m = std::stoi(s.substr(5, 2));
    d = std::stoi(s.substr(8, 2));
    return m >= 1 && m <= 12 && d >= 1 && d <= 31;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void validate_series(const PriceSeries& p) {
    if (p.num_dates() < 2) throw IngestError("price series needs at least 2 dates");
    for (int t = 1; t < p.num_dates(); ++t) {
        if (!(p.dates[t - 1] < p.dates[t])) {
            throw IngestError("dates not strictly increasing at row " + std::to_string(t + 1) +
                              " (" + p.dates[t] + ")");
        }
    }
    for (int t = 0; t < p.num_dates(); ++t) {
        for (int a = 0; a < p.num_assets(); ++a) {
            if (!(p.close(t, a) > 0.0)) {
                throw IngestError("non-positive price at row " + std::to_string(t + 2) +
                                  ", column " + p.symbols[a]);
            }
        }
    }
}

}  // namespace

PriceSeries load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open price file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty price file: " + path);
    auto header = split_csv_line(trim(line));
    if (header.size() < 2 || trim(header[0]) != "date") {
        throw IngestError("header must be \"date,SYM1,SYM2,...\" in " + path);
    }

    PriceSeries p;
    for (std::size_t i = 1; i < header.size(); ++i) {
        auto sym = trim(header[i]);
        if (sym.empty()) throw IngestError("empty symbol name in header column " + std::to_string(i + 1));
        p.symbols.push_back(sym);
    }

    const int n = p.num_assets();
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != n + 1) {
            throw IngestError("row " + std::to_string(lineno) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(n + 1));
        }
        int y, m, d;
        auto date = trim(cells[0]);
        if (!parse_iso_date(date, y, m, d)) {
            throw IngestError("unparseable date \"" + date + "\" at row " + std::to_string(lineno));
        }
        p.dates.push_back(date);
        std::vector<double> row(n);
        for (int a = 0; a < n; ++a) {
            auto cell = trim(cells[a + 1]);
            if (cell.empty()) {
                if (rows.empty()) {
                    throw IngestError("missing price with no prior value at row " +
                                      std::to_string(lineno) + ", column " + p.symbols[a]);
                }
                row[a] = rows.back()[a];  // forward fill
                continue;
            }
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != cell.size()) {
                throw IngestError("unparseable price \"" + cell + "\" at row " +
                                  std::to_string(lineno) + ", column " + p.symbols[a]);
            }
            row[a] = v;
        }
        rows.push_back(std::move(row));
    }

    p.close.resize(static_cast<int>(rows.size()), n);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (int a = 0; a < n; ++a) p.close(static_cast<int>(t), a) = rows[t][a];
    }
    validate_series(p);
    return p;
}

void write_prices_csv(const PriceSeries& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write price file: " + path);
    out << "date";
    for (const auto& s : p.symbols) out << ',' << s;
    out << '\n';
    char buf[64];
    for (int t = 0; t < p.num_dates(); ++t) {
        out << p.dates[t];
        for (int a = 0; a < p.num_assets(); ++a) {
            std::snprintf(buf, sizeof buf, "%.8f", p.close(t, a));
            out << ',' << buf;
        }
        out << '\n';
    }
}

PriceSeries synthesize_market(int n, std::uint64_t seed, int clusters) {
    if (n < 2) throw ConfigError("synthetic market needs n >= 2 assets");
    if (clusters < 1) throw ConfigError("synthetic market needs clusters >= 1");
    clusters = std::min(clusters, n);

    auto rng = make_rng(derive_seed(seed, 0x5eed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Factor loadings chosen so intra-cluster correlation of innovations is
    // 0.60 and cross-cluster correlation 0.05.
    const double market_load = std::sqrt(0.05);
    const double cluster_load = std::sqrt(0.55);
    const double idio_load = std::sqrt(0.40);

    PriceSeries p;
    p.symbols.reserve(n);
    std::vector<double> drift(n), vol(n), price(n);
    std::vector<int> cluster_of(n);
    for (int a = 0; a < n; ++a) {
        char name[16];
        std::snprintf(name, sizeof name, "SYN%02d", a);
        p.symbols.emplace_back(name);
        cluster_of[a] = static_cast<int>(static_cast<long long>(a) * clusters / n);
        drift[a] = -2e-4 + 1.2e-3 * u01(rng);
        vol[a] = 0.005 + 0.025 * u01(rng);
        price[a] = 10.0 + 490.0 * u01(rng);
    }

    // Weekday calendar starting 2018-01-01 (a Monday).
    int y = 2018, mo = 1, d = 1, weekday = 0;
    auto days_in_month = [](int yy, int mm) {
        static const int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (mm == 2 && (yy % 4 == 0 && (yy % 100 != 0 || yy % 400 == 0))) return 29;
        return len[mm - 1];
    };
    auto advance_day = [&] {
        weekday = (weekday + 1) % 7;
        if (++d > days_in_month(y, mo)) {
            d = 1;
            if (++mo > 12) { mo = 1; ++y; }
        }
    };

    p.close.resize(kTradingDays, n);
    std::vector<double> cluster_shock(clusters);
    char datebuf[16];
    for (int t = 0; t < kTradingDays; ++t) {
        while (weekday >= 5) advance_day();
        std::snprintf(datebuf, sizeof datebuf, "%04d-%02d-%02d", y, mo, d);
        p.dates.emplace_back(datebuf);
        advance_day();

        const double market_shock = gauss(rng);
        for (int c = 0; c < clusters; ++c) cluster_shock[c] = gauss(rng);
        for (int a = 0; a < n; ++a) {
            const double z = market_load * market_shock +
                             cluster_load * cluster_shock[cluster_of[a]] +
                             idio_load * gauss(rng);
            price[a] *= std::exp(drift[a] + vol[a] * z);
            p.close(t, a) = price[a];
        }
    }
    return p;
}

MarketModel build_market_model(const PriceSeries& p) {
    validate_series(p);
    const int n = p.num_assets();
    const int t = p.num_dates() - 1;  // number of return observations
    if (t < 2) throw ModelError("need at least 3 dates to estimate a covariance");

    Eigen::MatrixXd returns(t, n);
    for (int r = 0; r < t; ++r) {
        for (int a = 0; a < n; ++a) {
            returns(r, a) = p.close(r + 1, a) / p.close(r, a) - 1.0;
        }
    }

    MarketModel m;
    m.symbols = p.symbols;
    m.mu = returns.colwise().mean();
    Eigen::MatrixXd centered = returns.rowwise() - m.mu.transpose();
    m.sigma = (centered.transpose() * centered) / static_cast<double>(t - 1);

    m.corr = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        if (!(m.sigma(a, a) > 0.0)) {
            throw ModelError("asset " + p.symbols[a] + " has zero return variance");
        }
    }
    for (int a = 0; a < n; ++a) {
        m.corr(a, a) = 1.0;
        for (int b = a + 1; b < n; ++b) {
            const double c = m.sigma(a, b) / std::sqrt(m.sigma(a, a) * m.sigma(b, b));
            m.corr(a, b) = m.corr(b, a) = std::clamp(c, -1.0, 1.0);
        }
    }
    return m;
}

MarketModel MarketModel::head(int count) const {
    if (count < 1 || count > num_assets()) {
        throw ConfigError("sub-model size " + std::to_string(count) + " out of range");
    }
    MarketModel m;
    m.symbols.assign(symbols.begin(), symbols.begin() + count);
    m.mu = mu.head(count);
    m.sigma = sigma.topLeftCorner(count, count);
    m.corr = corr.topLeftCorner(count, count);
    return m;
}

QuboProblem build_portfolio_qubo(const MarketModel& m, const PortfolioConfig& c) {
    if (c.gamma < 0.0) throw ConfigError("risk aversion gamma must be >= 0");
    const int n = m.num_assets();
    Eigen::MatrixXd q = c.gamma * m.sigma;
    for (int a = 0; a < n; ++a) q(a, a) = -m.mu(a) + c.gamma * m.sigma(a, a);
    return make_qubo_symmetrized(q, 0.0);
}

PortfolioStats portfolio_stats(const MarketModel& m, const BinaryConfig& selection) {
    const int n = m.num_assets();
    if (static_cast<int>(selection.size()) != n) {
        throw DimensionError("selection length does not match asset count");
    }
    int k = 0;
    for (int s : selection) k += (s != 0);
    if (k == 0) throw StatsError("portfolio statistics undefined for an empty selection");

    const double w = 1.0 / k;
    double ret = 0.0, var = 0.0;
    for (int a = 0; a < n; ++a) {
        if (!selection[a]) continue;
        ret += w * m.mu(a);
        for (int b = 0; b < n; ++b) {
            if (selection[b]) var += w * w * m.sigma(a, b);
        }
    }
    return PortfolioStats{ret, std::sqrt(std::max(0.0, var))};
}

nlohmann::json market_model_to_json(const MarketModel& m) {
    const int n = m.num_assets();
    nlohmann::json mu = nlohmann::json::array();
    for (int a = 0; a < n; ++a) mu.push_back(m.mu(a));
    auto matrix = [n](const Eigen::MatrixXd& x) {
        nlohmann::json rows = nlohmann::json::array();
        for (int a = 0; a < n; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (int b = 0; b < n; ++b) row.push_back(x(a, b));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    return {{"symbols", m.symbols},
            {"mu", std::move(mu)},
            {"sigma", matrix(m.sigma)},
            {"corr", matrix(m.corr)}};
}

MarketModel market_model_from_json(const nlohmann::json& j) {
    MarketModel m;
    m.symbols = j.at("symbols").get<std::vector<std::string>>();
    const int n = m.num_assets();
    if (n < 1) throw ModelError("market model JSON has no symbols");
    m.mu.resize(n);
    const auto& mu = j.at("mu");
    if (static_cast<int>(mu.size()) != n) throw ModelError("mu length mismatch in model JSON");
    for (int a = 0; a < n; ++a) m.mu(a) = mu[a].get<double>();
    auto matrix = [n](const nlohmann::json& rows, const char* name) {
        if (static_cast<int>(rows.size()) != n) {
            throw ModelError(std::string(name) + " row count mismatch in model JSON");
        }
        Eigen::MatrixXd x(n, n);
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(rows[a].size()) != n) {
                throw ModelError(std::string(name) + " column count mismatch in model JSON");
            }
            for (int b = 0; b < n; ++b) x(a, b) = rows[a][b].get<double>();
        }
        return x;
    };
    m.sigma = matrix(j.at("sigma"), "sigma");
    m.corr = matrix(j.at("corr"), "corr");
    return m;
}

}  // namespace portopt
