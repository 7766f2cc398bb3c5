#include "portopt/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key " + key + ": expected an integer, got \"" + value + "\"");
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key " + key + ": expected a number, got \"" + value + "\"");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not key=value: \"" + line + "\"");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        }
        entries[key] = value;
    }
    return entries;
}

void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "gamma") {
            cfg.gamma = parse_real(key, value);
        } else if (key == "alpha") {
            cfg.alpha = parse_real(key, value);
        } else if (key == "ng") {
            cfg.n_g = static_cast<int>(parse_int(key, value));
        } else if (key == "ns") {
            cfg.n_s = static_cast<int>(parse_int(key, value));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "method") {
            cfg.method = value;
        } else if (key == "solver") {
            cfg.solver.kind = solver_kind_from_name(value);
        } else if (key == "sa.sweeps") {
            cfg.solver.sa.sweeps = static_cast<int>(parse_int(key, value));
        } else if (key == "sa.beta_initial") {
            cfg.solver.sa.beta_initial = parse_real(key, value);
        } else if (key == "sa.beta_final") {
            cfg.solver.sa.beta_final = parse_real(key, value);
        } else if (key == "sa.restarts") {
            cfg.solver.sa.restarts = static_cast<int>(parse_int(key, value));
        } else if (key == "tabu.max_iter") {
            cfg.solver.tabu_max_iter = static_cast<int>(parse_int(key, value));
        } else if (key == "tabu.tenure") {
            cfg.solver.tabu_tenure = static_cast<int>(parse_int(key, value));
        } else if (key == "vqe.layers") {
            cfg.vqe.layers = static_cast<int>(parse_int(key, value));
        } else if (key == "vqe.budget") {
            cfg.vqe.budget = static_cast<int>(parse_int(key, value));
        } else if (key == "vqe.shots") {
            if (value == "exact") {
                cfg.vqe.shots.shots.reset();
            } else {
                cfg.vqe.shots.shots = static_cast<int>(parse_int(key, value));
            }
        } else if (key == "vqe.seed") {
            cfg.vqe.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "sizes" || key == "methods" || key == "seeds") {
            // benchmark-grid keys, consumed by parse_benchmark_spec
        } else {
            throw ConfigError("unknown config key \"" + key + "\"");
        }
    }
}

BenchmarkSpec parse_benchmark_spec(const std::string& path) {
    const auto entries = parse_key_value_file(path);
    if (entries.empty()) throw ConfigError("benchmark spec file is empty: " + path);

    RunConfig base;
    apply_config_entries(base, entries);

    BenchmarkSpec spec;
    spec.gamma = base.gamma;
    spec.alpha = base.alpha;
    spec.n_s = base.n_s;
    spec.solver = base.solver;
    spec.recombiner = base.vqe;

    const auto sizes_it = entries.find("sizes");
    if (sizes_it == entries.end()) throw ConfigError("benchmark spec needs a sizes= entry");
    for (const auto& token : split(sizes_it->second, ',')) {
        const auto colon = token.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("sizes entries must be N:Ng, got \"" + token + "\"");
        }
        const int n = static_cast<int>(parse_int("sizes", trim(token.substr(0, colon))));
        const int ng = static_cast<int>(parse_int("sizes", trim(token.substr(colon + 1))));
        spec.sizes.emplace_back(n, ng);
    }

    const auto methods_it = entries.find("methods");
    if (methods_it == entries.end()) throw ConfigError("benchmark spec needs a methods= entry");
    spec.methods = split(methods_it->second, ',');

    const auto seeds_it = entries.find("seeds");
    if (seeds_it == entries.end()) throw ConfigError("benchmark spec needs a seeds= entry");
    for (const auto& token : split(seeds_it->second, ',')) {
        spec.seeds.push_back(static_cast<std::uint64_t>(parse_int("seeds", token)));
    }
    return spec;
}

std::string config_echo_string(const RunConfig& cfg) {
    char buf[512];
    std::string shots = cfg.vqe.shots.exact() ? "exact" : std::to_string(*cfg.vqe.shots.shots);
    std::string vqe_seed = cfg.vqe.seed ? std::to_string(*cfg.vqe.seed) : "auto";
    std::snprintf(buf, sizeof buf,
                  "method=%s gamma=%.6g alpha=%.6g ng=%d ns=%d seed=%llu solver=%s "
                  "sa.sweeps=%d sa.beta_initial=%.6g sa.beta_final=%.6g sa.restarts=%d "
                  "tabu.max_iter=%d tabu.tenure=%d vqe.layers=%d vqe.budget=%d vqe.shots=%s "
                  "vqe.seed=%s",
                  cfg.method.empty() ? "-" : cfg.method.c_str(), cfg.gamma, cfg.alpha, cfg.n_g,
                  cfg.n_s, static_cast<unsigned long long>(cfg.seed),
                  solver_kind_name(cfg.solver.kind).c_str(), cfg.solver.sa.sweeps,
                  cfg.solver.sa.beta_initial, cfg.solver.sa.beta_final, cfg.solver.sa.restarts,
                  cfg.solver.tabu_max_iter, cfg.solver.tabu_tenure, cfg.vqe.layers,
                  cfg.vqe.budget, shots.c_str(), vqe_seed.c_str());
    return buf;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j{{"method", cfg.method},
                     {"gamma", cfg.gamma},
                     {"alpha", cfg.alpha},
                     {"ng", cfg.n_g},
                     {"ns", cfg.n_s},
                     {"seed", cfg.seed},
                     {"solver", solver_kind_name(cfg.solver.kind)},
                     {"sa.sweeps", cfg.solver.sa.sweeps},
                     {"sa.beta_initial", cfg.solver.sa.beta_initial},
                     {"sa.beta_final", cfg.solver.sa.beta_final},
                     {"sa.restarts", cfg.solver.sa.restarts},
                     {"tabu.max_iter", cfg.solver.tabu_max_iter},
                     {"tabu.tenure", cfg.solver.tabu_tenure},
                     {"vqe.layers", cfg.vqe.layers},
                     {"vqe.budget", cfg.vqe.budget}};
    if (cfg.vqe.shots.exact()) {
        j["vqe.shots"] = "exact";
    } else {
        j["vqe.shots"] = *cfg.vqe.shots.shots;
    }
    if (cfg.vqe.seed) j["vqe.seed"] = *cfg.vqe.seed;
    return j;
}

}  // namespace portopt
