#include <doctest.h>

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "helpers.hpp"

using namespace testutil;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PORTOPT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli: exit codes distinguish config, data and success") {
    TempDir dir;
    const auto prices = dir.file("prices.csv");
    const auto model = dir.file("model.json");

    // no such input file -> data error
    CHECK(run_cli("ingest --prices " + dir.file("nope.csv") + " --out " + model) == 2);

    // bad CSV cell -> data error naming the cell (exit code checked here)
    write_file(prices, "date,AAA\n2020-01-01,-3.0\n2020-01-02,4.0\n");
    CHECK(run_cli("ingest --prices " + prices + " --out " + model) == 2);

    CHECK(run_cli("synth --n 8 --clusters 2 --seed 1 --out " + prices) == 0);
    CHECK(run_cli("ingest --prices " + prices + " --out " + model) == 0);

    // alpha outside [0,1] -> config error
    CHECK(run_cli("graph --market " + model + " --alpha 1.5 --out " + dir.file("g.txt")) == 1);
    CHECK(run_cli("graph --market " + model + " --alpha 0.25 --out " + dir.file("g.txt")) == 0);

    // infeasible random sampling is rejected before any solve
    CHECK(run_cli("solve --market " + model + " --method lssa-random --ng 4 --ns 1 --out " +
                  dir.file("r.json")) == 1);

    // unknown method -> config error
    CHECK(run_cli("solve --market " + model + " --method lssa-annealer --out " +
                  dir.file("r.json")) == 1);

    CHECK(run_cli("solve --market " + model +
                  " --method lssa-mis --solver exact --seed 1 --out " + dir.file("r.json")) == 0);
}

TEST_CASE("cli: graph extremes match the documented densities") {
    TempDir dir;
    const auto prices = dir.file("prices.csv");
    const auto model = dir.file("model.json");
    REQUIRE(run_cli("synth --n 8 --clusters 4 --seed 2 --out " + prices) == 0);
    REQUIRE(run_cli("ingest --prices " + prices + " --out " + model) == 0);

    const auto g0 = dir.file("g0.txt");
    const auto g1 = dir.file("g1.txt");
    const auto gm = dir.file("gm.txt");
    REQUIRE(run_cli("graph --market " + model + " --alpha 0.0 --out " + g0) == 0);
    REQUIRE(run_cli("graph --market " + model + " --alpha 1.0 --out " + g1) == 0);
    REQUIRE(run_cli("graph --market " + model + " --alpha 0.25 --out " + gm) == 0);

    auto edge_lines = [](const std::string& text) {
        int lines = 0;
        for (char c : text) lines += (c == '\n');
        return lines - 1;  // header
    };
    const int complete = edge_lines(read_file(g0));
    const int empty = edge_lines(read_file(g1));
    const int mid = edge_lines(read_file(gm));
    CHECK(complete == 8 * 7 / 2);
    CHECK(empty == 0);
    CHECK(mid > empty);
    CHECK(mid < complete);
}

TEST_CASE("cli: config file values are overridden by flags") {
    TempDir dir;
    const auto prices = dir.file("prices.csv");
    const auto model = dir.file("model.json");
    const auto conf = dir.file("run.conf");
    REQUIRE(run_cli("synth --n 8 --clusters 2 --seed 3 --out " + prices) == 0);
    REQUIRE(run_cli("ingest --prices " + prices + " --out " + model) == 0);

    write_file(conf, "method = lssa-mis\nsolver = exact\nseed = 5\nalpha = 0.3\n");
    const auto out = dir.file("report.json");
    REQUIRE(run_cli("solve --market " + model + " --config " + conf + " --seed 9 --out " + out) ==
            0);
    const auto j = nlohmann::json::parse(read_file(out));
    CHECK(j["seed"] == 9);                    // flag wins
    CHECK(j["config"]["alpha"] == 0.3);       // file value kept
    CHECK(j["config"]["method"] == "lssa-mis");
}

TEST_CASE("cli: PORTOPT_SEED provides the default seed") {
    TempDir dir;
    const auto prices = dir.file("prices.csv");
    const auto model = dir.file("model.json");
    REQUIRE(run_cli("synth --n 8 --clusters 2 --seed 3 --out " + prices) == 0);
    REQUIRE(run_cli("ingest --prices " + prices + " --out " + model) == 0);

    const auto out = dir.file("report.json");
    const std::string cmd = "PORTOPT_SEED=21 " + std::string(PORTOPT_CLI_PATH) +
                            " solve --market " + model +
                            " --method lssa-mis --solver exact --out " + out + " >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    const auto j = nlohmann::json::parse(read_file(out));
    CHECK(j["seed"] == 21);
}
