// Contract tests for the command-line tool: each case shells out to the
// built binary (path injected via RGGPLAN_CLI_PATH) and inspects exit codes
// and output files.
#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rggplan/bench.hpp"
#include "rggplan/core.hpp"
#include "rggplan/world_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rggplan;

namespace {

std::string cli_path() {
    return RGGPLAN_CLI_PATH;
}

int run_cli(const std::string& args, const std::string& capture = "") {
    const std::string sink = capture.empty() ? "/dev/null" : capture;
    const std::string cmd = cli_path() + " " + args + " >" + sink + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rggplan_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> data_rows(const fs::path& csv) {
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string line;
    std::vector<std::string> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (!line.empty())
            rows.push_back(line);
    }
    return rows;
}

fs::path save_empty_world(const fs::path& dir) {
    const World world(Box({-1.0, -1.0}, {1.0, 1.0}), {}, {0.0, 0.0}, {0.9, 0.9});
    const fs::path path = dir / "empty.json";
    save_world(world, path.string());
    return path;
}

fs::path save_sealed_world(const fs::path& dir) {
    const World world(Box({-1.0, -1.0}, {1.0, 1.0}),
                      {Box({0.7, 0.7}, {1.0, 0.8}), Box({0.7, 0.8}, {0.8, 1.0})}, {0.0, 0.0},
                      {0.9, 0.9});
    const fs::path path = dir / "sealed.json";
    save_world(world, path.string());
    return path;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

}  // namespace

TEST_CASE("worldgen writes loadable reproducible worlds") {
    const fs::path a = fresh_dir("worldgen_a");
    const fs::path b = fresh_dir("worldgen_b");

    REQUIRE(run_cli("worldgen --dim 2 --seed 1 --count 2 --out " + a.string()) == 0);
    REQUIRE(fs::exists(a / "world_n2_s1.json"));
    REQUIRE(fs::exists(a / "world_n2_s2.json"));

    const World world = load_world((a / "world_n2_s1.json").string());
    CHECK(world.dimension() == 2);
    CHECK(world.start() == StateVec{0.0, 0.0});
    CHECK(world.goal() == StateVec{0.9, 0.9});
    CHECK_FALSE(world.obstacles().empty());

    REQUIRE(run_cli("worldgen --dim 2 --seed 1 --count 2 --out " + b.string()) == 0);
    CHECK(read_file(a / "world_n2_s1.json") == read_file(b / "world_n2_s1.json"));
    CHECK(read_file(a / "world_n2_s2.json") == read_file(b / "world_n2_s2.json"));

    CHECK(run_cli("worldgen --dim 0 --out " + a.string()) == 1);
    CHECK(run_cli("worldgen --count 0 --out " + a.string()) == 1);
}

TEST_CASE("plan solves an open world and logs every improvement") {
    const fs::path dir = fresh_dir("plan_open");
    const fs::path world = save_empty_world(dir);
    const fs::path out = dir / "run";

    REQUIRE(run_cli("plan --world " + world.string() +
                    " --planner bitstar --seed 3 --budget-ms 300 --svg --out " + out.string()) ==
            0);

    const auto rows = data_rows(out / "events.csv");
    REQUIRE_FALSE(rows.empty());
    for (const std::string& row : rows)
        CHECK(row.rfind("bitstar,empty,3,", 0) == 0);

    const json solution = json::parse(read_file(out / "solution.json"));
    REQUIRE(solution.at("solved").get<bool>());
    CHECK(solution.at("cost").get<double>() > 0.0);
    CHECK(solution.at("waypoints").size() >= 2);

    const json manifest = json::parse(read_file(out / "manifest.json"));
    CHECK(manifest.at("result").at("solved").get<bool>());
    CHECK(manifest.at("planner").at("name").get<std::string>() == "bitstar");
    CHECK(manifest.at("seed").get<std::uint64_t>() == 3);

    const std::string svg = read_file(out / "plan.svg");
    CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("plan with a one-shot planner emits at most one event") {
    const fs::path dir = fresh_dir("plan_oneshot");
    const fs::path world = save_empty_world(dir);
    const fs::path out = dir / "run";

    REQUIRE(run_cli("plan --world " + world.string() +
                    " --planner rrtconnect --seed 1 --budget-ms 500 --out " + out.string()) == 0);
    CHECK(data_rows(out / "events.csv").size() <= 1);
}

TEST_CASE("plan notes a sealed goal without failing") {
    const fs::path dir = fresh_dir("plan_sealed");
    const fs::path world = save_sealed_world(dir);
    const fs::path out = dir / "run";

    REQUIRE(run_cli("plan --world " + world.string() +
                    " --planner bitstar --seed 1 --budget-ms 100 --out " + out.string()) == 0);
    CHECK(data_rows(out / "events.csv").empty());

    const json solution = json::parse(read_file(out / "solution.json"));
    CHECK_FALSE(solution.at("solved").get<bool>());
    CHECK(solution.at("waypoints").empty());

    const json manifest = json::parse(read_file(out / "manifest.json"));
    CHECK_FALSE(manifest.at("result").at("solved").get<bool>());
    CHECK(manifest.at("result").at("note").get<std::string>() == "no solution");
}

TEST_CASE("plan rejects bad invocations with usage errors") {
    const fs::path dir = fresh_dir("plan_errors");
    const fs::path world = save_empty_world(dir);
    const fs::path log = dir / "stderr.txt";

    CHECK(run_cli("plan --world " + world.string() + " --planner astar", log.string()) == 1);
    const std::string message = read_file(log);
    for (const std::string& name : planner_names())
        CHECK(message.find(name) != std::string::npos);

    CHECK(run_cli("plan --world " + (dir / "missing.json").string()) == 1);
    CHECK(run_cli("plan --world " + world.string() + " --budget-ms -5") == 1);
    CHECK(run_cli("plan") == 1);

    const World cube(Box({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}), {}, {0.0, 0.0, 0.0},
                     {0.9, 0.9, 0.9});
    const fs::path cube_path = dir / "cube.json";
    save_world(cube, cube_path.string());
    CHECK(run_cli("plan --world " + cube_path.string() + " --svg") == 1);
}

TEST_CASE("bench aggregates every planner at every time step") {
    const fs::path dir = fresh_dir("bench_run");
    save_empty_world(dir);
    write_text(dir / "bench.json", R"({
      "planners": ["rrtconnect", "fmtstar"],
      "worlds": ["empty.json"],
      "seeds": [1, 2, 3, 4, 5],
      "budget_ms": 100,
      "period_ms": 10
    })");
    const fs::path out = dir / "out";

    REQUIRE(run_cli("bench --config " + (dir / "bench.json").string() + " --out " + out.string()) ==
            0);
    REQUIRE(fs::exists(out / "trials.csv"));
    REQUIRE(fs::exists(out / "manifest.json"));

    const auto rows = read_aggregate_csv((out / "aggregate.csv").string());
    const std::size_t steps = 10;
    REQUIRE(rows.size() == 2 * steps);
    for (const char* name : {"rrtconnect", "fmtstar"}) {
        std::vector<double> times;
        for (const AggregateRow& row : rows)
            if (row.planner == name)
                times.push_back(row.time_ms);
        REQUIRE(times.size() == steps);
        for (std::size_t k = 0; k < steps; ++k)
            CHECK(times[k] == 10.0 * static_cast<double>(k + 1));
    }

    for (const char* svg_name : {"success_vs_time.svg", "median_cost_vs_time.svg"}) {
        const std::string svg = read_file(out / svg_name);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("rrtconnect") != std::string::npos);
        CHECK(svg.find("fmtstar") != std::string::npos);
    }
}

TEST_CASE("bench can generate its own worlds") {
    const fs::path dir = fresh_dir("bench_random");
    write_text(dir / "bench.json", R"({
      "planners": ["rrtconnect"],
      "random_worlds": {"dimension": 2, "count": 1, "seed": 5},
      "seeds": [1, 2],
      "budget_ms": 100,
      "period_ms": 20
    })");
    const fs::path out = dir / "out";

    REQUIRE(run_cli("bench --config " + (dir / "bench.json").string() + " --out " + out.string()) ==
            0);
    const fs::path generated = out / "worlds" / "world_n2_s5.json";
    REQUIRE(fs::exists(generated));
    CHECK(load_world(generated.string()).dimension() == 2);
    CHECK_FALSE(read_aggregate_csv((out / "aggregate.csv").string()).empty());
}

TEST_CASE("plots regenerate byte-identically from the aggregate CSV") {
    const fs::path dir = fresh_dir("plot_run");
    save_empty_world(dir);
    write_text(dir / "bench.json", R"({
      "planners": ["rrtconnect", "fmtstar"],
      "worlds": ["empty.json"],
      "seeds": [1, 2, 3],
      "budget_ms": 50,
      "period_ms": 10
    })");
    const fs::path out = dir / "out";
    REQUIRE(run_cli("bench --config " + (dir / "bench.json").string() + " --out " + out.string()) ==
            0);

    const fs::path replot_a = dir / "replot_a";
    const fs::path replot_b = dir / "replot_b";
    REQUIRE(run_cli("plot " + (out / "aggregate.csv").string() + " --out " + replot_a.string()) ==
            0);
    REQUIRE(run_cli("plot " + (out / "aggregate.csv").string() + " --out " + replot_b.string()) ==
            0);
    for (const char* name : {"success_vs_time.svg", "median_cost_vs_time.svg"}) {
        CHECK(read_file(replot_a / name) == read_file(out / name));
        CHECK(read_file(replot_a / name) == read_file(replot_b / name));
    }
}

TEST_CASE("bench rejects unusable configurations") {
    const fs::path dir = fresh_dir("bench_errors");
    save_empty_world(dir);

    write_text(dir / "no_planners.json",
               R"({"planners": [], "worlds": ["empty.json"], "seeds": [1, 2]})");
    CHECK(run_cli("bench --config " + (dir / "no_planners.json").string()) == 1);

    write_text(dir / "no_worlds.json", R"({"planners": ["rrt"], "seeds": [1, 2]})");
    CHECK(run_cli("bench --config " + (dir / "no_worlds.json").string()) == 1);

    write_text(dir / "no_seeds.json", R"({"planners": ["rrt"], "worlds": ["empty.json"]})");
    CHECK(run_cli("bench --config " + (dir / "no_seeds.json").string()) == 1);

    CHECK(run_cli("bench") == 1);
    CHECK(run_cli("bench --config " + (dir / "missing.json").string()) == 1);
}

TEST_CASE("plot validates its input") {
    const fs::path dir = fresh_dir("plot_errors");
    CHECK(run_cli("plot " + (dir / "missing.csv").string()) == 1);

    write_text(dir / "header_only.csv",
               "planner,time_ms,success_fraction,median_cost,ci_lo,ci_hi,regime\n");
    CHECK(run_cli("plot " + (dir / "header_only.csv").string()) == 1);

    write_text(dir / "garbage.csv", "not,a,real,header\n");
    CHECK(run_cli("plot " + (dir / "garbage.csv").string()) == 1);
}

TEST_CASE("top-level usage") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("frobnicate") == 1);
}
