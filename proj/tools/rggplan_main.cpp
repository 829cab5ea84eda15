// rggplan command-line tool: world generation, single seeded plans,
// benchmark sweeps, and SVG plots regenerated from benchmark CSVs.
//
// Exit codes: 0 success, 1 usage/configuration error, 2 runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rggplan/bench.hpp"
#include "rggplan/bitstar.hpp"
#include "rggplan/core.hpp"
#include "rggplan/rng.hpp"
#include "rggplan/svg.hpp"
#include "rggplan/world_io.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

constexpr const char* kSuccessSvgName = "success_vs_time.svg";
constexpr const char* kCostSvgName = "median_cost_vs_time.svg";
constexpr const char* kSuccessTitle = "solved trials over time";
constexpr const char* kCostTitle = "median solution cost over time";

/// Bad flag/config values discovered after argument parsing.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string known_planners() {
    std::string out;
    for (const std::string& name : rggplan::planner_names())
        out += (out.empty() ? "" : ", ") + name;
    return out;
}

void require_planner(const std::string& name) {
    if (!rggplan::is_planner_name(name))
        throw UsageError("unknown planner \"" + name + "\" (valid: " + known_planners() + ")");
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    return j;
}

void write_json_file(const fs::path& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::string world_id_from_path(const std::string& path) {
    return fs::path(path).stem().string();
}

/// Resolves a config-relative path against the config file's directory.
std::string resolve_against(const fs::path& base_dir, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty())
        return p.string();
    return (base_dir / p).string();
}

// --------------------------------------------------------------------------
// Planner tuning shared by plan/bench configs
// --------------------------------------------------------------------------

template <typename T>
void maybe_get(const ordered_json& cfg, const char* key, T& out) {
    if (!cfg.contains(key))
        return;
    try {
        out = cfg.at(key).get<T>();
    } catch (const std::exception&) {
        throw UsageError(std::string("config key \"") + key + "\" has the wrong type");
    }
}

rggplan::PlannerSpec make_planner_spec(const std::string& name, const ordered_json& tuning) {
    require_planner(name);
    rggplan::PlannerSpec spec;
    spec.name = name;
    maybe_get(tuning, "samples_per_batch", spec.bitstar.samples_per_batch);
    maybe_get(tuning, "eta", spec.bitstar.eta);
    maybe_get(tuning, "prune_threshold_fraction", spec.bitstar.prune_threshold_fraction);
    maybe_get(tuning, "goal_bias", spec.baseline.goal_bias);
    maybe_get(tuning, "max_edge_length", spec.baseline.max_edge_length);
    maybe_get(tuning, "fmt_samples", spec.baseline.fmt_samples);
    spec.baseline.eta = spec.bitstar.eta;
    if (tuning.contains("collision_step")) {
        double step = 0.0;
        maybe_get(tuning, "collision_step", step);
        spec.bitstar.collision_step = step;
        spec.baseline.collision_step = step;
    }
    return spec;
}

ordered_json planner_manifest(const rggplan::PlannerSpec& spec, std::size_t dimension) {
    ordered_json j;
    j["name"] = spec.name;
    if (spec.name == "bitstar") {
        j["samples_per_batch"] = spec.bitstar.samples_per_batch;
        j["eta"] = spec.bitstar.eta;
        j["prune_threshold_fraction"] = spec.bitstar.prune_threshold_fraction;
        if (spec.bitstar.collision_step)
            j["collision_step"] = *spec.bitstar.collision_step;
    } else {
        j["goal_bias"] = spec.baseline.goal_bias;
        j["max_edge_length"] = spec.baseline.max_edge_length > 0.0
                                   ? spec.baseline.max_edge_length
                                   : rggplan::default_max_edge_length(dimension);
        j["eta"] = spec.baseline.eta;
        if (spec.name == "fmtstar")
            j["fmt_samples"] = spec.baseline.fmt_samples;
        if (spec.baseline.collision_step)
            j["collision_step"] = *spec.baseline.collision_step;
    }
    return j;
}

// --------------------------------------------------------------------------
// worldgen
// --------------------------------------------------------------------------

struct WorldgenArgs {
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    std::uint32_t count = 1;
    std::string out = ".";
    std::uint64_t max_obstacles = 0;
};

int cmd_worldgen(const WorldgenArgs& args) {
    fs::create_directories(args.out);
    for (std::uint32_t i = 0; i < args.count; ++i) {
        rggplan::RandomWorldSpec spec;
        spec.dimension = args.dim;
        spec.seed = args.seed + i;
        spec.max_obstacles = args.max_obstacles;
        const rggplan::World world = rggplan::gen_random_world(spec);
        const fs::path path = fs::path(args.out) / ("world_n" + std::to_string(args.dim) + "_s" +
                                                    std::to_string(spec.seed) + ".json");
        rggplan::save_world(world, path.string());
        std::cout << path.string() << '\n';
    }
    return kExitOk;
}

// --------------------------------------------------------------------------
// plan
// --------------------------------------------------------------------------

struct PlanArgs {
    std::string config;
    std::string world;
    std::string planner = "bitstar";
    std::uint64_t seed = 0;
    std::int64_t budget_ms = 1000;
    std::string out = ".";
    bool svg = false;
    // Which flags were given explicitly (flags override the config file).
    bool seed_set = false, budget_set = false, out_set = false, planner_set = false,
         world_set = false, svg_set = false;
};

int cmd_plan(PlanArgs args) {
    ordered_json tuning = ordered_json::object();
    if (!args.config.empty()) {
        const ordered_json cfg = load_json_file(args.config);
        const fs::path base = fs::path(args.config).parent_path();
        tuning = cfg;
        if (!args.planner_set)
            maybe_get(cfg, "planner", args.planner);
        if (!args.world_set) {
            std::string world_path;
            maybe_get(cfg, "world", world_path);
            if (!world_path.empty())
                args.world = resolve_against(base, world_path);
        }
        if (!args.seed_set)
            maybe_get(cfg, "seed", args.seed);
        if (!args.budget_set)
            maybe_get(cfg, "budget_ms", args.budget_ms);
        if (!args.out_set)
            maybe_get(cfg, "out", args.out);
        if (!args.svg_set)
            maybe_get(cfg, "svg", args.svg);
    }
    if (args.world.empty())
        throw UsageError("plan: no world file given (use --world or the config file)");
    if (args.budget_ms < 0)
        throw UsageError("plan: budget must be >= 0 ms");
    require_planner(args.planner);

    rggplan::World world = [&] {
        try {
            return rggplan::load_world(args.world);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }();
    if (args.svg && world.dimension() != 2)
        throw UsageError("plan: --svg requires a 2-D world");

    rggplan::PlannerSpec spec = make_planner_spec(args.planner, tuning);
    spec.bitstar.capture_tree = args.svg;
    spec.baseline.capture_tree = args.svg;

    fs::create_directories(args.out);
    const fs::path out_dir(args.out);
    const std::string world_id = world_id_from_path(args.world);

    ordered_json manifest;
    manifest["command"] = "plan";
    manifest["config"] = args.config.empty() ? ordered_json() : ordered_json(args.config);
    manifest["planner"] = planner_manifest(spec, world.dimension());
    manifest["world"] = args.world;
    manifest["world_id"] = world_id;
    manifest["seed"] = args.seed;
    manifest["budget_ms"] = args.budget_ms;
    manifest["out"] = args.out;
    write_json_file(out_dir / "manifest.json", manifest);

    const rggplan::StopCondition stop = rggplan::StopCondition::budget_ms(args.budget_ms);
    const rggplan::PlannerResult result = rggplan::run_planner(spec, world, args.seed, stop);

    rggplan::TrialRecord record;
    record.planner = spec.name;
    record.world_id = world_id;
    record.seed = args.seed;
    record.events = result.events;
    record.success = result.solved();
    rggplan::write_trials_csv((out_dir / "events.csv").string(), {record});

    ordered_json solution;
    solution["solved"] = result.solved();
    if (result.path) {
        solution["cost"] = result.path->cost;
        ordered_json waypoints = ordered_json::array();
        for (const rggplan::StateVec& x : result.path->waypoints)
            waypoints.push_back(x);
        solution["waypoints"] = std::move(waypoints);
    } else {
        solution["cost"] = ordered_json();
        solution["waypoints"] = ordered_json::array();
    }
    write_json_file(out_dir / "solution.json", solution);

    if (args.svg)
        rggplan::svg::save((out_dir / "plan.svg").string(),
                           rggplan::svg::render_world(world, result.tree_edges, result.path));

    if (result.solved()) {
        manifest["result"] = {{"solved", true}, {"cost", result.path->cost}};
        std::cout << "solved: cost " << result.path->cost << " after " << result.events.size()
                  << " improvement(s)\n";
    } else {
        manifest["result"] = {{"solved", false}, {"note", "no solution"}};
        std::cout << "no solution within budget\n";
    }
    write_json_file(out_dir / "manifest.json", manifest);
    return kExitOk;
}

// --------------------------------------------------------------------------
// bench
// --------------------------------------------------------------------------

struct BenchArgs {
    std::string config;
    std::uint64_t seed = 0;
    std::int64_t budget_ms = 1000;
    std::string out = "bench_out";
    unsigned jobs = 1;
    bool seed_set = false, budget_set = false, out_set = false, jobs_set = false;
};

int cmd_bench(const BenchArgs& args) {
    if (args.config.empty())
        throw UsageError("bench: --config is required");
    const ordered_json cfg = load_json_file(args.config);
    const fs::path base = fs::path(args.config).parent_path();

    std::uint64_t master_seed = args.seed;
    if (!args.seed_set)
        maybe_get(cfg, "seed", master_seed);
    std::int64_t budget_ms = args.budget_ms;
    if (!args.budget_set)
        maybe_get(cfg, "budget_ms", budget_ms);
    std::string out = args.out;
    if (!args.out_set)
        maybe_get(cfg, "out", out);
    unsigned jobs = args.jobs;
    if (!args.jobs_set)
        maybe_get(cfg, "jobs", jobs);
    std::int64_t period_ms = 1;
    maybe_get(cfg, "period_ms", period_ms);
    if (budget_ms <= 0 || period_ms <= 0 || jobs == 0)
        throw UsageError("bench: budget_ms, period_ms, and jobs must be positive");

    std::vector<std::string> planner_names_cfg;
    maybe_get(cfg, "planners", planner_names_cfg);
    if (planner_names_cfg.empty())
        throw UsageError("bench: config must list at least one planner");
    std::vector<rggplan::PlannerSpec> planners;
    for (const std::string& name : planner_names_cfg)
        planners.push_back(make_planner_spec(name, cfg));

    fs::create_directories(out);
    const fs::path out_dir(out);

    // Worlds: explicit files, plus optionally generated random ones (saved
    // next to the other outputs so the manifest alone reproduces the run).
    std::vector<std::string> world_paths;
    std::vector<std::string> listed;
    maybe_get(cfg, "worlds", listed);
    for (const std::string& p : listed)
        world_paths.push_back(resolve_against(base, p));
    if (cfg.contains("random_worlds")) {
        const ordered_json& rw = cfg.at("random_worlds");
        rggplan::RandomWorldSpec spec;
        maybe_get(rw, "dimension", spec.dimension);
        maybe_get(rw, "max_obstacles", spec.max_obstacles);
        std::uint64_t first_seed = master_seed;
        maybe_get(rw, "seed", first_seed);
        std::uint32_t count = 1;
        maybe_get(rw, "count", count);
        fs::create_directories(out_dir / "worlds");
        for (std::uint32_t i = 0; i < count; ++i) {
            spec.seed = first_seed + i;
            const rggplan::World world = rggplan::gen_random_world(spec);
            const fs::path path =
                out_dir / "worlds" /
                ("world_n" + std::to_string(spec.dimension) + "_s" + std::to_string(spec.seed) +
                 ".json");
            rggplan::save_world(world, path.string());
            world_paths.push_back(path.string());
        }
    }
    if (world_paths.empty())
        throw UsageError("bench: config must provide worlds or random_worlds");

    std::vector<std::pair<std::string, rggplan::World>> worlds;
    for (const std::string& path : world_paths) {
        try {
            worlds.emplace_back(world_id_from_path(path), rggplan::load_world(path));
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }

    std::vector<std::uint64_t> seeds;
    maybe_get(cfg, "seeds", seeds);
    if (seeds.empty()) {
        std::uint32_t seed_count = 0;
        maybe_get(cfg, "seed_count", seed_count);
        if (seed_count == 0)
            throw UsageError("bench: config must provide seeds or a positive seed_count");
        rggplan::RngStream master(master_seed);
        for (std::uint32_t i = 0; i < seed_count; ++i)
            seeds.push_back(master.derive(i).next_u64());
    }

    ordered_json manifest;
    manifest["command"] = "bench";
    manifest["config"] = args.config;
    manifest["master_seed"] = master_seed;
    ordered_json planner_list = ordered_json::array();
    for (const rggplan::PlannerSpec& spec : planners)
        planner_list.push_back(planner_manifest(spec, worlds.front().second.dimension()));
    manifest["planners"] = std::move(planner_list);
    manifest["worlds"] = world_paths;
    manifest["seeds"] = seeds;
    manifest["budget_ms"] = budget_ms;
    manifest["period_ms"] = period_ms;
    manifest["jobs"] = jobs;
    manifest["out"] = out;
    write_json_file(out_dir / "manifest.json", manifest);

    const rggplan::StopCondition stop = rggplan::StopCondition::budget_ms(budget_ms);
    const std::vector<rggplan::TrialRecord> records =
        rggplan::run_trials(planners, worlds, seeds, stop, jobs);

    rggplan::write_trials_csv((out_dir / "trials.csv").string(), records);
    const rggplan::SeriesStats stats =
        rggplan::aggregate(records, period_ms * 1000, budget_ms * 1000);
    rggplan::write_aggregate_csv((out_dir / "aggregate.csv").string(), stats);

    const std::vector<rggplan::AggregateRow> rows =
        rggplan::read_aggregate_csv((out_dir / "aggregate.csv").string());
    rggplan::svg::save((out_dir / kSuccessSvgName),
                       rggplan::svg::render_benchmark(rows, kSuccessTitle,
                                                      rggplan::svg::ChartKind::kSuccess));
    rggplan::svg::save((out_dir / kCostSvgName),
                       rggplan::svg::render_benchmark(rows, kCostTitle,
                                                      rggplan::svg::ChartKind::kCost));

    std::size_t solved = 0, failed = 0;
    for (const rggplan::TrialRecord& r : records) {
        solved += r.success ? 1 : 0;
        if (!r.error.empty()) {
            ++failed;
            std::cerr << "trial error (" << r.planner << ", " << r.world_id << ", seed " << r.seed
                      << "): " << r.error << '\n';
        }
    }
    std::cout << records.size() << " trials, " << solved << " solved, " << failed
              << " aborted; outputs in " << out << '\n';
    if (solved == 0) {
        std::cerr << "bench: no trial found a solution\n";
        return kExitRuntime;
    }
    return kExitOk;
}

// --------------------------------------------------------------------------
// plot
// --------------------------------------------------------------------------

struct PlotArgs {
    std::string input;
    std::string out = ".";
};

int cmd_plot(const PlotArgs& args) {
    std::vector<rggplan::AggregateRow> rows;
    try {
        rows = rggplan::read_aggregate_csv(args.input);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (rows.empty())
        throw UsageError("plot: no data rows in " + args.input);
    fs::create_directories(args.out);
    const fs::path out_dir(args.out);
    rggplan::svg::save((out_dir / kSuccessSvgName),
                       rggplan::svg::render_benchmark(rows, kSuccessTitle,
                                                      rggplan::svg::ChartKind::kSuccess));
    rggplan::svg::save((out_dir / kCostSvgName),
                       rggplan::svg::render_benchmark(rows, kCostTitle,
                                                      rggplan::svg::ChartKind::kCost));
    std::cout << (out_dir / kSuccessSvgName).string() << '\n'
              << (out_dir / kCostSvgName).string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rggplan: sampling-based anytime optimal motion planning"};
    app.require_subcommand(1);

    WorldgenArgs wg;
    CLI::App* worldgen = app.add_subcommand("worldgen", "generate random benchmark worlds");
    worldgen->add_option("--dim", wg.dim, "state-space dimension");
    worldgen->add_option("--seed", wg.seed, "seed of the first world");
    worldgen->add_option("--count", wg.count, "number of worlds (consecutive seeds)")
        ->check(CLI::PositiveNumber);
    worldgen->add_option("--out", wg.out, "output directory");
    worldgen->add_option("--max-obstacles", wg.max_obstacles,
                         "optional obstacle-count cap (0 = none)");

    PlanArgs pl;
    CLI::App* plan = app.add_subcommand("plan", "run one seeded planning trial");
    auto* pl_world = plan->add_option("--world", pl.world, "world JSON file");
    auto* pl_planner =
        plan->add_option("--planner", pl.planner, "planner name (" + known_planners() + ")");
    auto* pl_seed = plan->add_option("--seed", pl.seed, "trial seed");
    auto* pl_budget = plan->add_option("--budget-ms", pl.budget_ms, "time budget in ms");
    auto* pl_out = plan->add_option("--out", pl.out, "output directory");
    auto* pl_svg = plan->add_flag("--svg", pl.svg, "also render the 2-D scene");
    plan->add_option("--config", pl.config, "JSON config file (flags win)");

    BenchArgs be;
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark sweep from a config file");
    bench->add_option("--config", be.config, "JSON config file (flags win)");
    auto* be_seed = bench->add_option("--seed", be.seed, "master seed");
    auto* be_budget = bench->add_option("--budget-ms", be.budget_ms, "per-trial budget in ms");
    auto* be_out = bench->add_option("--out", be.out, "output directory");
    auto* be_jobs = bench->add_option("--jobs", be.jobs, "parallel trial workers");

    PlotArgs po;
    CLI::App* plot = app.add_subcommand("plot", "re-render charts from an aggregate CSV");
    plot->add_option("csv", po.input, "aggregate CSV file")->required();
    plot->add_option("--out", po.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    pl.world_set = pl_world->count() > 0;
    pl.planner_set = pl_planner->count() > 0;
    pl.seed_set = pl_seed->count() > 0;
    pl.budget_set = pl_budget->count() > 0;
    pl.out_set = pl_out->count() > 0;
    pl.svg_set = pl_svg->count() > 0;
    be.seed_set = be_seed->count() > 0;
    be.budget_set = be_budget->count() > 0;
    be.out_set = be_out->count() > 0;
    be.jobs_set = be_jobs->count() > 0;

    try {
        if (worldgen->parsed())
            return cmd_worldgen(wg);
        if (plan->parsed())
            return cmd_plan(pl);
        if (bench->parsed())
            return cmd_bench(be);
        if (plot->parsed())
            return cmd_plot(po);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const rggplan::ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const rggplan::WorldIoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
