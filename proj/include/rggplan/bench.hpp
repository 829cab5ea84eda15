#ifndef RGGPLAN_BENCH_HPP
#define RGGPLAN_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "baselines.hpp"
#include "bitstar.hpp"
#include "core.hpp"
#include "planner.hpp"
#include "rng.hpp"
#include "sampling.hpp"

/// Benchmark harness: random-world generation, batched trial execution,
/// 1 ms time-series resampling, and median/CI aggregation.
namespace rggplan {

/// Recipe for a random benchmark world: a width-2 cube centred on the
/// start, the goal offset by +0.9 per axis, and axis-aligned box obstacles
/// accumulated until a Monte Carlo estimate of the obstructed fraction
/// would exceed the cap.
struct RandomWorldSpec {
    std::size_t dimension = 2;
    std::uint64_t seed = 0;
    double width = 2.0;
    double max_obstructed_fraction = 1.0 / 3.0;
    double min_obstacle_width = 0.1;
    double max_obstacle_width = 0.5;
    double goal_offset = 0.9;  // per-axis goal displacement from the start
    std::uint32_t mc_points = 100000;
    /// Optional hard cap on the obstacle count (0 = none). The fraction cap
    /// alone terminates generation, but can take very long above ~4-D where
    /// individual boxes obstruct a vanishing fraction of the cube.
    std::uint64_t max_obstacles = 0;
};

inline World gen_random_world(const RandomWorldSpec& spec) {
    if (spec.dimension == 0)
        throw ContractViolation("gen_random_world: dimension must be >= 1");
    if (!(spec.width > 0.0) || !(spec.min_obstacle_width > 0.0) ||
        !(spec.max_obstacle_width >= spec.min_obstacle_width) ||
        !(spec.max_obstacle_width <= spec.width))
        throw ContractViolation("gen_random_world: invalid width configuration");
    if (!(spec.max_obstructed_fraction >= 0.0) || !(spec.max_obstructed_fraction < 1.0))
        throw ContractViolation("gen_random_world: obstructed fraction must be in [0, 1)");
    if (spec.mc_points == 0)
        throw ContractViolation("gen_random_world: need at least one Monte Carlo point");
    if (!(std::abs(spec.goal_offset) < spec.width / 2.0))
        throw ContractViolation("gen_random_world: goal offset outside bounds");

    const std::size_t n = spec.dimension;
    const double half = spec.width / 2.0;
    Box bounds(StateVec(n, -half), StateVec(n, half));
    const StateVec start(n, 0.0);
    const StateVec goal(n, spec.goal_offset);

    RngStream master(spec.seed);
    RngStream point_rng = master.derive(1);
    RngStream obstacle_rng = master.derive(2);

    // Fixed evaluation points make the obstructed-fraction estimate
    // monotone under obstacle additions and cheap to update incrementally.
    std::vector<StateVec> points;
    points.reserve(spec.mc_points);
    for (std::uint32_t i = 0; i < spec.mc_points; ++i)
        points.push_back(sample_uniform(bounds, point_rng));
    std::vector<bool> covered(points.size(), false);
    std::size_t covered_count = 0;
    const double covered_cap =
        spec.max_obstructed_fraction * static_cast<double>(points.size());

    std::vector<Box> obstacles;
    for (;;) {
        if (spec.max_obstacles != 0 && obstacles.size() >= spec.max_obstacles)
            break;

        // Draw a candidate box; boxes touching the start or goal (closed
        // sets!) are redrawn rather than rejected.
        Box candidate;
        for (;;) {
            StateVec lo(n), hi(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double w =
                    obstacle_rng.uniform(spec.min_obstacle_width, spec.max_obstacle_width);
                lo[i] = obstacle_rng.uniform(bounds.lo[i], bounds.hi[i] - w);
                hi[i] = lo[i] + w;
            }
            candidate = Box(std::move(lo), std::move(hi));
            if (!candidate.contains(start) && !candidate.contains(goal))
                break;
        }

        std::vector<std::size_t> newly;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (!covered[i] && candidate.contains(points[i]))
                newly.push_back(i);

        if (static_cast<double>(covered_count + newly.size()) > covered_cap)
            break;  // this box would push the estimate over the cap: done

        for (std::size_t i : newly)
            covered[i] = true;
        covered_count += newly.size();
        obstacles.push_back(std::move(candidate));
    }

    return World(std::move(bounds), std::move(obstacles), start, goal);
}

// ---------------------------------------------------------------------------
// Planner registry
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& planner_names() {
    static const std::vector<std::string> names = {
        "bitstar", "rrt", "rrtconnect", "rrtstar", "informedrrtstar", "fmtstar"};
    return names;
}

inline bool is_planner_name(const std::string& name) {
    for (const std::string& known : planner_names())
        if (known == name)
            return true;
    return false;
}

/// A named planner plus the configuration it runs with; `bitstar` holds the
/// batch-planner knobs, `baseline` everything else.
struct PlannerSpec {
    std::string name;
    PlannerConfig bitstar;
    BaselineConfig baseline;
};

/// Runs one planner once; the seed and stop arguments override whatever
/// the PlannerSpec's embedded configs carry.
inline PlannerResult run_planner(const PlannerSpec& spec, const World& world, std::uint64_t seed,
                                 const StopCondition& stop, const SolutionSink& sink = nullptr) {
    if (spec.name == "bitstar") {
        PlannerConfig cfg = spec.bitstar;
        cfg.seed = seed;
        cfg.stop = stop;
        BitStarPlanner planner(world, cfg);
        return planner.plan(sink);
    }
    BaselineConfig cfg = spec.baseline;
    cfg.seed = seed;
    cfg.stop = stop;
    if (spec.name == "rrt")
        return rrt_plan(world, cfg, sink);
    if (spec.name == "rrtconnect")
        return rrt_connect_plan(world, cfg, sink);
    if (spec.name == "rrtstar")
        return rrtstar_plan(world, cfg, sink);
    if (spec.name == "informedrrtstar")
        return informed_rrtstar_plan(world, cfg, sink);
    if (spec.name == "fmtstar")
        return fmtstar_plan(world, cfg, sink);
    throw ContractViolation("run_planner: unknown planner \"" + spec.name + "\"");
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

struct TrialRecord {
    std::string planner;
    std::string world_id;
    std::uint64_t seed = 0;
    std::vector<CostEvent> events;
    bool success = false;
    std::int64_t wall_time_us = 0;
    std::string error;  // nonempty if the trial aborted with an exception
};

/// One record per (planner, world, seed), in that loop order. Each trial
/// owns its world copy and planner instance; with jobs > 1 trials execute
/// on a thread pool (they are independent and order-insensitive).
inline std::vector<TrialRecord> run_trials(const std::vector<PlannerSpec>& planners,
                                           const std::vector<std::pair<std::string, World>>& worlds,
                                           const std::vector<std::uint64_t>& seeds,
                                           const StopCondition& stop, unsigned jobs = 1) {
    if (planners.empty() || worlds.empty() || seeds.empty())
        throw ContractViolation("run_trials: planners, worlds, and seeds must be non-empty");
    for (const PlannerSpec& p : planners)
        if (!is_planner_name(p.name))
            throw ContractViolation("run_trials: unknown planner \"" + p.name + "\"");

    const std::size_t total = planners.size() * worlds.size() * seeds.size();
    std::vector<TrialRecord> records(total);

    auto run_one = [&](std::size_t index) {
        const std::size_t per_planner = worlds.size() * seeds.size();
        const PlannerSpec& planner = planners[index / per_planner];
        const auto& [world_id, world] = worlds[(index / seeds.size()) % worlds.size()];
        const std::uint64_t seed = seeds[index % seeds.size()];

        TrialRecord& record = records[index];
        record.planner = planner.name;
        record.world_id = world_id;
        record.seed = seed;
        const auto t0 = Clock::now();
        try {
            const World own_world = world;  // trial-local copy
            PlannerResult result = run_planner(planner, own_world, seed, stop);
            record.events = std::move(result.events);
            record.success = !record.events.empty();
        } catch (const std::exception& e) {
            record.events.clear();
            record.success = false;
            record.error = e.what();
        }
        record.wall_time_us =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < total; ++i)
            run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total)
                    return;
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        const unsigned count = std::min<std::size_t>(jobs, total);
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    return records;
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

/// Piecewise-constant last-observed-cost series on the grid
/// period, 2*period, ..., horizon (inclusive); +inf before the first event.
inline std::vector<double> resample_series(const std::vector<CostEvent>& events,
                                           std::int64_t period_us, std::int64_t horizon_us) {
    if (period_us <= 0 || horizon_us < 0)
        throw ContractViolation("resample_series: need period > 0 and horizon >= 0");
    for (std::size_t i = 1; i < events.size(); ++i)
        if (!(events[i].cost < events[i - 1].cost) ||
            events[i].elapsed_us < events[i - 1].elapsed_us)
            throw ContractViolation(
                "resample_series: events must be strictly decreasing in cost and ordered in time");

    const auto steps = static_cast<std::size_t>(horizon_us / period_us);
    std::vector<double> series(steps, kInf);
    std::size_t next_event = 0;
    double current = kInf;
    for (std::size_t k = 0; k < steps; ++k) {
        const std::int64_t t = static_cast<std::int64_t>(k + 1) * period_us;
        while (next_event < events.size() && events[next_event].elapsed_us <= t)
            current = events[next_event++].cost;
        series[k] = current;
    }
    return series;
}

/// 1-indexed inclusive order-statistic ranks (lo, hi) whose interval covers
/// the median with >= 95% probability under Binomial(n, 1/2): the largest k
/// with sum_{i=k}^{n-k-1} C(n,i)/2^n >= 0.95, giving (k, n-k); falls back to
/// the full range (1, n) when no k qualifies.
inline std::pair<std::size_t, std::size_t> median_ci_ranks(std::size_t n) {
    if (n == 0)
        throw ContractViolation("median_ci_ranks: n must be >= 1");
    // pmf[i] = C(n,i)/2^n, built iteratively in extended precision.
    std::vector<long double> pmf(n + 1);
    pmf[0] = std::pow(0.5L, static_cast<long double>(n));
    for (std::size_t i = 1; i <= n; ++i)
        pmf[i] = pmf[i - 1] * static_cast<long double>(n - i + 1) / static_cast<long double>(i);

    for (std::size_t k = n / 2; k >= 1; --k) {
        if (n < k + 1 + k)
            continue;  // empty interval k..n-k-1
        long double coverage = 0.0L;
        for (std::size_t i = k; i + k + 1 <= n; ++i)
            coverage += pmf[i];
        if (coverage >= 0.95L)
            return {k, n - k};
    }
    return {1, n};
}

enum class MedianRegime { kNone, kDashed, kSolid };

inline const char* regime_name(MedianRegime regime) {
    switch (regime) {
        case MedianRegime::kDashed:
            return "dashed";
        case MedianRegime::kSolid:
            return "solid";
        default:
            return "";
    }
}

/// Aggregated convergence statistics for one planner on a shared time grid.
/// Median and CI values are NaN wherever fewer than half the trials had
/// solutions (the regime is kNone there).
struct PlannerSeries {
    std::string planner;
    std::size_t trials = 0;
    std::vector<double> success_fraction;
    std::vector<double> median_cost;
    std::vector<double> ci_lo;
    std::vector<double> ci_hi;
    std::vector<MedianRegime> regime;
};

struct SeriesStats {
    std::int64_t period_us = 0;
    std::int64_t horizon_us = 0;
    std::vector<PlannerSeries> series;  // planners in first-appearance order

    std::size_t steps() const {
        return static_cast<std::size_t>(period_us > 0 ? horizon_us / period_us : 0);
    }
    std::int64_t time_at_us(std::size_t step) const {
        return static_cast<std::int64_t>(step + 1) * period_us;
    }
};

inline SeriesStats aggregate(const std::vector<TrialRecord>& records, std::int64_t period_us,
                             std::int64_t horizon_us) {
    SeriesStats stats;
    stats.period_us = period_us;
    stats.horizon_us = horizon_us;
    const std::size_t steps = stats.steps();

    std::vector<std::string> order;
    for (const TrialRecord& r : records) {
        bool known = false;
        for (const std::string& name : order)
            known = known || name == r.planner;
        if (!known)
            order.push_back(r.planner);
    }

    for (const std::string& name : order) {
        std::vector<std::vector<double>> sampled;
        for (const TrialRecord& r : records)
            if (r.planner == name)
                sampled.push_back(resample_series(r.events, period_us, horizon_us));
        if (sampled.size() < 2)
            throw ContractViolation("aggregate: need at least two records per planner");

        PlannerSeries series;
        series.planner = name;
        series.trials = sampled.size();
        series.success_fraction.resize(steps);
        series.median_cost.assign(steps, std::numeric_limits<double>::quiet_NaN());
        series.ci_lo.assign(steps, std::numeric_limits<double>::quiet_NaN());
        series.ci_hi.assign(steps, std::numeric_limits<double>::quiet_NaN());
        series.regime.assign(steps, MedianRegime::kNone);

        std::vector<double> solved;
        for (std::size_t k = 0; k < steps; ++k) {
            solved.clear();
            for (const auto& row : sampled)
                if (std::isfinite(row[k]))
                    solved.push_back(row[k]);
            std::sort(solved.begin(), solved.end());

            const double success =
                static_cast<double>(solved.size()) / static_cast<double>(sampled.size());
            series.success_fraction[k] = success;
            if (solved.empty() || success < 0.5)
                continue;

            const std::size_t m = solved.size();
            series.median_cost[k] =
                m % 2 == 1 ? solved[m / 2] : 0.5 * (solved[m / 2 - 1] + solved[m / 2]);
            const auto [lo, hi] = median_ci_ranks(m);
            series.ci_lo[k] = solved[lo - 1];
            series.ci_hi[k] = solved[hi - 1];
            series.regime[k] = success >= 1.0 ? MedianRegime::kSolid : MedianRegime::kDashed;
        }
        stats.series.push_back(std::move(series));
    }
    return stats;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double value, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

}  // namespace detail

/// One row per cost event: planner,world_id,seed,elapsed_us,cost.
inline void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "planner,world_id,seed,elapsed_us,cost\n";
    for (const TrialRecord& r : records)
        for (const CostEvent& e : r.events)
            out << r.planner << ',' << r.world_id << ',' << r.seed << ',' << e.elapsed_us << ','
                << detail::format_double(e.cost) << '\n';
}

inline void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_trials_csv(out, records);
}

/// One row per planner per time step:
/// planner,time_ms,success_fraction,median_cost,ci_lo,ci_hi,regime.
/// Median/CI/regime cells are empty where the median is undefined.
inline void write_aggregate_csv(std::ostream& out, const SeriesStats& stats) {
    out << "planner,time_ms,success_fraction,median_cost,ci_lo,ci_hi,regime\n";
    for (const PlannerSeries& s : stats.series) {
        for (std::size_t k = 0; k < stats.steps(); ++k) {
            const double time_ms = static_cast<double>(stats.time_at_us(k)) / 1000.0;
            out << s.planner << ',' << detail::format_double(time_ms) << ','
                << detail::format_double(s.success_fraction[k]);
            if (s.regime[k] == MedianRegime::kNone) {
                out << ",,,,";
            } else {
                out << ',' << detail::format_double(s.median_cost[k]) << ','
                    << detail::format_double(s.ci_lo[k]) << ','
                    << detail::format_double(s.ci_hi[k]) << ',' << regime_name(s.regime[k]);
            }
            out << '\n';
        }
    }
}

inline void write_aggregate_csv(const std::string& path, const SeriesStats& stats) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_aggregate_csv(out, stats);
}

/// One parsed aggregate-CSV row; median/CI fields are meaningful only when
/// has_median is set (empty cells in the file).
struct AggregateRow {
    std::string planner;
    double time_ms = 0.0;
    double success_fraction = 0.0;
    bool has_median = false;
    double median_cost = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::string regime;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type begin = 0;
    for (;;) {
        const auto comma = line.find(',', begin);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(begin));
            return fields;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
}

inline double parse_csv_double(const std::string& field, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != field.size() || field.empty())
        throw std::runtime_error(std::string("malformed CSV field for ") + what + ": \"" + field +
                                 "\"");
    return value;
}

}  // namespace detail

inline std::vector<AggregateRow> read_aggregate_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("aggregate CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "planner,time_ms,success_fraction,median_cost,ci_lo,ci_hi,regime")
        throw std::runtime_error("unrecognized aggregate CSV header: \"" + line + "\"");

    std::vector<AggregateRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != 7)
            throw std::runtime_error("aggregate CSV row has " + std::to_string(fields.size()) +
                                     " fields, expected 7: \"" + line + "\"");
        AggregateRow row;
        row.planner = fields[0];
        row.time_ms = detail::parse_csv_double(fields[1], "time_ms");
        row.success_fraction = detail::parse_csv_double(fields[2], "success_fraction");
        row.has_median = !fields[3].empty();
        if (row.has_median) {
            row.median_cost = detail::parse_csv_double(fields[3], "median_cost");
            row.ci_lo = detail::parse_csv_double(fields[4], "ci_lo");
            row.ci_hi = detail::parse_csv_double(fields[5], "ci_hi");
            row.regime = fields[6];
            if (row.regime != "dashed" && row.regime != "solid")
                throw std::runtime_error("unknown regime \"" + row.regime + "\"");
        } else if (!fields[4].empty() || !fields[5].empty() || !fields[6].empty()) {
            throw std::runtime_error("inconsistent empty median cells: \"" + line + "\"");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<AggregateRow> read_aggregate_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    return read_aggregate_csv(in);
}

}  // namespace rggplan

#endif  // RGGPLAN_BENCH_HPP
