#ifndef RGGPLAN_SVG_HPP
#define RGGPLAN_SVG_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bench.hpp"
#include "core.hpp"

/// Deterministic SVG rendering: planar world scenes and benchmark charts.
/// Output depends only on the inputs (fixed formatting, fixed palette, no
/// timestamps), so regenerating from the same data is byte-identical.
namespace rggplan::svg {

namespace detail {

inline std::string fmt(double value, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> colors = {
        "#0072b2", "#d55e00", "#009e73", "#cc79a7", "#e69f00", "#56b4e9", "#555555"};
    return colors;
}

struct LinearScale {
    double domain_lo = 0.0, domain_hi = 1.0;
    double range_lo = 0.0, range_hi = 1.0;
    double operator()(double v) const {
        const double span = domain_hi - domain_lo;
        const double t = span == 0.0 ? 0.5 : (v - domain_lo) / span;
        return range_lo + t * (range_hi - range_lo);
    }
};

struct LogScale {
    double domain_lo = 1.0, domain_hi = 10.0;  // must be positive
    double range_lo = 0.0, range_hi = 1.0;
    double operator()(double v) const {
        const double span = std::log10(domain_hi) - std::log10(domain_lo);
        const double t = span == 0.0 ? 0.5 : (std::log10(v) - std::log10(domain_lo)) / span;
        return range_lo + t * (range_hi - range_lo);
    }
};

inline std::string time_label(double ms) {
    if (ms >= 1000.0)
        return fmt(ms / 1000.0, "%g") + " s";
    return fmt(ms, "%g") + " ms";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Planar world scene
// ---------------------------------------------------------------------------

/// Renders a 2-D world: bounds, obstacles, optional tree edges, optional
/// solution path, and the start/goal markers.
inline std::string render_world(const World& world,
                                const std::vector<std::pair<StateVec, StateVec>>& tree_edges = {},
                                const std::optional<Path>& path = std::nullopt) {
    if (world.dimension() != 2)
        throw ContractViolation("render_world: only 2-D worlds can be drawn");

    const Box& b = world.bounds();
    const double margin = 0.04 * b.max_extent();
    const double x0 = b.lo[0] - margin, y0 = b.lo[1] - margin;
    const double w = (b.hi[0] - b.lo[0]) + 2 * margin;
    const double h = (b.hi[1] - b.lo[1]) + 2 * margin;
    // SVG y grows downward; flip world y about the bounds midline.
    const auto X = [&](double x) { return x; };
    const auto Y = [&](double y) { return b.lo[1] + b.hi[1] - y; };
    const auto F = [&](double v) { return detail::fmt(v, "%.5g"); };

    const double thin = 0.002 * b.max_extent();
    const double thick = 4 * thin;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" +
           F(x0) + " " + F(y0) + " " + F(w) + " " + F(h) + "\">\n";
    out += "<rect x=\"" + F(x0) + "\" y=\"" + F(y0) + "\" width=\"" + F(w) + "\" height=\"" + F(h) +
           "\" fill=\"#ffffff\"/>\n";
    out += "<rect x=\"" + F(b.lo[0]) + "\" y=\"" + F(Y(b.hi[1])) + "\" width=\"" +
           F(b.hi[0] - b.lo[0]) + "\" height=\"" + F(b.hi[1] - b.lo[1]) +
           "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"" + F(thin) + "\"/>\n";

    for (const Box& obstacle : world.obstacles())
        out += "<rect x=\"" + F(obstacle.lo[0]) + "\" y=\"" + F(Y(obstacle.hi[1])) + "\" width=\"" +
               F(obstacle.hi[0] - obstacle.lo[0]) + "\" height=\"" +
               F(obstacle.hi[1] - obstacle.lo[1]) + "\" fill=\"#9aa2ab\"/>\n";

    if (!tree_edges.empty()) {
        out += "<g stroke=\"#0072b2\" stroke-width=\"" + F(thin) + "\" opacity=\"0.6\">\n";
        for (const auto& [from, to] : tree_edges)
            out += "<line x1=\"" + F(X(from[0])) + "\" y1=\"" + F(Y(from[1])) + "\" x2=\"" +
                   F(X(to[0])) + "\" y2=\"" + F(Y(to[1])) + "\"/>\n";
        out += "</g>\n";
    }

    if (path && path->waypoints.size() >= 2) {
        out += "<polyline fill=\"none\" stroke=\"#d55e00\" stroke-width=\"" + F(thick) +
               "\" points=\"";
        for (std::size_t i = 0; i < path->waypoints.size(); ++i) {
            if (i)
                out += ' ';
            out += F(X(path->waypoints[i][0])) + "," + F(Y(path->waypoints[i][1]));
        }
        out += "\"/>\n";
    }

    const double dot = 3 * thin;
    out += "<circle cx=\"" + F(X(world.start()[0])) + "\" cy=\"" + F(Y(world.start()[1])) +
           "\" r=\"" + F(dot) + "\" fill=\"#009e73\"/>\n";
    out += "<circle cx=\"" + F(X(world.goal()[0])) + "\" cy=\"" + F(Y(world.goal()[1])) +
           "\" r=\"" + F(dot) + "\" fill=\"#d55e00\"/>\n";
    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------------------
// Benchmark charts
// ---------------------------------------------------------------------------

enum class ChartKind { kSuccess, kCost, kBoth };

namespace detail {

struct PlannerRows {
    std::string planner;
    std::vector<const AggregateRow*> rows;  // in file order (ascending time)
};

inline std::vector<PlannerRows> group_rows(const std::vector<AggregateRow>& rows) {
    std::vector<PlannerRows> groups;
    for (const AggregateRow& row : rows) {
        PlannerRows* group = nullptr;
        for (PlannerRows& g : groups)
            if (g.planner == row.planner)
                group = &g;
        if (!group) {
            groups.push_back({row.planner, {}});
            group = &groups.back();
        }
        group->rows.push_back(&row);
    }
    return groups;
}

inline std::string polyline(const std::vector<std::pair<double, double>>& pts,
                            const std::string& color, double width, bool dashed) {
    std::string out =
        "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt(width) + "\"";
    if (dashed)
        out += " stroke-dasharray=\"6 4\"";
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out += ' ';
        out += fmt(pts[i].first) + "," + fmt(pts[i].second);
    }
    out += "\"/>\n";
    return out;
}

}  // namespace detail

/// Convergence chart over a logarithmic time axis, built purely from
/// aggregate rows. The success panel shows the solved fraction; the cost
/// panel shows the median solution cost with its 95% CI as a translucent
/// band, dashed while some trials are unsolved and solid once all are.
inline std::string render_benchmark(const std::vector<AggregateRow>& rows, const std::string& title,
                                    ChartKind kind = ChartKind::kBoth) {
    if (rows.empty())
        throw ContractViolation("render_benchmark: no rows");
    double t_lo = kInf, t_hi = 0.0;
    double c_lo = kInf, c_hi = -kInf;
    for (const AggregateRow& row : rows) {
        if (!(row.time_ms > 0.0))
            throw ContractViolation("render_benchmark: time values must be positive");
        t_lo = std::min(t_lo, row.time_ms);
        t_hi = std::max(t_hi, row.time_ms);
        if (row.has_median) {
            c_lo = std::min(c_lo, row.ci_lo);
            c_hi = std::max(c_hi, row.ci_hi);
        }
    }
    if (c_hi < c_lo) {  // no medians anywhere: give the cost scale a span
        c_lo = 0.0;
        c_hi = 1.0;
    } else if (c_hi == c_lo) {
        c_lo -= 0.5;
        c_hi += 0.5;
    } else {
        const double pad = 0.06 * (c_hi - c_lo);
        c_lo -= pad;
        c_hi += pad;
    }

    const bool with_success = kind != ChartKind::kCost;
    const bool with_cost = kind != ChartKind::kSuccess;
    const double width = 860;
    const double plot_x0 = 80, plot_x1 = 830;
    double succ_y0 = 60, succ_y1 = 0, cost_y0 = 0, cost_y1 = 0, height = 0;
    if (kind == ChartKind::kBoth) {
        succ_y1 = 280;
        cost_y0 = 350;
        cost_y1 = 620;
        height = 660;
    } else if (kind == ChartKind::kSuccess) {
        succ_y1 = 560;
        height = 620;
    } else {
        cost_y0 = 60;
        cost_y1 = 560;
        height = 620;
    }
    detail::LogScale tx{t_lo, t_hi, plot_x0, plot_x1};
    detail::LinearScale sy{0.0, 1.0, succ_y1, succ_y0};
    detail::LinearScale cy{c_lo, c_hi, cost_y1, cost_y0};

    const std::vector<detail::PlannerRows> groups = detail::group_rows(rows);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width, "%g") +
           "\" height=\"" + detail::fmt(height, "%g") +
           "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"13\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + detail::fmt(width / 2) +
           "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">" + title + "</text>\n";

    auto draw_frame = [&](double y0, double y1, const detail::LinearScale& scale, int y_ticks,
                          const char* y_label, bool y_percent) {
        out += "<rect x=\"" + detail::fmt(plot_x0) + "\" y=\"" + detail::fmt(y0) + "\" width=\"" +
               detail::fmt(plot_x1 - plot_x0) + "\" height=\"" + detail::fmt(y1 - y0) +
               "\" fill=\"none\" stroke=\"#333333\"/>\n";
        for (int i = 0; i <= y_ticks; ++i) {
            const double v =
                scale.domain_lo + (scale.domain_hi - scale.domain_lo) * i / double(y_ticks);
            const double y = scale(v);
            out += "<line x1=\"" + detail::fmt(plot_x0 - 4) + "\" y1=\"" + detail::fmt(y) +
                   "\" x2=\"" + detail::fmt(plot_x1) + "\" y2=\"" + detail::fmt(y) +
                   "\" stroke=\"#dddddd\"/>\n";
            out += "<text x=\"" + detail::fmt(plot_x0 - 8) + "\" y=\"" + detail::fmt(y + 4) +
                   "\" text-anchor=\"end\">" +
                   (y_percent ? detail::fmt(100.0 * v, "%g") + "%" : detail::fmt(v, "%.4g")) +
                   "</text>\n";
        }
        for (double decade = std::pow(10.0, std::floor(std::log10(t_lo)));
             decade <= t_hi * (1 + 1e-12); decade *= 10.0) {
            if (decade < t_lo * (1 - 1e-12))
                continue;
            const double x = tx(decade);
            out += "<line x1=\"" + detail::fmt(x) + "\" y1=\"" + detail::fmt(y0) + "\" x2=\"" +
                   detail::fmt(x) + "\" y2=\"" + detail::fmt(y1 + 4) +
                   "\" stroke=\"#dddddd\"/>\n";
            out += "<text x=\"" + detail::fmt(x) + "\" y=\"" + detail::fmt(y1 + 18) +
                   "\" text-anchor=\"middle\">" + detail::time_label(decade) + "</text>\n";
        }
        out += "<text x=\"24\" y=\"" + detail::fmt((y0 + y1) / 2) +
               "\" transform=\"rotate(-90 24 " + detail::fmt((y0 + y1) / 2) +
               ")\" text-anchor=\"middle\">" + std::string(y_label) + "</text>\n";
    };
    if (with_success)
        draw_frame(succ_y0, succ_y1, sy, 4, "solved trials", true);
    if (with_cost)
        draw_frame(cost_y0, cost_y1, cy, 4, "median solution cost (95% CI)", false);

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const std::string& color = detail::palette()[gi % detail::palette().size()];
        const auto& per_planner = groups[gi].rows;

        if (with_success) {
            std::vector<std::pair<double, double>> pts;
            for (const AggregateRow* row : per_planner)
                pts.emplace_back(tx(row->time_ms), sy(row->success_fraction));
            out += detail::polyline(pts, color, 1.6, false);
        }
        if (!with_cost)
            continue;

        // CI band over every contiguous run where the median is defined.
        std::size_t i = 0;
        while (i < per_planner.size()) {
            if (!per_planner[i]->has_median) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < per_planner.size() && per_planner[j + 1]->has_median)
                ++j;
            std::string band = "<polygon fill=\"" + color + "\" opacity=\"0.18\" points=\"";
            for (std::size_t k = i; k <= j; ++k)
                band += detail::fmt(tx(per_planner[k]->time_ms)) + "," +
                        detail::fmt(cy(per_planner[k]->ci_hi)) + " ";
            for (std::size_t k = j + 1; k-- > i;)
                band += detail::fmt(tx(per_planner[k]->time_ms)) + "," +
                        detail::fmt(cy(per_planner[k]->ci_lo)) + (k > i ? " " : "");
            band += "\"/>\n";
            out += band;

            // Median line, split into dashed/solid regime runs. Adjacent runs
            // share their boundary sample so the line stays connected.
            std::size_t r = i;
            while (r <= j) {
                const std::string regime = per_planner[r]->regime;
                std::size_t s = r;
                while (s + 1 <= j && per_planner[s + 1]->regime == regime)
                    ++s;
                std::vector<std::pair<double, double>> seg;
                if (r > i)
                    seg.emplace_back(tx(per_planner[r - 1]->time_ms),
                                     cy(per_planner[r - 1]->median_cost));
                for (std::size_t k = r; k <= s; ++k)
                    seg.emplace_back(tx(per_planner[k]->time_ms),
                                     cy(per_planner[k]->median_cost));
                out += detail::polyline(seg, color, 2.0, regime == "dashed");
                r = s + 1;
            }
            i = j + 1;
        }
    }

    // Legend in the top-right corner of the upper panel.
    double legend_y = (with_success ? succ_y0 : cost_y0) + 16;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const std::string& color = detail::palette()[gi % detail::palette().size()];
        out += "<line x1=\"" + detail::fmt(plot_x1 - 150) + "\" y1=\"" + detail::fmt(legend_y - 4) +
               "\" x2=\"" + detail::fmt(plot_x1 - 122) + "\" y2=\"" + detail::fmt(legend_y - 4) +
               "\" stroke=\"" + color + "\" stroke-width=\"2.5\"/>\n";
        out += "<text x=\"" + detail::fmt(plot_x1 - 114) + "\" y=\"" + detail::fmt(legend_y) +
               "\">" + groups[gi].planner + "</text>\n";
        legend_y += 18;
    }

    out += "</svg>\n";
    return out;
}

inline void save(const std::string& path, const std::string& svg_text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << svg_text;
}

}  // namespace rggplan::svg

#endif  // RGGPLAN_SVG_HPP
