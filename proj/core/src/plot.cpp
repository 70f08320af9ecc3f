#include "normsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "normsim/config_file.hpp"
#include "normsim/csv.hpp"
#include "normsim/random.hpp"

namespace normsim {

namespace {

constexpr double kPanelWidth = 440.0;
constexpr double kPanelHeight = 290.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 38.0;
constexpr std::size_t kMaxPoints = 600;

struct TraitColors {
    const char* run;
    const char* mean;
};
constexpr TraitColors kTraitColors[3] = {{"#1f77b4", "#08306b"}, {"#ff7f0e", "#7f2704"}, {"#2ca02c", "#00441b"}};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

std::size_t column_index(std::string_view name) {
    const auto cols = metric_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].name == name) return i;
    }
    throw std::logic_error("unknown column");
}

// Series of one column (or the sum of two) for a single run.
PlotSeries run_series(const RunResult& run, std::size_t col, std::optional<std::size_t> plus, const char* color) {
    const auto cols = metric_columns();
    PlotSeries s;
    s.color = color;
    s.opacity = 0.3;
    s.width = 0.8;
    for (const auto& m : run.rounds) {
        auto v = cols[col].get(m);
        if (v && plus) {
            const auto w = cols[*plus].get(m);
            v = w ? std::optional<double>(*v + *w) : std::nullopt;
        }
        if (v) {
            s.x.push_back(m.round);
            s.y.push_back(*v);
        }
    }
    return s;
}

PlotSeries mean_series(const BatchResult& batch, std::size_t col, std::optional<std::size_t> plus, const char* color) {
    PlotSeries s;
    s.color = color;
    s.width = 2.2;
    for (const auto& row : batch.mean) {
        auto v = row.values[col];
        if (v && plus) {
            v = row.values[*plus] ? std::optional<double>(*v + *row.values[*plus]) : std::nullopt;
        }
        if (v) {
            s.x.push_back(row.round);
            s.y.push_back(*v);
        }
    }
    return s;
}

PlotPanel trait_panel(const BatchResult& batch, std::string title, std::string_view prefix, bool noise) {
    PlotPanel p;
    p.title = std::move(title);
    const char* names[3] = {"B", "T", "S"};
    for (int t = 0; t < 3; ++t) {
        const std::string col = std::string(prefix) + names[t] + (noise ? "N" : "");
        const auto idx = column_index(col);
        for (const auto& run : batch.runs) p.series.push_back(run_series(run, idx, std::nullopt, kTraitColors[t].run));
    }
    for (int t = 0; t < 3; ++t) {
        const std::string label = std::string(names[t]) + (noise ? "N" : "");
        const auto idx = column_index(std::string(prefix) + label);
        p.series.push_back(mean_series(batch, idx, std::nullopt, kTraitColors[t].mean));
        p.legend.emplace_back(label, kTraitColors[t].mean);
    }
    return p;
}

PlotPanel single_panel(const BatchResult& batch, std::string title, std::string_view col,
                       std::optional<std::string_view> plus = std::nullopt) {
    PlotPanel p;
    p.title = std::move(title);
    const auto idx = column_index(col);
    std::optional<std::size_t> plus_idx;
    if (plus) plus_idx = column_index(*plus);
    for (const auto& run : batch.runs) p.series.push_back(run_series(run, idx, plus_idx, "#1f77b4"));
    p.series.push_back(mean_series(batch, idx, plus_idx, "#000000"));
    p.legend.emplace_back("mean", "#000000");
    return p;
}

void thin(PlotSeries& s) {
    if (s.x.size() <= kMaxPoints) return;
    const std::size_t stride = (s.x.size() + kMaxPoints - 1) / kMaxPoints;
    PlotSeries out = s;
    out.x.clear();
    out.y.clear();
    for (std::size_t i = 0; i < s.x.size(); i += stride) {
        out.x.push_back(s.x[i]);
        out.y.push_back(s.y[i]);
    }
    if (out.x.back() != s.x.back()) {
        out.x.push_back(s.x.back());
        out.y.push_back(s.y.back());
    }
    s = std::move(out);
}

// 1, 2 or 5 times a power of ten, giving about `count` intervals over `span`.
double nice_step(double span, int count) {
    const double raw = span / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0) * mag;
}

std::vector<double> ticks(double lo, double hi, double step) {
    std::vector<double> out;
    for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + step * 1e-9; v += step) {
        out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }
    return out;
}

void render_panel(std::string& svg, const PlotPanel& panel, double ox, double oy) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : panel.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        const double pad = ymin == 0.0 ? 0.5 : std::abs(ymin) * 0.1;
        ymin -= pad;
        ymax += pad;
    }
    const double ystep = nice_step(ymax - ymin, 4);
    ymin = std::floor(ymin / ystep + 1e-9) * ystep;
    ymax = std::ceil(ymax / ystep - 1e-9) * ystep;
    const double xstep = nice_step(xmax - xmin, 4);

    const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
    const double px = ox + kMarginLeft;
    const double py = oy + kMarginTop;
    const auto map_x = [&](double x) { return px + (x - xmin) / (xmax - xmin) * plot_w; };
    const auto map_y = [&](double y) { return py + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    svg += "<g>\n";
    svg += "<text x=\"" + num(ox + kPanelWidth / 2) + "\" y=\"" + num(oy + 18) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(panel.title) + "</text>\n";
    svg += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" + num(plot_w) + "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"#444\" stroke-width=\"0.8\"/>\n";

    for (const double yv : ticks(ymin, ymax, ystep)) {
        svg += "<line x1=\"" + num(px - 4) + "\" y1=\"" + num(map_y(yv)) + "\" x2=\"" + num(px) + "\" y2=\"" +
               num(map_y(yv)) + "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + num(px - 6) + "\" y=\"" + num(map_y(yv) + 4) +
               "\" text-anchor=\"end\" font-size=\"10\">" + num(yv) + "</text>\n";
    }
    for (const double xv : ticks(xmin, xmax, xstep)) {
        svg += "<line x1=\"" + num(map_x(xv)) + "\" y1=\"" + num(py + plot_h) + "\" x2=\"" + num(map_x(xv)) +
               "\" y2=\"" + num(py + plot_h + 4) + "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + num(map_x(xv)) + "\" y=\"" + num(py + plot_h + 16) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + num(std::round(xv)) + "</text>\n";
    }
    svg += "<text x=\"" + num(px + plot_w / 2) + "\" y=\"" + num(oy + kPanelHeight - 6) +
           "\" text-anchor=\"middle\" font-size=\"11\">round</text>\n";

    for (PlotSeries s : panel.series) {
        if (s.x.empty()) continue;
        thin(s);
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" + num(s.width) + "\"";
        if (s.opacity < 1.0) svg += " stroke-opacity=\"" + num(s.opacity) + "\"";
        svg += " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i > 0) svg += ' ';
            svg += num(map_x(s.x[i])) + "," + num(map_y(s.y[i]));
        }
        svg += "\"/>\n";
    }

    double ly = py + 12;
    for (const auto& [label, color] : panel.legend) {
        svg += "<line x1=\"" + num(px + plot_w - 56) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(px + plot_w - 38) +
               "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2.2\"/>\n";
        svg += "<text x=\"" + num(px + plot_w - 34) + "\" y=\"" + num(ly) + "\" font-size=\"10\">" +
               xml_escape(label) + "</text>\n";
        ly += 13;
    }
    svg += "</g>\n";
}

}  // namespace

std::vector<PlotPanel> batch_panels(const BatchResult& batch) {
    return {
        trait_panel(batch, "Trait means", "mean_", false),
        trait_panel(batch, "Trait variances", "var_", false),
        single_panel(batch, "Population", "population"),
        single_panel(batch, "Hypocrite fraction", "hypocrite_fraction"),
        single_panel(batch, "Energy lost to sanctions", "sanction_damage", "sanction_cost"),
        trait_panel(batch, "Noise means", "mean_", true),
    };
}

std::string render_svg(const std::vector<PlotPanel>& panels, const std::string& title,
                       const std::vector<std::string>& metadata) {
    constexpr int kColumns = 3;
    const int rows = static_cast<int>((panels.size() + kColumns - 1) / kColumns);
    const double width = kPanelWidth * kColumns;
    const double height = 40.0 + kPanelHeight * rows;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\" font-family=\"sans-serif\">\n";
    if (!metadata.empty()) {
        svg += "<metadata>\n";
        for (const auto& m : metadata) svg += xml_escape(m) + "\n";
        svg += "</metadata>\n";
    }
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(width / 2) + "\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(title) + "</text>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = kPanelWidth * static_cast<double>(i % kColumns);
        const double oy = 40.0 + kPanelHeight * static_cast<double>(i / kColumns);
        render_panel(svg, panels[i], ox, oy);
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plots(const BatchResult& batch, const std::filesystem::path& path) {
    if (batch.runs.empty()) {
        throw std::invalid_argument("emit_plots: batch has no runs, nothing to plot");
    }
    const std::string title = std::string(to_string(batch.condition.condition)) + " / " +
                              std::string(to_string(batch.condition.op)) + " (N = " +
                              std::to_string(batch.runs.size()) + ")";
    std::vector<std::string> metadata{
        "tool: normsim " + std::string(kToolVersion),
        "generator: " + std::string(kGeneratorId),
        "master_seed: " + std::to_string(batch.master_seed),
        "condition: " + std::string(to_string(batch.condition.condition)),
        "mutation_operator: " + std::string(to_string(batch.condition.op)),
        std::string("averaging: ") + (batch.extinct_as_zero ? "extinct_as_zero" : "absent_aware"),
    };
    for (const auto& line : config_echo(batch.runs.front().config)) metadata.push_back("config: " + line);
    write_text_file(path, render_svg(batch_panels(batch), title, metadata));
}

}  // namespace normsim
