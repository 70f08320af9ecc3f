#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "normsim/experiment.hpp"

namespace normsim {

/// One polyline of a panel.
struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
    double width = 1.0;
    double opacity = 1.0;
};

struct PlotPanel {
    std::string title;
    std::vector<PlotSeries> series;  // drawn in order, later on top
    std::vector<std::pair<std::string, std::string>> legend;  // (label, color)
};

/// The six panels of a batch figure: trait means, trait variances,
/// population, hypocrite fraction, sanction energy and noise means.
/// Individual runs are thin translucent lines, the cross-run mean is heavy.
std::vector<PlotPanel> batch_panels(const BatchResult& batch);

/// Standalone SVG document with the panels laid out on a 3 x 2 grid.
std::string render_svg(const std::vector<PlotPanel>& panels, const std::string& title,
                       const std::vector<std::string>& metadata = {});

/// Writes the batch figure to `path`. Throws std::invalid_argument for an
/// empty batch (no file is written) and IoError on write failure.
void emit_plots(const BatchResult& batch, const std::filesystem::path& path);

}  // namespace normsim
