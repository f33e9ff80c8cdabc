#include "dtsne/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dtsne::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void PlotSpec::validate() const {
    if (width_px < 100 || height_px < 100) {
        throw Error(ErrorCode::InvalidConfig, "plot dimensions must be at least 100 px");
    }
    if (!(point_radius_px > 0)) {
        throw Error(ErrorCode::InvalidConfig, "point radius must be positive");
    }
    if (!(opacity > 0 && opacity <= 1)) {
        throw Error(ErrorCode::InvalidConfig, "opacity must lie in (0, 1]");
    }
}

const std::vector<std::string>& palette() {
    static const std::vector<std::string> colors{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors;
}

std::string scatter(const Matrix& coords, const std::optional<std::vector<int>>& labels, const PlotSpec& spec) {
    spec.validate();
    if (coords.cols() != 2) {
        throw Error(ErrorCode::DimensionTooLarge, "scatter plots need a 2-column embedding");
    }
    if (labels && static_cast<Eigen::Index>(labels->size()) != coords.rows()) {
        throw Error(ErrorCode::LabelLengthMismatch, "label count differs from point count");
    }

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    if (coords.rows() > 0) {
        x_min = coords.col(0).minCoeff();
        x_max = coords.col(0).maxCoeff();
        y_min = coords.col(1).minCoeff();
        y_max = coords.col(1).maxCoeff();
    }
    double x_span = x_max - x_min;
    double y_span = y_max - y_min;
    if (x_span <= 0) {
        x_span = 1;
        x_min -= 0.5;
    }
    if (y_span <= 0) {
        y_span = 1;
        y_min -= 0.5;
    }
    x_min -= 0.05 * x_span;
    y_min -= 0.05 * y_span;
    x_span *= 1.1;
    y_span *= 1.1;

    const double w = spec.width_px;
    const double h = spec.height_px;
    auto px = [&](double x) { return (x - x_min) / x_span * w; };
    auto py = [&](double y) { return h - (y - y_min) / y_span * h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width_px) +
           "\" height=\"" + std::to_string(spec.height_px) + "\" viewBox=\"0 0 " + std::to_string(spec.width_px) +
           " " + std::to_string(spec.height_px) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width_px) + "\" height=\"" +
           std::to_string(spec.height_px) + "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // Axes through the origin when it lies inside the frame.
    if (x_min < 0 && x_min + x_span > 0) {
        out += "<line x1=\"" + num(px(0)) + "\" y1=\"0\" x2=\"" + num(px(0)) + "\" y2=\"" + num(h) +
               "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
    }
    if (y_min < 0 && y_min + y_span > 0) {
        out += "<line x1=\"0\" y1=\"" + num(py(0)) + "\" x2=\"" + num(w) + "\" y2=\"" + num(py(0)) +
               "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
    }

    const auto& colors = palette();
    const std::string r = num(spec.point_radius_px);
    const std::string opacity = num(spec.opacity);
    out += "<g fill-opacity=\"" + opacity + "\" stroke=\"none\">\n";
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        std::string fill = "#000000";
        if (labels && spec.color_by_label) {
            const int l = (*labels)[static_cast<std::size_t>(i)];
            const auto m = static_cast<std::size_t>(((l % 10) + 10) % 10);
            fill = colors[m];
        }
        out += "<circle cx=\"" + num(px(coords(i, 0))) + "\" cy=\"" + num(py(coords(i, 1))) + "\" r=\"" + r +
               "\" fill=\"" + fill + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace dtsne::svg
