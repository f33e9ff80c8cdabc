#ifndef DTSNE_SVG_HPP
#define DTSNE_SVG_HPP

#include <optional>
#include <string>
#include <vector>

#include "dtsne/core.hpp"

namespace dtsne::svg {

struct PlotSpec {
    int width_px = 600;
    int height_px = 600;
    double point_radius_px = 2.0;
    double opacity = 0.5;
    bool color_by_label = true;

    /// Throws InvalidConfig unless both dimensions are >= 100 px, radius > 0 and opacity in (0, 1].
    void validate() const;
};

/// Ten categorical colors; label l uses entry l mod 10.
const std::vector<std::string>& palette();

/**
 * @brief Renders a 2-column embedding as a standalone SVG 1.1 scatter plot.
 *
 * One <circle> per point inside a frame that spans the bounding box of the
 * data plus a 5% margin on every side.
 */
std::string scatter(const Matrix& coords, const std::optional<std::vector<int>>& labels, const PlotSpec& spec);

}  // namespace dtsne::svg

#endif
