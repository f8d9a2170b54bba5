#pragma once

// Lambert azimuthal equal-area projection of S_2 samples, written as a
// (u, v) table and as a static SVG scatter with reference circles at radius
// 1 (the equator of the projection hemisphere), √2 and 2 (the antipode).

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirstat/geometry.hpp"

namespace dirstat::analysis {

using geometry::PlanarPoint;
using geometry::UnitVector;

/// Rotates `center` to the north pole, then projects. S_2 only.
[[nodiscard]] std::vector<PlanarPoint> project_sample(std::span<const UnitVector> sample, const UnitVector& center);

void write_projection_table(std::ostream& out, std::span<const PlanarPoint> points,
                            std::span<const std::optional<std::string>> sites = {});

struct PlotOptions {
    std::string title = "Lambert equal-area projection";
    int size_px = 480;
};

void write_projection_svg(std::ostream& out, std::span<const PlanarPoint> points, const PlotOptions& options = {});

}  // namespace dirstat::analysis
