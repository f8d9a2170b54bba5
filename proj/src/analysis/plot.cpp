#include "dirstat/analysis/plot.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "dirstat/errors.hpp"

namespace dirstat::analysis {

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::vector<PlanarPoint> project_sample(std::span<const UnitVector> sample, const UnitVector& center) {
    if (center.ambient_dim() != 3) throw DimensionMismatch("Lambert projection is defined on S_2");
    // rotation_from_north_pole maps e3 to center; its transpose maps center to e3.
    const Eigen::MatrixXd to_pole = geometry::rotation_from_north_pole(center).transpose();
    std::vector<PlanarPoint> out;
    out.reserve(sample.size());
    for (const UnitVector& y : sample) {
        if (y.ambient_dim() != 3) throw DimensionMismatch("Lambert projection is defined on S_2");
        out.push_back(geometry::lambert_project(geometry::to_polar(geometry::rotate(to_pole, y))));
    }
    return out;
}

void write_projection_table(std::ostream& out, std::span<const PlanarPoint> points,
                            std::span<const std::optional<std::string>> sites) {
    const bool with_sites = !sites.empty();
    if (with_sites && sites.size() != points.size()) throw DomainError("site labels do not match the points");
    out << (with_sites ? "u,v,site\n" : "u,v\n");
    char buf[64];
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g", points[i].u, points[i].v);
        out << buf;
        if (with_sites) out << ',' << sites[i].value_or("");
        out << '\n';
    }
}

void write_projection_svg(std::ostream& out, std::span<const PlanarPoint> points, const PlotOptions& options) {
    const double size = options.size_px;
    const double c = size / 2.0;
    const double scale = (size / 2.0 - 24.0) / 2.0;  // radius 2 fills the frame

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size_px << "\" height=\""
        << options.size_px << "\" viewBox=\"0 0 " << options.size_px << ' ' << options.size_px << "\">\n";
    out << "  <title>" << xml_escape(options.title) << "</title>\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const double r : {1.0, std::numbers::sqrt2, 2.0}) {
        out << "  <circle cx=\"" << fixed(c) << "\" cy=\"" << fixed(c) << "\" r=\"" << fixed(r * scale)
            << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"";
        if (r != 2.0) out << " stroke-dasharray=\"4 3\"";
        out << "/>\n";
    }
    out << "  <line x1=\"" << fixed(c - 6) << "\" y1=\"" << fixed(c) << "\" x2=\"" << fixed(c + 6) << "\" y2=\""
        << fixed(c) << "\" stroke=\"#888\"/>\n";
    out << "  <line x1=\"" << fixed(c) << "\" y1=\"" << fixed(c - 6) << "\" x2=\"" << fixed(c) << "\" y2=\""
        << fixed(c + 6) << "\" stroke=\"#888\"/>\n";
    out << "  <g fill=\"black\">\n";
    for (const PlanarPoint& p : points) {
        // SVG y grows downward.
        out << "    <circle cx=\"" << fixed(c + p.u * scale) << "\" cy=\"" << fixed(c - p.v * scale)
            << "\" r=\"3\"/>\n";
    }
    out << "  </g>\n";
    out << "  <text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(options.title)
        << " (n=" << points.size() << ")</text>\n";
    out << "</svg>\n";
}

}  // namespace dirstat::analysis
