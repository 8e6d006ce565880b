#include "inbox/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace inbox {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kBoundarySegments = 512;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::vector<Vector2d> boundary_polyline(const ConvexSet& set) {
    if (set.polygon) return set.polygon->vertices;
    const VectorXd inner = interior_point(set);
    std::vector<Vector2d> pts;
    pts.reserve(kBoundarySegments);
    VectorXd dir(2);
    for (int k = 0; k < kBoundarySegments; ++k) {
        const double phi = 2.0 * kPi * k / kBoundarySegments;
        dir << std::cos(phi), std::sin(phi);
        const VectorXd p = boundary_point(set, inner, dir);
        pts.emplace_back(p(0), p(1));
    }
    return pts;
}

struct View {
    double xmin, xmax, ymin, ymax;
    double map_y(double y) const { return ymax + ymin - y; }  // flip for SVG
};

View make_view(const std::vector<Vector2d>& boundary, const std::array<Vector2d, 4>& corners) {
    View v{boundary.front().x(), boundary.front().x(), boundary.front().y(),
           boundary.front().y()};
    auto grow = [&](const Vector2d& p) {
        v.xmin = std::min(v.xmin, p.x());
        v.xmax = std::max(v.xmax, p.x());
        v.ymin = std::min(v.ymin, p.y());
        v.ymax = std::max(v.ymax, p.y());
    };
    for (const auto& p : boundary) grow(p);
    for (const auto& p : corners) grow(p);
    const double pad = 0.05 * std::max({v.xmax - v.xmin, v.ymax - v.ymin, 1e-9});
    v.xmin -= pad;
    v.xmax += pad;
    v.ymin -= pad;
    v.ymax += pad;
    return v;
}

std::string figure(const ConvexSet& set, const std::array<Vector2d, 4>& corners) {
    const std::vector<Vector2d> boundary = boundary_polyline(set);
    const View v = make_view(boundary, corners);
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(v.xmin) << " "
        << num(v.ymin) << " " << num(v.xmax - v.xmin) << " " << num(v.ymax - v.ymin)
        << "\" width=\"640\" height=\"640\" preserveAspectRatio=\"xMidYMid meet\">\n";
    svg << "<path d=\"M " << num(boundary[0].x()) << " " << num(v.map_y(boundary[0].y()));
    for (size_t i = 1; i < boundary.size(); ++i) {
        svg << " L " << num(boundary[i].x()) << " " << num(v.map_y(boundary[i].y()));
    }
    svg << " Z\" fill=\"none\" stroke=\"#1f4f82\" stroke-width=\""
        << num(0.004 * (v.xmax - v.xmin)) << "\"/>\n";
    svg << "<polygon points=\"";
    for (int i = 0; i < 4; ++i) {
        if (i) svg << " ";
        svg << num(corners[i].x()) << "," << num(v.map_y(corners[i].y()));
    }
    svg << "\" fill=\"#d94f2b\" fill-opacity=\"0.35\" stroke=\"#d94f2b\" stroke-width=\""
        << num(0.004 * (v.xmax - v.xmin)) << "\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string render_figure(const ConvexSet& set, const Rectangle2D& rect) {
    return figure(set, rect.corners());
}

std::string render_figure(const ConvexSet& set, const BoxRegion& box) {
    if (set.dim != 2) throw InputError("render_figure: SVG output is 2-D only");
    Rectangle2D rect;
    rect.x = Vector2d(box.xl(0), box.xl(1));
    rect.u = Vector2d(box.xu(0) - box.xl(0), 0.0);
    rect.v = Vector2d(0.0, box.xu(1) - box.xl(1));
    return figure(set, rect.corners());
}

std::string render_profile(const std::vector<DirectionSample>& samples) {
    double fmax = 0.0;
    for (const auto& s : samples) fmax = std::max(fmax, s.area);
    const double w = 640, h = 400, mx = 60, my = 40;
    auto px = [&](double t) { return mx + (t + 1.0) / 2.0 * (w - 2 * mx); };
    auto py = [&](double f) { return h - my - (fmax > 0 ? f / fmax : 0.0) * (h - 2 * my); };
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
        << "\" width=\"" << w << "\" height=\"" << h << "\">\n";
    svg << "<line x1=\"" << mx << "\" y1=\"" << h - my << "\" x2=\"" << w - mx << "\" y2=\""
        << h - my << "\" stroke=\"#444\"/>\n";
    svg << "<line x1=\"" << mx << "\" y1=\"" << my << "\" x2=\"" << mx << "\" y2=\"" << h - my
        << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 8 << "\" font-size=\"14\" "
        << "text-anchor=\"middle\">t</text>\n";
    svg << "<text x=\"16\" y=\"" << h / 2 << "\" font-size=\"14\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << h / 2 << ")\">f(t)</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f4f82\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < samples.size(); ++i) {
        if (i) svg << " ";
        svg << num(px(samples[i].t)) << "," << num(py(samples[i].area));
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

}  // namespace inbox
