#include "escortlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace escortlab {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // avoid "-0.00"
    if (std::string(buf) == "-0.00") return "0.00";
    return buf;
}

struct Box {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const Box& box,
                     const char* color) {
    double sx = (kCanvas - 2 * kMargin) / (box.xmax - box.xmin);
    double sy = (kCanvas - 2 * kMargin) / (box.ymax - box.ymin);
    double s = std::min(sx, sy);
    std::string out = "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double px = kMargin + (pts[i].first - box.xmin) * s;
        double py = kCanvas - kMargin - (pts[i].second - box.ymin) * s;
        if (i) out += ' ';
        out += num(px) + "," + num(py);
    }
    out += "\"/>\n";
    return out;
}

const char* kColors[] = {"#1b6ca8", "#c0392b", "#27835a", "#8e44ad", "#b7950b"};

}  // namespace

PlotStyle plot_style_from_name(const std::string& name) {
    if (name == "disk") return PlotStyle::Disk;
    if (name == "half-plane") return PlotStyle::HalfPlane;
    if (name == "xy") return PlotStyle::XY;
    throw ConfigError("unknown plot style: " + name);
}

std::string render_svg(const std::vector<PointSequence>& curves, PlotStyle style) {
    Box box;
    bool have = false;
    for (const auto& seq : curves)
        for (const auto& p : seq.points) {
            if (!have) {
                box = {p.x[0], p.x[0], p.x[1], p.x[1]};
                have = true;
            }
            box.xmin = std::min(box.xmin, p.x[0]);
            box.xmax = std::max(box.xmax, p.x[0]);
            box.ymin = std::min(box.ymin, p.x[1]);
            box.ymax = std::max(box.ymax, p.x[1]);
        }
    if (style == PlotStyle::Disk) box = {-1.05, 1.05, -1.05, 1.05};
    if (!have && style != PlotStyle::Disk) box = {-1, 1, -1, 1};
    double padx = 0.05 * (box.xmax - box.xmin + 1e-9);
    double pady = 0.05 * (box.ymax - box.ymin + 1e-9);
    if (style != PlotStyle::Disk) {
        box.xmin -= padx;
        box.xmax += padx;
        box.ymin -= pady;
        box.ymax += pady;
    }

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    // axes
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kCanvas - kMargin) + "\" x2=\"" +
           num(kCanvas - kMargin) + "\" y2=\"" + num(kCanvas - kMargin) +
           "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) +
           "\" y2=\"" + num(kCanvas - kMargin) + "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    if (style == PlotStyle::Disk) {
        double s = (kCanvas - 2 * kMargin) / (box.xmax - box.xmin);
        double cx = kMargin + (0.0 - box.xmin) * s;
        double cy = kCanvas - kMargin - (0.0 - box.ymin) * s;
        svg += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(1.0 * s) +
               "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(curves[c].points.size());
        for (const auto& p : curves[c].points) pts.emplace_back(p.x[0], p.x[1]);
        if (!pts.empty()) svg += polyline(pts, box, kColors[c % 5]);
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_cone_svg(double d, double eps) {
    if (d <= 0.0 || eps <= 0.0) throw DomainError("render_cone_svg: d and eps must be positive");
    // boundary of [0, d]_eps in the euclidean plane, polar about the apex:
    // r(phi) = d (2 cos(phi) - 2 e^{-eps}) / (1 - e^{-2 eps}) where positive
    std::vector<ModelPoint> pts;
    const ModelId m = euclidean(2);
    double ee = std::exp(-eps);
    int N = 256;
    for (int i = 0; i <= N; ++i) {
        double phi = -std::acos(ee) + 2.0 * std::acos(ee) * i / N;
        double r = d * (2.0 * std::cos(phi) - 2.0 * ee) / (1.0 - ee * ee);
        pts.emplace_back(m, std::vector<double>{r * std::cos(phi), r * std::sin(phi)});
    }
    PointSequence outline = make_sequence(m, std::move(pts));
    std::vector<ModelPoint> seg = {ModelPoint(m, {0.0, 0.0}), ModelPoint(m, {d, 0.0})};
    PointSequence chord = make_sequence(m, std::move(seg));
    return render_svg({outline, chord}, PlotStyle::XY);
}

}  // namespace escortlab
