#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "polycrit/empirics.hpp"
#include "polycrit/report.hpp"

namespace polycrit {

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

class SvgDoc {
public:
    SvgDoc(double width, double height) : width_(width), height_(height) {}

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none") {
        body_ << "<rect x=\"" << detail::px(x) << "\" y=\"" << detail::px(y)
              << "\" width=\"" << detail::px(w) << "\" height=\"" << detail::px(h)
              << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "none", double stroke_width = 1.0,
                const std::string& cls = "") {
        body_ << "<circle";
        if (!cls.empty()) body_ << " class=\"" << cls << "\"";
        body_ << " cx=\"" << detail::px(cx) << "\" cy=\"" << detail::px(cy) << "\" r=\""
              << detail::px(r) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
              << "\" stroke-width=\"" << detail::px(stroke_width) << "\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double w = 1.0) {
        body_ << "<line x1=\"" << detail::px(x1) << "\" y1=\"" << detail::px(y1)
              << "\" x2=\"" << detail::px(x2) << "\" y2=\"" << detail::px(y2)
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << detail::px(w)
              << "\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke, double w = 1.5) {
        if (pts.size() < 2) return;
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << detail::px(w) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << " ";
            body_ << detail::px(pts[i].first) << "," << detail::px(pts[i].second);
        }
        body_ << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, double size = 12.0,
              const std::string& anchor = "start", const std::string& fill = "#333") {
        body_ << "<text x=\"" << detail::px(x) << "\" y=\"" << detail::px(y)
              << "\" font-size=\"" << detail::px(size)
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor
              << "\" fill=\"" << fill << "\">" << detail::xml_escape(s) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::px(width_)
           << "\" height=\"" << detail::px(height_) << "\" viewBox=\"0 0 "
           << detail::px(width_) << " " << detail::px(height_) << "\">\n";
        os << body_.str();
        os << "</svg>\n";
        return os.str();
    }

private:
    double width_, height_;
    std::ostringstream body_;
};

namespace detail {

// Angular density decomposition of a measure: a piecewise-constant
// continuous part plus point masses. Heights are densities on [0,1), so an
// atom of weight w drawn over one histogram bin has height w * bins.
struct AngularDensity {
    double base = 0.0;                                   // uniform contribution
    std::vector<std::array<double, 3>> boxes;            // lo, hi, height
    std::vector<std::pair<double, double>> point_masses; // angle, weight

    double continuous_at(double t) const {
        double v = base;
        for (const auto& b : boxes)
            if (t >= b[0] && t < b[1]) v += b[2];
        return v;
    }
};

inline void accumulate_density(const CircleMeasure& m, double scale, AngularDensity& out) {
    switch (m.kind) {
        case MeasureKind::uniform:
            out.base += scale;
            break;
        case MeasureKind::atomic:
            for (std::size_t j = 0; j < m.atoms.size(); ++j)
                out.point_masses.emplace_back(m.atoms[j], scale * m.weights[j]);
            break;
        case MeasureKind::arc:
            out.boxes.push_back({m.arc_lo, m.arc_hi, scale / (m.arc_hi - m.arc_lo)});
            break;
        case MeasureKind::mixture:
            for (std::size_t j = 0; j < m.components.size(); ++j)
                accumulate_density(m.components[j], scale * m.weights[j], out);
            break;
    }
}

}  // namespace detail

// Complex-plane scatter of one trial: roots, critical points, unit circle.
inline std::string scatter_svg(const PlotInput& in) {
    const double side = 640.0;
    SvgDoc svg(side, side);
    const double margin = 40.0;
    const double scale = (side - 2.0 * margin) / 2.4;  // plane window [-1.2, 1.2]
    const auto X = [&](double re) { return side / 2.0 + re * scale; };
    const auto Y = [&](double im) { return side / 2.0 - im * scale; };

    svg.rect(0, 0, side, side, "white");
    svg.circle(X(0), Y(0), scale, "none", "#999", 1.0, "unit-circle");
    for (const Complex& z : in.roots)
        svg.circle(X(z.real()), Y(z.imag()), 2.5, "#1f77b4", "none", 1.0, "root");
    for (const Complex& z : in.criticals)
        svg.circle(X(z.real()), Y(z.imag()), 1.8, "#d62728", "none", 1.0, "critical");
    svg.text(margin, 24, "roots (blue) and critical points (red), " + in.measure_text, 13);
    return svg.str();
}

// 64-bin angular histogram of the critical points against the target
// angular density (flat part as a step curve, atoms as spikes).
inline std::string angles_svg(const PlotInput& in) {
    constexpr int bins = 64;
    const double width = 680.0, height = 420.0;
    const double x0 = 60.0, x1 = 640.0, y0 = 360.0, y1 = 40.0;
    SvgDoc svg(width, height);
    svg.rect(0, 0, width, height, "white");

    std::vector<Complex> pts(in.criticals);
    const PolarSet polar = to_polar(pts);
    std::vector<int> count(bins, 0);
    for (double t : polar.angles) {
        int b = static_cast<int>(t * bins);
        if (b < 0) b = 0;
        if (b >= bins) b = bins - 1;
        ++count[static_cast<std::size_t>(b)];
    }
    const double m = polar.size() == 0 ? 1.0 : static_cast<double>(polar.size());

    detail::AngularDensity density;
    detail::accumulate_density(in.measure, 1.0, density);

    double ymax = 1.0;
    for (int b = 0; b < bins; ++b)
        ymax = std::max(ymax, bins * count[static_cast<std::size_t>(b)] / m);
    for (int b = 0; b < bins; ++b)
        ymax = std::max(ymax, density.continuous_at((b + 0.5) / bins));
    for (const auto& [angle, w] : density.point_masses) ymax = std::max(ymax, w * bins);
    ymax *= 1.12;

    const auto X = [&](double t) { return x0 + t * (x1 - x0); };
    const auto Y = [&](double v) { return y0 - v / ymax * (y0 - y1); };

    for (int b = 0; b < bins; ++b) {
        const double dens = bins * count[static_cast<std::size_t>(b)] / m;
        if (dens <= 0.0) continue;
        svg.rect(X(static_cast<double>(b) / bins), Y(dens),
                 (x1 - x0) / bins - 0.5, Y(0) - Y(dens), "#f2b4b2");
    }

    std::vector<std::pair<double, double>> step;
    step.reserve(2 * bins);
    for (int b = 0; b < bins; ++b) {
        const double v = density.continuous_at((b + 0.5) / bins);
        step.emplace_back(X(static_cast<double>(b) / bins), Y(v));
        step.emplace_back(X(static_cast<double>(b + 1) / bins), Y(v));
    }
    svg.polyline(step, "#1f77b4", 1.5);
    for (const auto& [angle, w] : density.point_masses) {
        svg.line(X(angle), Y(0), X(angle), Y(w * bins), "#1f77b4", 2.0);
        svg.circle(X(angle), Y(w * bins), 3.0, "#1f77b4");
    }

    svg.line(x0, y0, x1, y0, "#333");
    svg.line(x0, y0, x0, y1, "#333");
    for (int tick = 0; tick <= 4; ++tick) {
        const double t = tick / 4.0;
        svg.line(X(t), y0, X(t), y0 + 4, "#333");
        char lab[16];
        std::snprintf(lab, sizeof lab, "%.2f", t);
        svg.text(X(t), y0 + 18, lab, 11, "middle");
    }
    svg.text((x0 + x1) / 2, height - 8, "angle (turns)", 12, "middle");
    svg.text(x0, 24, "critical-point angle histogram vs target density", 13);
    return svg.str();
}

// Log-log decay of the median circular W1 distance with n.
inline std::string convergence_svg(const PlotInput& in) {
    const double width = 560.0, height = 420.0;
    const double x0 = 70.0, x1 = 520.0, y0 = 350.0, y1 = 40.0;
    SvgDoc svg(width, height);
    svg.rect(0, 0, width, height, "white");
    svg.line(x0, y0, x1, y0, "#333");
    svg.line(x0, y0, x0, y1, "#333");
    svg.text((x0 + x1) / 2, height - 8, "n (log scale)", 12, "middle");
    svg.text(x0, 24, "median circular W1 vs n", 13);

    std::vector<std::pair<double, double>> data;
    for (const auto& [n, w1] : in.w1_curve)
        if (n > 0 && w1 > 0.0) data.emplace_back(std::log10(double(n)), std::log10(w1));
    if (data.empty()) return svg.str();

    double lx0 = data.front().first, lx1 = data.front().first;
    double ly0 = data.front().second, ly1 = data.front().second;
    for (const auto& [lx, ly] : data) {
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
    }
    if (lx1 - lx0 < 0.1) { lx0 -= 0.5; lx1 += 0.5; }
    if (ly1 - ly0 < 0.1) { ly0 -= 0.5; ly1 += 0.5; }
    const auto X = [&](double lx) { return x0 + (lx - lx0) / (lx1 - lx0) * (x1 - x0); };
    const auto Y = [&](double ly) { return y0 - (ly - ly0) / (ly1 - ly0) * (y0 - y1); };

    std::vector<std::pair<double, double>> path;
    for (const auto& [lx, ly] : data) path.emplace_back(X(lx), Y(ly));
    svg.polyline(path, "#1f77b4", 2.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        svg.circle(path[i].first, path[i].second, 3.5, "#1f77b4");
        svg.text(path[i].first, y0 + 18, std::to_string(in.w1_curve[i].first), 11,
                 "middle");
        svg.line(path[i].first, y0, path[i].first, y0 + 4, "#333");
    }
    for (int e = static_cast<int>(std::floor(ly0)); e <= static_cast<int>(std::ceil(ly1));
         ++e) {
        if (e < ly0 - 1e-9 || e > ly1 + 1e-9) continue;
        char lab[16];
        std::snprintf(lab, sizeof lab, "1e%d", e);
        svg.text(x0 - 8, Y(e) + 4, lab, 11, "end");
        svg.line(x0 - 4, Y(e), x0, Y(e), "#333");
    }
    return svg.str();
}

inline void emit_plots(const PlotInput& in, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw std::runtime_error("cannot create directory " + dir.string());
    write_file(dir / "scatter.svg", scatter_svg(in));
    write_file(dir / "angles.svg", angles_svg(in));
    write_file(dir / "convergence.svg", convergence_svg(in));
}

inline void emit_plots(const ExperimentReport& rep, const std::filesystem::path& dir) {
    emit_plots(plot_input(rep), dir);
}

}  // namespace polycrit
