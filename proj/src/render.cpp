#include "quadline/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace quadline {

namespace {

using P2 = std::array<double, 2>;
using P3 = std::array<double, 3>;

constexpr const char* kColor[2] = {"#c0392b", "#2e6fba"};
constexpr const char* kColorName[2] = {"red", "blue"};
constexpr const char* kNearestTint = "#f6d365";
constexpr const char* kFarthestTint = "#9fd8cb";

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

double root_value(const QuadraticRoot& r) {
    return r.alpha.to_double() + r.beta.to_double() * std::sqrt(r.disc.to_double());
}

P3 to_p3(const Vec3<Surd>& v) { return {v.x.to_double(), v.y.to_double(), v.z.to_double()}; }
P3 to_p3(const QVec& v) { return {v.x.get_d(), v.y.get_d(), v.z.get_d()}; }
double dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Floating-point view of a bisector frame.
struct FrameView {
    P3 origin, ex, ey, ez;
    double kappa;

    explicit FrameView(const BisectorFrame& f)
        : origin(to_p3(f.origin)), ex(to_p3(f.ex)), ey(to_p3(f.ey)), ez(to_p3(f.ez)), kappa(f.kappa.get_d()) {}

    P3 point(double x, double y) const {
        P3 p;
        for (size_t k = 0; k < 3; ++k) p[k] = origin[k] + x * ex[k] + y * ey[k] + kappa * x * y * ez[k];
        return p;
    }
    P2 coords(const P3& p) const {
        P3 d{p[0] - origin[0], p[1] - origin[1], p[2] - origin[2]};
        return {dot(d, ex) / dot(ex, ex), dot(d, ey) / dot(ey, ey)};
    }
};

double distance_to(const Line& l, const P3& p) {
    P3 a = to_p3(l.point), u = to_p3(l.dir);
    P3 d{p[0] - a[0], p[1] - a[1], p[2] - a[2]};
    P3 c{d[1] * u[2] - d[2] * u[1], d[2] * u[0] - d[0] * u[2], d[0] * u[1] - d[1] * u[0]};
    return std::sqrt(dot(c, c) / dot(u, u));
}

double coeff(const Biquadratic& b, int i, int j) { return b.c[static_cast<size_t>(i)][static_cast<size_t>(j)].to_double(); }

// Real Y roots at X, ascending.
std::vector<double> y_roots(const Biquadratic& b, double x) {
    double c[3];
    for (int j = 0; j < 3; ++j) c[j] = coeff(b, 0, j) + coeff(b, 1, j) * x + coeff(b, 2, j) * x * x;
    std::vector<double> out;
    double scale = std::max({std::fabs(c[0]), std::fabs(c[1]), std::fabs(c[2])});
    if (scale == 0) return out;
    if (std::fabs(c[2]) < 1e-12 * scale) {
        if (c[1] != 0) out.push_back(-c[0] / c[1]);
        return out;
    }
    double disc = c[1] * c[1] - 4 * c[2] * c[0];
    if (disc < 0) return out;
    double s = std::sqrt(disc);
    double q = -0.5 * (c[1] + std::copysign(s, c[1]));
    double r1 = q / c[2], r2 = q != 0 ? c[0] / q : r1;
    out = {std::min(r1, r2), std::max(r1, r2)};
    return out;
}

class Svg {
public:
    Svg(double width, double height) : w_(width), h_(height) {
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w_) << "\" height=\"" << num(h_)
            << "\" viewBox=\"0 0 " << num(w_) << " " << num(h_) << "\">\n";
    }
    std::ostringstream& out() { return os_; }
    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }
    void polyline(const std::vector<P2>& pts, const std::string& cls, const std::string& style) {
        if (pts.size() < 2) return;
        os_ << "<path class=\"" << cls << "\" d=\"";
        for (size_t k = 0; k < pts.size(); ++k) os_ << (k ? " L" : "M") << num(pts[k][0]) << " " << num(pts[k][1]);
        os_ << "\" " << style << "/>\n";
    }

private:
    double w_, h_;
    std::ostringstream os_;
};

}  // namespace

Viewport auto_viewport(const BisectorTrace& trace, const std::vector<VertexBox>& vertices) {
    std::vector<double> xs, ys;
    for (const auto& b : trace.branches) {
        for (const auto& r : b.vertical) xs.push_back(root_value(r));
        for (const auto& r : b.horizontal) ys.push_back(root_value(r));
    }
    FrameView frame(trace.frame);
    for (const auto& v : vertices) {
        P2 c = frame.coords({v.x.mid_double(), v.y.mid_double(), v.z.mid_double()});
        xs.push_back(c[0]);
        ys.push_back(c[1]);
    }
    auto [x0, x1] = std::minmax_element(xs.begin(), xs.end());
    auto [y0, y1] = std::minmax_element(ys.begin(), ys.end());
    Viewport v{*x0, *x1, *y0, *y1};
    // keep a square-ish, nondegenerate window
    double span = std::max({v.xmax - v.xmin, v.ymax - v.ymin, 1e-3});
    double cx = (v.xmin + v.xmax) / 2, cy = (v.ymin + v.ymax) / 2;
    double half = span * 1.2 / 2;
    return {cx - half, cx + half, cy - half, cy + half};
}

std::string render_bisector_svg(const LineSet& lines, const BisectorTrace& trace, const std::vector<VertexBox>& vertices,
                                const RenderOptions& options) {
    Viewport vp = options.viewport ? *options.viewport : auto_viewport(trace, vertices);
    double width = options.width;
    double height = width * (vp.ymax - vp.ymin) / (vp.xmax - vp.xmin);
    auto to_px = [&](double x, double y) {
        return P2{(x - vp.xmin) / (vp.xmax - vp.xmin) * width, (vp.ymax - y) / (vp.ymax - vp.ymin) * height};
    };
    Svg svg(width, height);
    FrameView frame(trace.frame);

    // Face tints from direct distance comparisons on a grid, merged into row runs.
    constexpr int kGrid = 96;
    std::array<Line, 4> line{};
    for (int m = 0; m < 4; ++m) line[static_cast<size_t>(m)] = lines.line(m);
    double cw = width / kGrid, ch = height / kGrid;
    svg.out() << "<g class=\"tints\" shape-rendering=\"crispEdges\">\n";
    for (int r = 0; r < kGrid; ++r) {
        int run_start = 0, run_label = -1;
        auto flush = [&](int end) {
            if (run_label < 0) return;
            svg.out() << "<rect class=\"face " << (run_label == 0 ? "nvd" : "fvd") << "\" x=\"" << num(run_start * cw)
                      << "\" y=\"" << num(r * ch) << "\" width=\"" << num((end - run_start) * cw) << "\" height=\""
                      << num(ch) << "\" fill=\"" << (run_label == 0 ? kNearestTint : kFarthestTint) << "\"/>\n";
        };
        for (int c = 0; c <= kGrid; ++c) {
            int label = -1;
            if (c < kGrid) {
                double x = vp.xmin + (c + 0.5) / kGrid * (vp.xmax - vp.xmin);
                double y = vp.ymax - (r + 0.5) / kGrid * (vp.ymax - vp.ymin);
                double here = distance_to(line[static_cast<size_t>(trace.frame.i)], frame.point(x, y));
                int nearer = 0, farther = 0;
                for (int m = 0; m < 4; ++m) {
                    if (m == trace.frame.i || m == trace.frame.j) continue;
                    double d = distance_to(line[static_cast<size_t>(m)], frame.point(x, y));
                    nearer += here < d;
                    farther += here > d;
                }
                if (nearer == 2) label = 0;
                if (farther == 2) label = 1;
            }
            if (label != run_label) {
                flush(c);
                run_start = c;
                run_label = label;
            }
        }
    }
    svg.out() << "</g>\n";

    // Asymptotes.
    for (size_t k = 0; k < 2; ++k) {
        const auto& b = trace.branches[k];
        for (const auto& r : b.vertical) {
            double x = root_value(r);
            svg.polyline({to_px(x, vp.ymin), to_px(x, vp.ymax)}, std::string("asymptote ") + kColorName[k],
                         std::string("stroke=\"") + kColor[k] + "\" stroke-dasharray=\"6 4\" fill=\"none\"");
        }
        for (const auto& r : b.horizontal) {
            double y = root_value(r);
            svg.polyline({to_px(vp.xmin, y), to_px(vp.xmax, y)}, std::string("asymptote ") + kColorName[k],
                         std::string("stroke=\"") + kColor[k] + "\" stroke-dasharray=\"6 4\" fill=\"none\"");
        }
    }

    // Curves: both Y roots along X, split where a root disappears or leaves the window.
    constexpr int kSamples = 1600;
    for (size_t k = 0; k < 2; ++k) {
        const Biquadratic& b = trace.curve[k];
        std::array<std::vector<P2>, 2> open;
        auto close = [&](size_t which) {
            svg.polyline(open[which], std::string("curve ") + kColorName[k],
                         std::string("stroke=\"") + kColor[k] + "\" stroke-width=\"2\" fill=\"none\"");
            open[which].clear();
        };
        size_t last_count = 0;
        for (int s = 0; s <= kSamples; ++s) {
            double x = vp.xmin + (vp.xmax - vp.xmin) * s / kSamples;
            auto ys = y_roots(b, x);
            if (ys.size() != last_count) {
                close(0);
                close(1);
            }
            last_count = ys.size();
            for (size_t r = 0; r < 2; ++r) {
                if (r >= ys.size()) continue;
                double y = ys[r];
                double margin = vp.ymax - vp.ymin;
                if (y < vp.ymin - margin || y > vp.ymax + margin) {
                    close(r);
                    continue;
                }
                y = std::clamp(y, vp.ymin - 0.05 * margin, vp.ymax + 0.05 * margin);
                open[r].push_back(to_px(x, y));
            }
        }
        close(0);
        close(1);
    }

    // Vertices.
    int index = 0;
    for (const auto& v : vertices) {
        P2 c = frame.coords({v.x.mid_double(), v.y.mid_double(), v.z.mid_double()});
        P2 px = to_px(c[0], c[1]);
        svg.out() << "<circle class=\"vertex\" cx=\"" << num(px[0]) << "\" cy=\"" << num(px[1])
                  << "\" r=\"4\" fill=\"black\"/>\n";
        if (options.labels)
            svg.out() << "<text x=\"" << num(px[0] + 6) << "\" y=\"" << num(px[1] - 6) << "\" font-size=\"11\">" << index
                      << "</text>\n";
        ++index;
    }
    return svg.finish();
}

std::string render_configuration_svg(const Configuration& c, const RenderOptions& options) {
    const double size = options.width, mid = size / 2, radius = size * 0.42;
    Svg svg(size, size);
    // End p sits on the circle; the 16 ends are spread evenly, four per side,
    // with side k centered on angle k * 90 degrees.
    auto end_angle = [](int p) { return (p - 1.5) * std::numbers::pi / 8; };
    auto on_circle = [&](double th, double r) { return P2{mid + r * std::cos(th), mid - r * std::sin(th)}; };
    auto o = build_overlay(c);
    for (int p = 0; p < 16; ++p) {
        std::string cls = "vd2";
        std::string color = "#bbbbbb";
        if (o) {
            int f = o->arc_face[static_cast<size_t>(p)];
            FaceLabel l = o->faces[static_cast<size_t>(f)].label;
            if (l == FaceLabel::NVD) {
                cls = "nvd";
                color = kNearestTint;
            } else if (l == FaceLabel::FVD) {
                cls = "fvd";
                color = kFarthestTint;
            }
        }
        std::vector<P2> arc;
        for (int k = 0; k <= 16; ++k) arc.push_back(on_circle(end_angle(p) + k / 16.0 * std::numbers::pi / 8, radius));
        svg.polyline(arc, "boundary " + cls, "stroke=\"" + color + "\" stroke-width=\"8\" fill=\"none\"");
    }
    // Vertices on an inner ring, in id order.
    int nv = c.vertex_count();
    std::vector<P2> vpos;
    for (int v = 0; v < nv; ++v) vpos.push_back(on_circle(2 * std::numbers::pi * (v + 0.5) / std::max(nv, 1), radius * 0.45));
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) {
            std::vector<P2> pts;
            pts.push_back(on_circle(end_angle(c.position_of({col, b, 0})), radius));
            for (int v : c.sequences[static_cast<size_t>(col)][static_cast<size_t>(b)]) pts.push_back(vpos[static_cast<size_t>(v)]);
            pts.push_back(on_circle(end_angle(c.position_of({col, b, 1})), radius));
            svg.polyline(pts, std::string("branch ") + kColorName[col],
                         std::string("stroke=\"") + kColor[col] + "\" stroke-width=\"2\" fill=\"none\"");
        }
    for (int v = 0; v < nv; ++v) {
        const P2& p = vpos[static_cast<size_t>(v)];
        svg.out() << "<circle class=\"vertex\" cx=\"" << num(p[0]) << "\" cy=\"" << num(p[1]) << "\" r=\"4\" fill=\"black\"/>\n";
        if (options.labels)
            svg.out() << "<text x=\"" << num(p[0] + 6) << "\" y=\"" << num(p[1] - 6) << "\" font-size=\"11\">" << v << "</text>\n";
    }
    return svg.finish();
}

std::string render_gamma_svg(const SphericalMap& map, const RenderOptions& options) {
    const double size = options.width / 2.0, radius = size * 0.45;
    Svg svg(options.width, size);
    // Orthographic views from +z (left) and -z (right, mirrored so both read from outside).
    auto project = [&](const Direction& d, int half) {
        double cx = size * (half + 0.5), cy = size / 2;
        double x = half == 0 ? d[0] : -d[0];
        return P2{cx + radius * x, cy - radius * d[1]};
    };
    for (int half = 0; half < 2; ++half) {
        svg.out() << "<circle class=\"horizon\" cx=\"" << num(size * (half + 0.5)) << "\" cy=\"" << num(size / 2)
                  << "\" r=\"" << num(radius) << "\" stroke=\"#888888\" fill=\"none\"/>\n";
        for (size_t e = 0; e < map.edge_paths.size(); ++e) {
            std::vector<P2> run;
            const auto& tied = map.edge_lines[e];
            std::string cls = "gamma-edge l" + std::to_string(tied[0] + 1) + std::to_string(tied[1] + 1);
            for (const auto& d : map.edge_paths[e]) {
                bool visible = half == 0 ? d[2] >= 0 : d[2] <= 0;
                if (visible) {
                    run.push_back(project(d, half));
                } else {
                    svg.polyline(run, cls, "stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"");
                    run.clear();
                }
            }
            svg.polyline(run, cls, "stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"");
        }
        for (const auto& d : map.vertex_dirs) {
            bool visible = half == 0 ? d[2] >= 0 : d[2] <= 0;
            if (!visible) continue;
            P2 p = project(d, half);
            svg.out() << "<circle class=\"gamma-vertex\" cx=\"" << num(p[0]) << "\" cy=\"" << num(p[1])
                      << "\" r=\"3\" fill=\"black\"/>\n";
        }
    }
    return svg.finish();
}

}  // namespace quadline
