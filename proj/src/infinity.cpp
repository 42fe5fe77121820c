#include "quadline/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_set>
#include <vector>

namespace quadline {

namespace {

double dot(const Direction& a, const Direction& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Direction cross(const Direction& a, const Direction& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Direction combine(double s, const Direction& a, double t, const Direction& b) {
    return {s * a[0] + t * b[0], s * a[1] + t * b[1], s * a[2] + t * b[2]};
}

Direction unit(const Direction& a) {
    double n = std::sqrt(dot(a, a));
    return {a[0] / n, a[1] / n, a[2] / n};
}

constexpr double kMargin = 1e-9;

// Signs of the host lines on the right, top, left and bottom sides.
constexpr std::array<std::array<int, 2>, 4> kSides{{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};

std::optional<PictureAtInfinity> build_picture(const std::array<Direction, 4>& dirs, unsigned poles, bool with_paths) {
    std::array<Direction, 4> u;
    for (size_t m = 0; m < 4; ++m) u[m] = unit(dirs[m]);
    PictureAtInfinity out;
    for (int s = 0; s < 6; ++s) {
        auto [i, j] = kSlotPairs[static_cast<size_t>(s)];
        const Direction& ui = u[static_cast<size_t>(i)];
        const Direction& uj = u[static_cast<size_t>(j)];
        Direction pole = unit(cross(ui, uj));
        if (poles >> s & 1U) pole = combine(-1, pole, 0, pole);
        auto& circle = out.circles[static_cast<size_t>(s)];
        auto& geom = out.geometry[static_cast<size_t>(s)];
        // Each side is a half circle from `start` through `mid` to -start.
        std::array<Direction, 4> starts, mids;
        std::array<std::array<double, 4>, 4> angle{};
        for (int side = 0; side < 4; ++side) {
            auto [a, b] = kSides[static_cast<size_t>(side)];
            Direction mid = unit(combine(a, ui, a * (a == b ? 1 : -1), uj));
            // right and left run from -pole to +pole, top and bottom back
            Direction start = side % 2 == 0 ? combine(-1, pole, 0, pole) : pole;
            starts[static_cast<size_t>(side)] = start;
            mids[static_cast<size_t>(side)] = mid;
            auto at_angle = [&](double th) { return combine(std::cos(th), start, std::sin(th), mid); };
            std::vector<std::pair<double, int>> ends;
            for (int col = 0; col < 2; ++col) {
                int third = missing_line(s, 1 - col);
                int miss = missing_line(s, col);
                for (int pm : {-1, 1}) {
                    Direction w = combine(1, u[static_cast<size_t>(third)], -pm, ui);
                    double th = std::atan2(-dot(start, w), dot(mid, w));
                    if (th < 0) th += std::numbers::pi;
                    if (th < kMargin || th > std::numbers::pi - kMargin) return std::nullopt;
                    Direction v = at_angle(th);
                    int code = 0, bit = 0;
                    for (int line = 0; line < 4; ++line) {
                        if (line == miss) continue;
                        double d = dot(v, u[static_cast<size_t>(line)]);
                        if (std::fabs(d) < kMargin) return std::nullopt;
                        if (d > 0) code |= 1 << bit;
                        ++bit;
                    }
                    ends.push_back({th, miss * 8 + code});
                }
            }
            std::sort(ends.begin(), ends.end());
            for (size_t r = 0; r < 4; ++r) {
                size_t p = static_cast<size_t>(side) * 4 + r;
                circle.end[p] = ends[r].second;
                angle[static_cast<size_t>(side)][r] = ends[r].first;
                geom.end_dir[p] = at_angle(ends[r].first);
                if (r == 3) {
                    // across the corner both host lines are nearly orthogonal: farthest
                    circle.arc[p] = FaceLabel::FVD;
                    continue;
                }
                if (ends[r + 1].first - ends[r].first < kMargin) return std::nullopt;
                Direction v = at_angle((ends[r].first + ends[r + 1].first) / 2);
                double fi = std::fabs(dot(v, ui));
                double fk = std::fabs(dot(v, u[static_cast<size_t>(missing_line(s, 1))]));
                double fl = std::fabs(dot(v, u[static_cast<size_t>(missing_line(s, 0))]));
                // a larger |v.u| means the line is nearer far out along v
                if (fk < fi && fl < fi)
                    circle.arc[p] = FaceLabel::NVD;
                else if (fk > fi && fl > fi)
                    circle.arc[p] = FaceLabel::FVD;
                else
                    circle.arc[p] = FaceLabel::VD2;
            }
        }
        auto sample = [&](std::vector<Direction>& path, int side, double from, double to) {
            constexpr double kStep = 0.01;
            int pieces = std::max(1, static_cast<int>(std::ceil((to - from) / kStep)));
            const Direction& st = starts[static_cast<size_t>(side)];
            const Direction& md = mids[static_cast<size_t>(side)];
            for (int k = path.empty() ? 0 : 1; k <= pieces; ++k) {
                double th = from + (to - from) * k / pieces;
                path.push_back(combine(std::cos(th), st, std::sin(th), md));
            }
        };
        if (!with_paths) continue;
        for (int side = 0; side < 4; ++side)
            for (size_t r = 0; r < 4; ++r) {
                auto& path = geom.arc_path[static_cast<size_t>(side) * 4 + r];
                const auto& here = angle[static_cast<size_t>(side)];
                if (r < 3) {
                    sample(path, side, here[r], here[r + 1]);
                } else {
                    // through the pole into the next side
                    sample(path, side, here[3], std::numbers::pi);
                    sample(path, (side + 1) % 4, 0, angle[static_cast<size_t>((side + 1) % 4)][0]);
                }
            }
    }
    return out;
}

}  // namespace

std::optional<PictureAtInfinity> picture_at_infinity(const std::array<Direction, 4>& dirs, unsigned poles) {
    return build_picture(dirs, poles, true);
}

std::optional<std::array<CircleData, 6>> circles_at_infinity(const std::array<Direction, 4>& dirs, unsigned poles) {
    auto picture = build_picture(dirs, poles, false);
    if (!picture) return std::nullopt;
    return picture->circles;
}

const std::set<std::pair<std::string, std::string>>& realizable_infinity_types() {
    static const auto types = [] {
        std::set<std::pair<std::string, std::string>> found;
        std::unordered_set<std::string> seen_raw;
        std::mt19937_64 rng(20240521);
        std::normal_distribution<double> normal;
        constexpr long kQuiet = 50000;
        long since_new = 0;
        while (since_new < kQuiet) {
            ++since_new;
            std::array<Direction, 4> dirs;
            for (auto& d : dirs) d = {normal(rng), normal(rng), normal(rng)};
            auto circles = circles_at_infinity(dirs, static_cast<unsigned>(rng() % 64));
            if (!circles) continue;
            // Many samples repeat the same circle data; canonical codes are the costly part.
            std::string raw;
            for (const auto& c : *circles)
                for (size_t p = 0; p < 16; ++p) {
                    raw += static_cast<char>(c.end[p]);
                    raw += static_cast<char>(c.arc[p]);
                }
            if (!seen_raw.insert(std::move(raw)).second) continue;
            auto near = gamma_from_circles(*circles, FaceLabel::NVD);
            auto far = gamma_from_circles(*circles, FaceLabel::FVD);
            if (!near || !far) continue;
            if (found.emplace(canonical_code(*near), canonical_code(*far)).second) since_new = 0;
        }
        return found;
    }();
    return types;
}

}  // namespace quadline
