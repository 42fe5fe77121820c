#include "quadline/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace quadline {

namespace {

Direction to_direction(const QVec& v) { return {v.x.get_d(), v.y.get_d(), v.z.get_d()}; }

double dot3(const Direction& a, const Direction& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Direction unit3(const Direction& a) {
    double n = std::sqrt(dot3(a, a));
    return {a[0] / n, a[1] / n, a[2] / n};
}

Rational squared_distance(const Line& l, const QVec& x) {
    QVec c = cross(x - l.point, l.dir);
    return dot(c, c) / dot(l.dir, l.dir);
}

std::string pair_name(int slot) {
    auto [i, j] = kSlotPairs[static_cast<size_t>(slot)];
    return std::to_string(i + 1) + "," + std::to_string(j + 1);
}

// |v.u| for each unit line direction: the smallest belongs to the farthest line.
std::array<double, 4> rates(const std::array<Direction, 4>& u, const Direction& v) {
    std::array<double, 4> r{};
    for (size_t m = 0; m < 4; ++m) r[m] = std::fabs(dot3(v, u[m]));
    return r;
}

// Farthest line by growth rate, and the gap to the runner-up.
std::pair<int, double> rate_winner(const std::array<Direction, 4>& u, const Direction& v) {
    auto r = rates(u, v);
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return r[static_cast<size_t>(a)] < r[static_cast<size_t>(b)]; });
    return {idx[0], r[static_cast<size_t>(idx[1])] - r[static_cast<size_t>(idx[0])]};
}

// Winding number of a closed spherical polyline around v, in the
// stereographic projection from p.
int winding(const std::vector<Direction>& loop, const Direction& v, const Direction& p) {
    Direction e1 = unit3(std::abs(p[0]) < 0.9 ? Direction{1 - p[0] * p[0], -p[0] * p[1], -p[0] * p[2]}
                                               : Direction{-p[1] * p[0], 1 - p[1] * p[1], -p[1] * p[2]});
    Direction e2{p[1] * e1[2] - p[2] * e1[1], p[2] * e1[0] - p[0] * e1[2], p[0] * e1[1] - p[1] * e1[0]};
    auto project = [&](const Direction& x) {
        double s = 1 - dot3(x, p);
        return std::array<double, 2>{dot3(x, e1) / s, dot3(x, e2) / s};
    };
    auto c = project(v);
    double total = 0;
    for (size_t k = 0; k < loop.size(); ++k) {
        auto a = project(loop[k]);
        auto b = project(loop[(k + 1) % loop.size()]);
        double ax = a[0] - c[0], ay = a[1] - c[1], bx = b[0] - c[0], by = b[1] - c[1];
        total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    }
    return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

// Deterministic, well spread reference directions.
const std::vector<Direction>& reference_directions() {
    static const std::vector<Direction> dirs = [] {
        std::vector<Direction> out;
        constexpr int kCount = 256;
        const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
        for (int k = 0; k < kCount; ++k) {
            double z = 1 - (2.0 * k + 1) / kCount;
            double r = std::sqrt(1 - z * z);
            out.push_back({r * std::cos(golden * k), r * std::sin(golden * k), z});
        }
        return out;
    }();
    return dirs;
}

}  // namespace

unsigned anomaly_poles(const LineSet& lines) {
    unsigned bits = 0;
    const Rational r1(1000000), r2(1000000000);
    for (int s = 0; s < 6; ++s) {
        auto [i, j] = kSlotPairs[static_cast<size_t>(s)];
        Line li = lines.line(i), lj = lines.line(j);
        QVec pole = cross(li.dir, lj.dir);
        // d_i^2 - d_j^2 is linear in the radius along a common normal.
        auto gap = [&](const Rational& r) -> Rational {
            QVec x = r * pole;
            return squared_distance(li, x) - squared_distance(lj, x);
        };
        Rational slope = (gap(r2) - gap(r1)) / (r2 - r1);
        if (sgn(slope) == 0)
            throw DegenerateInput(4, "offset term vanishes at the common normal of lines " + pair_name(s));
        if (sgn(slope) > 0) bits |= 1U << s;
    }
    return bits;
}

int farthest_line_at(const LineSet& lines, const Direction& v) {
    const Rational radius(1000000);
    QVec x{radius * Rational(v[0]), radius * Rational(v[1]), radius * Rational(v[2])};
    int best = 0;
    Rational best_d;
    for (int m = 0; m < 4; ++m) {
        Rational d = squared_distance(lines.line(m), x);
        if (m == 0 || d > best_d) {
            best = m;
            best_d = d;
        }
    }
    return best;
}

SphericalMap gaussian_map_fvd(const LineSet& lines) {
    SphericalMap out;
    for (int m = 0; m < 4; ++m) out.line_dirs[static_cast<size_t>(m)] = unit3(to_direction(lines.line(m).dir));
    out.poles = anomaly_poles(lines);
    auto picture = picture_at_infinity(out.line_dirs, out.poles);
    if (!picture) throw DegenerateInput(4, "line directions too close to a tie at infinity");
    std::string why;
    auto map = gamma_from_circles(picture->circles, FaceLabel::FVD, &why);
    if (!map) throw ClassificationError("gaussian-map", why);
    out.map = std::move(*map);
    // Same traversal as gamma_from_circles: slot-major, arcs in circle order.
    std::map<int, int> vid;
    out.vertex_dirs.resize(static_cast<size_t>(out.map.vertex_count));
    for (int s = 0; s < 6; ++s) {
        const auto& c = picture->circles[static_cast<size_t>(s)];
        const auto& g = picture->geometry[static_cast<size_t>(s)];
        for (int p = 0; p < 16; ++p) {
            if (c.arc[static_cast<size_t>(p)] != FaceLabel::FVD) continue;
            for (int q : {p, (p + 1) % 16}) {
                auto [it, fresh] = vid.emplace(c.end[static_cast<size_t>(q)], static_cast<int>(vid.size()));
                if (fresh) out.vertex_dirs.at(static_cast<size_t>(it->second)) = g.end_dir[static_cast<size_t>(q)];
            }
            out.edge_lines.push_back(kSlotPairs[static_cast<size_t>(s)]);
            out.edge_paths.push_back(g.arc_path[static_cast<size_t>(p)]);
        }
    }
    std::array<int, 4> seen{};
    for (int line : out.map.face_line) out.face_cell.push_back(seen[static_cast<size_t>(line)]++);
    return out;
}

int SphericalMap::locate(const Direction& v0) const {
    constexpr double kEdgeMargin = 1e-3, kReferenceMargin = 0.05;
    Direction v = unit3(v0);
    if (rate_winner(line_dirs, v).second < kEdgeMargin) return -1;
    std::vector<std::vector<Direction>> loops;
    for (const auto& f : map.faces) {
        std::vector<Direction> loop;
        for (int d : f) {
            const auto& path = edge_paths.at(static_cast<size_t>(d / 2));
            if (d % 2 == 0)
                loop.insert(loop.end(), path.begin(), path.end() - 1);
            else
                loop.insert(loop.end(), path.rbegin(), path.rend() - 1);
        }
        loops.push_back(std::move(loop));
    }
    // Relative to a reference p, the winding of face f around v is
    // +-([v in f] - [p in f]); a reference with another farthest line tells
    // the two nonzero faces apart.
    for (const auto& p : reference_directions()) {
        auto [ref_line, gap] = rate_winner(line_dirs, p);
        if (gap < kReferenceMargin) continue;
        std::vector<int> nonzero;
        for (size_t f = 0; f < loops.size(); ++f)
            if (winding(loops[f], v, p) != 0) nonzero.push_back(static_cast<int>(f));
        if (nonzero.empty()) continue;
        if (nonzero.size() != 2) return -1;
        bool a = map.face_line[static_cast<size_t>(nonzero[0])] == ref_line;
        bool b = map.face_line[static_cast<size_t>(nonzero[1])] == ref_line;
        if (a && b) continue;
        if (!a && !b) return -1;
        return a ? nonzero[1] : nonzero[0];
    }
    return -1;
}

TwistReduction reduce_full_twists(const ConfigurationTuple& traced) {
    TwistReduction out;
    out.base = traced;
    std::vector<int> original(static_cast<size_t>(traced.vertex_count()));
    for (size_t v = 0; v < original.size(); ++v) original[v] = static_cast<int>(v);
    auto full_on = [&](int slot, int lo, int hi) {
        for (const auto& t : detect_twists(out.base.slots[static_cast<size_t>(slot)]))
            if (t.kind == Twist::Kind::Full && std::min(t.vertices[0], t.vertices[1]) == lo && std::max(t.vertices[0], t.vertices[1]) == hi) return true;
        return false;
    };
    for (bool progress = true; progress;) {
        progress = false;
        for (int s = 0; s < 6 && !progress; ++s)
            for (const auto& t : detect_twists(out.base.slots[static_cast<size_t>(s)])) {
                if (t.kind != Twist::Kind::Full) continue;
                const int lo = std::min(t.vertices[0], t.vertices[1]), hi = std::max(t.vertices[0], t.vertices[1]);
                LocatedTwist found;
                for (int s2 = 0; s2 < 6; ++s2)
                    if (full_on(s2, lo, hi)) found.slots.push_back(s2);
                if (found.slots.size() < 2) continue;
                for (auto& c : out.base.slots) {
                    auto reduced = remove_vertex_pair(c, lo, hi);
                    if (!reduced) throw ClassificationError("full-twists", "removing a full twist breaks a bisector");
                    c = std::move(*reduced);
                }
                found.vertices = {original[static_cast<size_t>(lo)], original[static_cast<size_t>(hi)]};
                original.erase(original.begin() + hi);
                original.erase(original.begin() + lo);
                out.twists.push_back(std::move(found));
                progress = true;
                break;
            }
    }
    for (int s = 0; s < 6; ++s)
        for (const auto& t : detect_twists(out.base.slots[static_cast<size_t>(s)]))
            if (t.kind == Twist::Kind::Full)
                throw ClassificationError("full-twists", "full twist confirmed on a single bisector " + pair_name(s));
    std::sort(out.twists.begin(), out.twists.end(),
              [](const LocatedTwist& a, const LocatedTwist& b) { return a.vertices < b.vertices; });
    return out;
}

int match_atlas(const Atlas& atlas, const SphericalMap& map, const std::array<Configuration, 6>& configs) {
    const AtlasEntry* by_map = atlas.by_gamma_farthest(canonical_code(map.map));
    ConfigurationTuple t;
    t.slots = configs;
    const AtlasEntry* by_tuple = atlas.by_key(canonical_key(reduce_full_twists(t).base));
    if (!by_map && !by_tuple) throw ClassificationError("match", "topology outside the atlas (both routes agree)");
    if (!by_map) throw ClassificationError("match", "farthest map at infinity is not in the atlas, tuple route gives " + by_tuple->label);
    if (!by_tuple) throw ClassificationError("match", "reduced tuple is not in the atlas, map route gives " + by_map->label);
    if (by_map->id != by_tuple->id)
        throw ClassificationError("match", "map route gives " + by_map->label + ", tuple route gives " + by_tuple->label);
    return by_map->id;
}

namespace {

TopologyLabel label_from(const VertexSolver& solver, const ConfigurationTuple& traced, const Atlas& atlas,
                         int base_id) {
    const AtlasEntry* base = atlas.by_id(base_id);
    if (!base) throw ClassificationError("full-twists", "unknown atlas id " + std::to_string(base_id));
    auto reduction = reduce_full_twists(traced);
    if (canonical_key(reduction.base) != base->key)
        throw ClassificationError("full-twists", "input does not reduce to " + base->label);
    TopologyLabel label;
    label.base_id = base->id;
    label.base_label = base->label;
    label.base_vertices = base->vertices;
    label.total_vertices = solver.count();
    if (label.total_vertices != base->vertices + 2 * static_cast<int>(reduction.twists.size()))
        throw ClassificationError("full-twists", "vertex count " + std::to_string(label.total_vertices) +
                                                     " is not the base count plus two per twist");
    auto boxes = solver.boxes(128);
    for (auto& t : reduction.twists) {
        for (size_t k = 0; k < 2; ++k) {
            const VertexBox& b = boxes.at(static_cast<size_t>(t.vertices[k]));
            size_t axis = 0;
            for (const Interval* iv : {&b.x, &b.y, &b.z}) {
                t.boxes[k][axis] = {std::nextafter(iv->lower().get_d(), -HUGE_VAL),
                                    std::nextafter(iv->upper().get_d(), HUGE_VAL)};
                ++axis;
            }
        }
    }
    label.full_twists = std::move(reduction.twists);
    return label;
}

}  // namespace

TopologyLabel locate_full_twists(const LineSet& lines, const Atlas& atlas, int base_id) {
    VertexSolver solver(lines);
    return label_from(solver, trace_tuple(lines, solver), atlas, base_id);
}

ClassificationReport classify(const LineSet& lines, const Atlas& atlas) {
    ClassificationReport r;
    r.general_position = check_general_position(lines);
    if (!r.general_position.pass) throw DegenerateInput(r.general_position.condition, r.general_position.detail);
    VertexSolver solver(lines);
    r.vertex_count = solver.count();
    ConfigurationTuple traced = trace_tuple(lines, solver);
    r.configurations = traced.slots;
    SphericalMap map = gaussian_map_fvd(lines);
    int id = match_atlas(atlas, map, r.configurations);
    r.label = label_from(solver, traced, atlas, id);
    std::string why;
    auto summary = assemble_diagram(traced, &why);
    if (!summary) throw ClassificationError("assemble", why);
    if (canonical_code(summary->gamma_farthest) != canonical_code(map.map))
        throw ClassificationError("assemble", "glued farthest map differs from the map of directions");
    r.nearest = summary->nearest;
    r.farthest = summary->farthest;
    r.farthest_cells_per_line = summary->farthest_cells_per_line;
    r.bounded_faces = summary->bounded_faces;
    r.gamma_nearest = std::move(summary->gamma_nearest);
    r.gamma_farthest = std::move(summary->gamma_farthest);
    return r;
}

// ---------------------------------------------------------------- report text

std::string format_gamma(const GammaMap& m) {
    std::ostringstream os;
    os << m.vertex_count << " " << m.edges.size() << " " << m.faces.size() << "\n";
    for (const auto& e : m.edges) os << "edge " << e[0] << " " << e[1] << "\n";
    for (size_t f = 0; f < m.faces.size(); ++f) {
        os << "face " << m.face_line[f] + 1;
        for (int d : m.faces[f]) os << " " << d;
        os << "\n";
    }
    return os.str();
}

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string format_report(const ClassificationReport& r) {
    std::ostringstream os;
    os << "quadline-report v1\n";
    const auto& gp = r.general_position;
    os << "general-position " << (gp.pass ? "pass" : "fail") << " " << gp.condition;
    if (!gp.detail.empty()) os << " " << gp.detail;
    os << "\n";
    os << "vertices " << r.vertex_count << "\n";
    for (int s = 0; s < 6; ++s) os << "bisector " << pair_name(s) << " " << encode(r.configurations[static_cast<size_t>(s)]) << "\n";
    os << "topology " << r.label.base_id << " " << r.label.base_label << " " << r.label.base_vertices << "\n";
    os << "full-twists " << r.label.full_twists.size() << "\n";
    for (const auto& t : r.label.full_twists) {
        os << "twist " << t.vertices[0] << " " << t.vertices[1] << " on";
        for (int s : t.slots) os << " " << pair_name(s);
        os << " box";
        for (const auto& b : t.boxes)
            for (const auto& range : b) os << " " << fmt_double(range[0]) << " " << fmt_double(range[1]);
        os << "\n";
    }
    os << "total-vertices " << r.label.total_vertices << "\n";
    os << "nearest-counts " << r.nearest.edges << " " << r.nearest.faces << " " << r.nearest.cells << "\n";
    os << "farthest-counts " << r.farthest.edges << " " << r.farthest.faces << " " << r.farthest.cells << "\n";
    os << "farthest-cells-per-line";
    for (int c : r.farthest_cells_per_line) os << " " << c;
    os << "\n";
    os << "bounded-faces " << r.bounded_faces << "\n";
    os << "gamma-nearest " << format_gamma(r.gamma_nearest);
    os << "gamma-farthest " << format_gamma(r.gamma_farthest);
    return os.str();
}

namespace {

class ReportReader {
public:
    explicit ReportReader(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) lines_.push_back(line);
    }

    bool done() const { return next_ >= lines_.size(); }
    int lineno() const { return static_cast<int>(next_); }

    // Next line split into words; the first must be `word`.
    std::optional<std::vector<std::string>> expect(const std::string& word) {
        if (done()) return std::nullopt;
        std::istringstream in(lines_[next_]);
        std::vector<std::string> out;
        for (std::string w; in >> w;) out.push_back(w);
        if (out.empty() || out[0] != word) return std::nullopt;
        ++next_;
        return out;
    }
    const std::string& raw() const { return lines_[next_ - 1]; }

private:
    std::vector<std::string> lines_;
    size_t next_ = 0;
};

template <class T>
bool number(const std::string& s, T& out) {
    if constexpr (std::is_same_v<T, double>) {
        char* end = nullptr;
        out = std::strtod(s.c_str(), &end);
        return end && *end == '\0' && !s.empty();
    } else {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && p == s.data() + s.size();
    }
}

bool read_gamma(ReportReader& in, const std::vector<std::string>& head, GammaMap& m) {
    int ne = 0, nf = 0;
    if (head.size() != 4 || !number(head[1], m.vertex_count) || !number(head[2], ne) || !number(head[3], nf)) return false;
    for (int e = 0; e < ne; ++e) {
        auto w = in.expect("edge");
        std::array<int, 2> edge{};
        if (!w || w->size() != 3 || !number((*w)[1], edge[0]) || !number((*w)[2], edge[1])) return false;
        m.edges.push_back(edge);
    }
    for (int f = 0; f < nf; ++f) {
        auto w = in.expect("face");
        int line = 0;
        if (!w || w->size() < 2 || !number((*w)[1], line)) return false;
        std::vector<int> darts;
        for (size_t k = 2; k < w->size(); ++k) {
            int d = 0;
            if (!number((*w)[k], d)) return false;
            darts.push_back(d);
        }
        m.faces.push_back(std::move(darts));
        m.face_line.push_back(line - 1);
    }
    return true;
}

}  // namespace

ParsedReport parse_report(std::string_view text) {
    ParsedReport out;
    ReportReader in(text);
    ClassificationReport r;
    auto fail = [&](const std::string& what) {
        out.error = {in.lineno() + 1, 1, "expected " + what};
        return out;
    };
    if (!in.expect("quadline-report")) return fail("header 'quadline-report v1'");
    auto gp = in.expect("general-position");
    if (!gp || gp->size() < 3 || !number((*gp)[2], r.general_position.condition)) return fail("general-position");
    r.general_position.pass = (*gp)[1] == "pass";
    // the detail is free text after the condition number
    std::string prefix = "general-position " + (*gp)[1] + " " + (*gp)[2];
    if (in.raw().size() > prefix.size()) r.general_position.detail = in.raw().substr(prefix.size() + 1);
    auto v = in.expect("vertices");
    if (!v || v->size() != 2 || !number((*v)[1], r.vertex_count)) return fail("vertices");
    for (int s = 0; s < 6; ++s) {
        auto b = in.expect("bisector");
        if (!b || b->size() != 3 || (*b)[1] != pair_name(s)) return fail("bisector " + pair_name(s));
        auto c = decode((*b)[2]);
        if (!c) return fail("configuration encoding");
        r.configurations[static_cast<size_t>(s)] = *c;
    }
    auto t = in.expect("topology");
    if (!t || t->size() != 4 || !number((*t)[1], r.label.base_id) || !number((*t)[3], r.label.base_vertices))
        return fail("topology");
    r.label.base_label = (*t)[2];
    auto ft = in.expect("full-twists");
    size_t twists = 0;
    if (!ft || ft->size() != 2 || !number((*ft)[1], twists)) return fail("full-twists");
    for (size_t k = 0; k < twists; ++k) {
        auto w = in.expect("twist");
        if (!w || w->size() < 4 || (*w)[3] != "on") return fail("twist");
        LocatedTwist lt;
        if (!number((*w)[1], lt.vertices[0]) || !number((*w)[2], lt.vertices[1])) return fail("twist vertices");
        size_t i = 4;
        for (; i < w->size() && (*w)[i] != "box"; ++i) {
            int slot = -1;
            for (int s = 0; s < 6; ++s)
                if (pair_name(s) == (*w)[i]) slot = s;
            if (slot < 0) return fail("bisector pair");
            lt.slots.push_back(slot);
        }
        if (i + 13 != w->size()) return fail("twelve box coordinates");
        for (size_t b = 0; b < 2; ++b)
            for (size_t a = 0; a < 3; ++a)
                for (size_t e = 0; e < 2; ++e)
                    if (!number((*w)[i + 1 + 6 * b + 2 * a + e], lt.boxes[b][a][e])) return fail("box coordinate");
        r.label.full_twists.push_back(std::move(lt));
    }
    auto tv = in.expect("total-vertices");
    if (!tv || tv->size() != 2 || !number((*tv)[1], r.label.total_vertices)) return fail("total-vertices");
    for (auto [name, counts] : {std::pair{"nearest-counts", &r.nearest}, std::pair{"farthest-counts", &r.farthest}}) {
        auto w = in.expect(name);
        if (!w || w->size() != 4 || !number((*w)[1], counts->edges) || !number((*w)[2], counts->faces) ||
            !number((*w)[3], counts->cells))
            return fail(name);
    }
    auto pl = in.expect("farthest-cells-per-line");
    if (!pl || pl->size() != 5) return fail("farthest-cells-per-line");
    for (size_t m = 0; m < 4; ++m)
        if (!number((*pl)[m + 1], r.farthest_cells_per_line[m])) return fail("cell count");
    auto bf = in.expect("bounded-faces");
    if (!bf || bf->size() != 2 || !number((*bf)[1], r.bounded_faces)) return fail("bounded-faces");
    for (auto [name, m] : {std::pair{"gamma-nearest", &r.gamma_nearest}, std::pair{"gamma-farthest", &r.gamma_farthest}}) {
        auto w = in.expect(name);
        if (!w || !read_gamma(in, *w, *m)) return fail(name);
    }
    if (!in.done()) return fail("end of report");
    out.value = std::move(r);
    return out;
}

}  // namespace quadline
