#include "quadline/configuration.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quadline {

std::string to_string(FaceLabel l) {
    switch (l) {
        case FaceLabel::NVD: return "NVD";
        case FaceLabel::FVD: return "FVD";
        case FaceLabel::VD2: return "VD2";
    }
    return "?";
}

int Configuration::position_of(EndToken t) const {
    auto packed = t.pack();
    for (int p = 0; p < 16; ++p)
        if (order[static_cast<std::size_t>(p)] == packed) return p;
    return -1;
}

int Configuration::branch_at(int color, int v) const {
    for (int b = 0; b < 4; ++b) {
        const auto& s = sequences[static_cast<std::size_t>(color)][static_cast<std::size_t>(b)];
        if (std::find(s.begin(), s.end(), v) != s.end()) return b;
    }
    return -1;
}

namespace {

// Half-edge structure of a configuration. Edges: 16 circle arcs, then branch
// segments; half-edge 2e runs forward (arc: p -> p+1, segment: along the branch).
struct MapData {
    std::vector<int> origin;                  // per half-edge
    std::vector<std::vector<int>> rot;        // per node, outgoing half-edges counterclockwise
    std::array<std::array<int, 4>, 2> first_segment{};  // edge id of segment 0
    std::array<std::array<int, 4>, 2> segments{};       // number of segments
    std::vector<int> face_of;                 // per half-edge
    std::vector<std::vector<int>> faces;      // all faces, including the outer one
    int outer = -1;

    int seg_edge(int c, int b, int k) const {
        return first_segment[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] + k;
    }
    int target(int h) const { return origin[static_cast<std::size_t>(h ^ 1)]; }
};

bool structurally_sound(const Configuration& c) {
    std::array<int, 32> seen{};
    for (auto t : c.order) {
        if (t >= 16) return false;
        if (seen[t]++) return false;
    }
    for (int side = 0; side < 4; ++side) {
        int red = 0;
        for (int k = 0; k < 4; ++k) red += EndToken::unpack(c.order[static_cast<std::size_t>(side * 4 + k)]).color == 0;
        if (red != 2) return false;
    }
    int n = c.vertex_count();
    for (int color = 0; color < 2; ++color) {
        std::vector<int> count(static_cast<std::size_t>(n), 0);
        for (const auto& s : c.sequences[static_cast<std::size_t>(color)])
            for (int v : s) {
                if (v < 0 || v >= n) return false;
                ++count[static_cast<std::size_t>(v)];
            }
        for (int k : count)
            if (k != 1) return false;
    }
    for (int r : c.rotation)
        if (r != 1 && r != -1) return false;
    return true;
}

std::optional<MapData> build_map(const Configuration& c) {
    if (!structurally_sound(c)) return std::nullopt;
    MapData m;
    int n = c.vertex_count();
    int edges = 16;
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) {
            m.first_segment[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)] = edges;
            int s = static_cast<int>(c.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)].size()) + 1;
            m.segments[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)] = s;
            edges += s;
        }
    m.origin.assign(static_cast<std::size_t>(2 * edges), -1);
    m.rot.assign(static_cast<std::size_t>(16 + n), {});
    for (int p = 0; p < 16; ++p) {
        m.origin[static_cast<std::size_t>(2 * p)] = p;
        m.origin[static_cast<std::size_t>(2 * p + 1)] = (p + 1) % 16;
    }
    // position in sequence of each vertex per color
    std::vector<std::array<std::pair<int, int>, 2>> where(static_cast<std::size_t>(n));
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) {
            const auto& seq = c.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)];
            int p0 = c.position_of({col, b, 0});
            int p1 = c.position_of({col, b, 1});
            std::vector<int> nodes{p0};
            for (std::size_t i = 0; i < seq.size(); ++i) {
                nodes.push_back(16 + seq[i]);
                where[static_cast<std::size_t>(seq[i])][static_cast<std::size_t>(col)] = {b, static_cast<int>(i)};
            }
            nodes.push_back(p1);
            for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
                int e = m.seg_edge(col, b, static_cast<int>(k));
                m.origin[static_cast<std::size_t>(2 * e)] = nodes[k];
                m.origin[static_cast<std::size_t>(2 * e + 1)] = nodes[k + 1];
            }
        }
    for (int p = 0; p < 16; ++p) {
        EndToken t = EndToken::unpack(c.order[static_cast<std::size_t>(p)]);
        int seg = t.end == 0 ? 2 * m.seg_edge(t.color, t.branch, 0)
                             : 2 * m.seg_edge(t.color, t.branch, m.segments[static_cast<std::size_t>(t.color)][static_cast<std::size_t>(t.branch)] - 1) + 1;
        m.rot[static_cast<std::size_t>(p)] = {2 * p, seg, 2 * ((p + 15) % 16) + 1};
    }
    for (int v = 0; v < n; ++v) {
        auto [rb, ri] = where[static_cast<std::size_t>(v)][0];
        auto [bb, bi] = where[static_cast<std::size_t>(v)][1];
        int rp = 2 * m.seg_edge(0, rb, ri + 1), rm = 2 * m.seg_edge(0, rb, ri) + 1;
        int bp = 2 * m.seg_edge(1, bb, bi + 1), bm = 2 * m.seg_edge(1, bb, bi) + 1;
        if (c.rotation[static_cast<std::size_t>(v)] > 0) {
            m.rot[static_cast<std::size_t>(16 + v)] = {rp, bp, rm, bm};
        } else {
            m.rot[static_cast<std::size_t>(16 + v)] = {rp, bm, rm, bp};
        }
    }
    // trace faces
    m.face_of.assign(m.origin.size(), -1);
    for (std::size_t h0 = 0; h0 < m.origin.size(); ++h0) {
        if (m.face_of[h0] >= 0) continue;
        int f = static_cast<int>(m.faces.size());
        m.faces.emplace_back();
        int h = static_cast<int>(h0);
        while (m.face_of[static_cast<std::size_t>(h)] < 0) {
            m.face_of[static_cast<std::size_t>(h)] = f;
            m.faces.back().push_back(h);
            int v = m.target(h);
            const auto& r = m.rot[static_cast<std::size_t>(v)];
            auto it = std::find(r.begin(), r.end(), h ^ 1);
            if (it == r.end()) return std::nullopt;
            auto idx = static_cast<std::size_t>(it - r.begin());
            h = r[(idx + r.size() - 1) % r.size()];
        }
        if (h != static_cast<int>(h0)) return std::nullopt;
    }
    // Euler: nodes - edges + faces = 2 for a connected plane graph
    int nodes = 16 + n;
    if (nodes - edges + static_cast<int>(m.faces.size()) != 2) return std::nullopt;
    m.outer = m.face_of[1];
    if (m.faces[static_cast<std::size_t>(m.outer)].size() != 16) return std::nullopt;
    for (int p = 0; p < 16; ++p)
        if (m.face_of[static_cast<std::size_t>(2 * p + 1)] != m.outer) return std::nullopt;
    return m;
}

}  // namespace

bool arc_is_nvd(const Configuration& c, int color, int p) {
    int prev = -1, next = -1;
    for (int k = 0; k < 16; ++k) {
        int q = ((p - k) % 16 + 16) % 16;
        if (EndToken::unpack(c.order[static_cast<std::size_t>(q)]).color == color) {
            prev = q;
            break;
        }
    }
    for (int k = 1; k <= 16; ++k) {
        int q = (p + k) % 16;
        if (EndToken::unpack(c.order[static_cast<std::size_t>(q)]).color == color) {
            next = q;
            break;
        }
    }
    return prev / 4 == next / 4;
}

std::array<int, 2> middle_and_u(const Configuration& c, int color) {
    std::vector<EndToken> ring;
    for (auto t : c.order) {
        EndToken e = EndToken::unpack(t);
        if (e.color == color) ring.push_back(e);
    }
    auto pos = [&](int b, int end) {
        for (int k = 0; k < 8; ++k)
            if (ring[static_cast<std::size_t>(k)].branch == b && ring[static_cast<std::size_t>(k)].end == end) return k;
        return -1;
    };
    int middle = -1, u = -1;
    for (int b = 0; b < 4; ++b) {
        int gap = (pos(b, 1) - pos(b, 0) + 8) % 8 - 1;
        if (gap == 2 || gap == 4) {
            middle = b;
            // the U branch sits on the two-end side
            int start = gap == 2 ? pos(b, 0) : pos(b, 1);
            u = ring[static_cast<std::size_t>((start + 1) % 8)].branch;
        }
    }
    return {middle, u};
}

std::optional<Overlay> build_overlay(const Configuration& c) {
    auto m = build_map(c);
    if (!m) return std::nullopt;
    Overlay o;
    std::vector<int> remap(m->faces.size(), -1);
    for (std::size_t f = 0; f < m->faces.size(); ++f) {
        if (static_cast<int>(f) == m->outer) continue;
        remap[f] = static_cast<int>(o.faces.size());
        Overlay::Face face;
        face.half_edges = m->faces[f];
        o.faces.push_back(std::move(face));
    }
    std::vector<std::array<int, 2>> known(o.faces.size(), {-1, -1});
    for (int p = 0; p < 16; ++p) {
        int f = remap[static_cast<std::size_t>(m->face_of[static_cast<std::size_t>(2 * p)])];
        o.arc_face[static_cast<std::size_t>(p)] = f;
        o.faces[static_cast<std::size_t>(f)].bounded = false;
        for (int col = 0; col < 2; ++col) {
            int v = arc_is_nvd(c, col, p) ? 1 : 0;
            auto& k = known[static_cast<std::size_t>(f)][static_cast<std::size_t>(col)];
            if (k >= 0 && k != v) return std::nullopt;
            k = v;
        }
    }
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) {
            auto& sf = o.segment_faces[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)];
            int ns = m->segments[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)];
            sf.resize(static_cast<std::size_t>(ns));
            for (int k = 0; k < ns; ++k) {
                int e = m->seg_edge(col, b, k);
                sf[static_cast<std::size_t>(k)] = {remap[static_cast<std::size_t>(m->face_of[static_cast<std::size_t>(2 * e)])],
                                                    remap[static_cast<std::size_t>(m->face_of[static_cast<std::size_t>(2 * e + 1)])]};
            }
        }
    // propagate per-curve labels across segments
    bool changed = true;
    while (changed) {
        changed = false;
        for (int col = 0; col < 2; ++col)
            for (int b = 0; b < 4; ++b)
                for (const auto& lr : o.segment_faces[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)]) {
                    for (int side = 0; side < 2; ++side) {
                        int f = lr[static_cast<std::size_t>(side)], g = lr[static_cast<std::size_t>(1 - side)];
                        for (int cc = 0; cc < 2; ++cc) {
                            int kf = known[static_cast<std::size_t>(f)][static_cast<std::size_t>(cc)];
                            if (kf < 0) continue;
                            int expect = cc == col ? 1 - kf : kf;
                            auto& kg = known[static_cast<std::size_t>(g)][static_cast<std::size_t>(cc)];
                            if (kg < 0) {
                                kg = expect;
                                changed = true;
                            } else if (kg != expect) {
                                return std::nullopt;
                            }
                        }
                    }
                }
    }
    for (std::size_t f = 0; f < o.faces.size(); ++f) {
        auto& face = o.faces[f];
        if (known[f][0] < 0 || known[f][1] < 0) return std::nullopt;
        face.nvd = {known[f][0] == 1, known[f][1] == 1};
        face.label = face.nvd[0] && face.nvd[1] ? FaceLabel::NVD
                     : (!face.nvd[0] && !face.nvd[1]) ? FaceLabel::FVD
                                                      : FaceLabel::VD2;
    }
    return o;
}

bool is_valid(const Configuration& c) { return build_overlay(c).has_value(); }

// ---------------------------------------------------------------- simple configurations

namespace {

using ShapeTable = std::array<std::array<std::pair<int, int>, 2>, 4>;  // branch -> ends (side, rank)

const ShapeTable& shape_table(int shape) {
    // sides: 0 right, 1 top, 2 left, 3 bottom
    static const ShapeTable tables[4] = {
        {{{{{3, 0}, {1, 0}}}, {{{2, 1}, {2, 0}}}, {{{3, 1}, {0, 0}}}, {{{1, 1}, {0, 1}}}}},  // left-vertical
        {{{{{1, 1}, {3, 1}}}, {{{0, 0}, {0, 1}}}, {{{1, 0}, {2, 1}}}, {{{3, 0}, {2, 0}}}}},  // right-vertical
        {{{{{0, 0}, {2, 0}}}, {{{3, 0}, {3, 1}}}, {{{0, 1}, {1, 1}}}, {{{2, 1}, {1, 0}}}}},  // lower-horizontal
        {{{{{2, 1}, {0, 1}}}, {{{1, 1}, {1, 0}}}, {{{2, 0}, {3, 0}}}, {{{0, 0}, {3, 1}}}}},  // upper-horizontal
    };
    return tables[shape];
}

bool in_open_arc(int x, int from, int to) {
    int d = (x - from + 16) % 16;
    int span = (to - from + 16) % 16;
    return d > 0 && d < span;
}

}  // namespace

Configuration simple_configuration(const std::array<int, 4>& horizontal, const std::array<int, 4>& vertical, int red_shape,
                                   int blue_shape) {
    Configuration c;
    const std::array<int, 2> shapes{red_shape, blue_shape};
    auto token = [&](int color, int side, int rank) {
        const auto& t = shape_table(shapes[static_cast<std::size_t>(color)]);
        for (int b = 0; b < 4; ++b)
            for (int e = 0; e < 2; ++e)
                if (t[static_cast<std::size_t>(b)][static_cast<std::size_t>(e)] == std::pair<int, int>{side, rank})
                    return EndToken{color, b, e}.pack();
        throw std::logic_error("shape table incomplete");
    };
    auto ranks = [](const std::array<int, 4>& colors) {
        std::array<int, 4> r{};
        std::array<int, 2> seen{};
        for (std::size_t k = 0; k < 4; ++k) r[k] = seen[static_cast<std::size_t>(colors[k])]++;
        return r;
    };
    auto hr = ranks(horizontal), vr = ranks(vertical);
    for (int k = 0; k < 4; ++k) {
        auto uk = static_cast<std::size_t>(k), rk = static_cast<std::size_t>(3 - k);
        c.order[uk] = token(horizontal[uk], 0, hr[uk]);
        c.order[4 + uk] = token(vertical[rk], 1, vr[rk]);
        c.order[8 + uk] = token(horizontal[rk], 2, hr[rk]);
        c.order[12 + uk] = token(vertical[uk], 3, vr[uk]);
    }
    // crossings: a red and a blue branch cross once iff their ends interleave
    std::array<std::array<int, 2>, 4> rp{}, bp{};
    for (int b = 0; b < 4; ++b) {
        rp[static_cast<std::size_t>(b)] = {c.position_of({0, b, 0}), c.position_of({0, b, 1})};
        bp[static_cast<std::size_t>(b)] = {c.position_of({1, b, 0}), c.position_of({1, b, 1})};
    }
    auto crosses = [&](int r, int b) {
        auto [a0, a1] = rp[static_cast<std::size_t>(r)];
        auto [b0, b1] = bp[static_cast<std::size_t>(b)];
        return in_open_arc(b0, a0, a1) != in_open_arc(b1, a0, a1);
    };
    std::map<std::pair<int, int>, int> id;
    for (int r = 0; r < 4; ++r)
        for (int b = 0; b < 4; ++b)
            if (crosses(r, b)) {
                int v = static_cast<int>(id.size());
                id[{r, b}] = v;
                auto [a0, a1] = rp[static_cast<std::size_t>(r)];
                c.rotation.push_back(in_open_arc(bp[static_cast<std::size_t>(b)][0], a0, a1) ? 1 : -1);
            }
    // order along a branch: chord x precedes chord y iff x separates the start from y
    auto order_along = [&](int color, int br) {
        const auto& mine = color == 0 ? rp : bp;
        const auto& theirs = color == 0 ? bp : rp;
        std::vector<int> others;
        for (int o = 0; o < 4; ++o)
            if (color == 0 ? crosses(br, o) : crosses(o, br)) others.push_back(o);
        int start = mine[static_cast<std::size_t>(br)][0];
        std::sort(others.begin(), others.end(), [&](int x, int y) {
            auto [x0, x1] = theirs[static_cast<std::size_t>(x)];
            int ye = theirs[static_cast<std::size_t>(y)][0];
            return in_open_arc(start, x0, x1) != in_open_arc(ye, x0, x1);
        });
        std::vector<int> out;
        for (int o : others) out.push_back(color == 0 ? id.at({br, o}) : id.at({o, br}));
        return out;
    };
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) c.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)] = order_along(col, b);
    return c;
}

const std::array<std::array<int, 4>, 4>& horizontal_cases() {
    static const std::array<std::array<int, 4>, 4> cases{{{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}}};
    return cases;
}

const std::array<std::array<int, 4>, 6>& vertical_cases() {
    static const std::array<std::array<int, 4>, 6> cases{
        {{0, 0, 1, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}}};
    return cases;
}

std::vector<Configuration> enumerate_simple_configurations(int* raw_count) {

    std::map<std::string, Configuration> unique;
    int raw = 0;
    for (const auto& h : horizontal_cases())
        for (const auto& v : vertical_cases())
            for (int shape = 0; shape < 4; ++shape) {
                ++raw;
                Configuration c = simple_configuration(h, v, shape);
                if (!is_valid(c)) throw std::logic_error("simple configuration is not planar");
                auto key = canonical_form(c);
                unique.emplace(key, normalize(c));
            }
    if (raw_count) *raw_count = raw;
    std::vector<Configuration> out;
    for (auto& [k, c] : unique) out.push_back(c);
    return out;
}

// ---------------------------------------------------------------- twists

std::vector<Twist> detect_twists(const Configuration& c) {
    std::vector<Twist> out;
    auto m = build_map(c);
    auto o = build_overlay(c);
    if (!m || !o) return out;
    std::vector<int> remap;
    int k = 0;
    for (std::size_t f = 0; f < m->faces.size(); ++f) remap.push_back(static_cast<int>(f) == m->outer ? -1 : k++);
    for (std::size_t f = 0; f < m->faces.size(); ++f) {
        const auto& hs = m->faces[f];
        if (static_cast<int>(f) == m->outer || hs.size() != 2) continue;
        int a = m->origin[static_cast<std::size_t>(hs[0])], b = m->origin[static_cast<std::size_t>(hs[1])];
        if (a < 16 || b < 16) continue;
        Twist t;
        t.vertices = {std::min(a, b) - 16, std::max(a, b) - 16};
        t.branches = {c.branch_at(0, t.vertices[0]), c.branch_at(1, t.vertices[0])};
        t.face = remap[f];
        FaceLabel l = o->faces[static_cast<std::size_t>(t.face)].label;
        t.kind = l == FaceLabel::VD2 ? Twist::Kind::Partial : Twist::Kind::Full;
        out.push_back(t);
    }
    return out;
}

Configuration insert_twist(const Configuration& c, const EdgeRef& red, const EdgeRef& blue, int budget) {
    if (red.color != 0 || blue.color != 1) throw std::invalid_argument("insert_twist needs a red and a blue edge");
    if (c.vertex_count() + 2 > budget) throw std::invalid_argument("vertex budget exceeded");
    auto m = build_map(c);
    if (!m) throw std::invalid_argument("invalid configuration");
    auto half = [&](const EdgeRef& e) {
        auto ns = m->segments[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.branch)];
        if (e.segment < 0 || e.segment >= ns) throw std::invalid_argument("segment out of range");
        return 2 * m->seg_edge(e.color, e.branch, e.segment) + (e.left ? 0 : 1);
    };
    int h1 = half(red), h2 = half(blue);
    if (m->face_of[static_cast<std::size_t>(h1)] != m->face_of[static_cast<std::size_t>(h2)])
        throw std::invalid_argument("edges do not bound a common face");
    // The only two-edge faces between two vertices are twist faces.
    const auto& hs = m->faces[static_cast<std::size_t>(m->face_of[static_cast<std::size_t>(h1)])];
    if (hs.size() == 2) {
        int a = m->origin[static_cast<std::size_t>(hs[0])] - 16, b = m->origin[static_cast<std::size_t>(hs[1])] - 16;
        for (const auto& t : detect_twists(c))
            if (t.kind == Twist::Kind::Full && t.vertices[0] == std::min(a, b) && t.vertices[1] == std::max(a, b))
                throw std::invalid_argument("a full twist cannot be nested inside another");
    }
    Configuration out = c;
    int w1 = c.vertex_count(), w2 = w1 + 1;
    int fr = red.left ? 1 : -1, fb = blue.left ? 1 : -1;
    // Along the red half-edge the blue finger is met as (w2, w1); along the blue one as (w1, w2).
    std::vector<int> rs = fr > 0 ? std::vector<int>{w2, w1} : std::vector<int>{w1, w2};
    std::vector<int> bs = fb > 0 ? std::vector<int>{w1, w2} : std::vector<int>{w2, w1};
    auto& rseq = out.sequences[0][static_cast<std::size_t>(red.branch)];
    rseq.insert(rseq.begin() + red.segment, rs.begin(), rs.end());
    auto& bseq = out.sequences[1][static_cast<std::size_t>(blue.branch)];
    bseq.insert(bseq.begin() + blue.segment, bs.begin(), bs.end());
    out.rotation.push_back(-fr * fb);
    out.rotation.push_back(fr * fb);
    if (!is_valid(out)) throw std::logic_error("twist insertion produced an invalid overlay");
    return out;
}

std::optional<Configuration> remove_vertex_pair(const Configuration& c, int lo, int hi) {
    Configuration out;
    out.order = c.order;
    auto renum = [&](int v) { return v - (v > lo) - (v > hi); };
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b)
            for (int v : c.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)])
                if (v != lo && v != hi) out.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)].push_back(renum(v));
    for (int v = 0; v < c.vertex_count(); ++v)
        if (v != lo && v != hi) out.rotation.push_back(c.rotation[static_cast<std::size_t>(v)]);
    if (!is_valid(out)) return std::nullopt;
    return out;
}

Configuration remove_full_twist(const Configuration& c, const Twist& t) {
    auto twists = detect_twists(c);
    auto it = std::find_if(twists.begin(), twists.end(), [&](const Twist& x) { return x.vertices == t.vertices; });
    if (it == twists.end()) throw std::invalid_argument("no twist at the given vertices");
    if (it->kind != Twist::Kind::Full) throw std::invalid_argument("partial twists cannot be removed");
    auto out = remove_vertex_pair(c, std::min(t.vertices[0], t.vertices[1]), std::max(t.vertices[0], t.vertices[1]));
    if (!out) throw std::logic_error("twist removal produced an invalid overlay");
    return *out;
}

// ---------------------------------------------------------------- symmetries and encoding

Configuration rotate(const Configuration& c, int quarter_turns) {
    Configuration out = c;
    int s = ((quarter_turns % 4) + 4) % 4;
    for (int p = 0; p < 16; ++p) out.order[static_cast<std::size_t>(p)] = c.order[static_cast<std::size_t>((p - 4 * s + 16) % 16)];
    return out;
}

Configuration mirror(const Configuration& c) {
    Configuration out = c;
    for (int p = 0; p < 16; ++p) out.order[static_cast<std::size_t>(p)] = c.order[static_cast<std::size_t>((3 - p + 16) % 16)];
    for (auto& r : out.rotation) r = -r;
    return out;
}

Configuration swap_colors(const Configuration& c) {
    Configuration out = c;
    for (auto& t : out.order) t = static_cast<std::uint8_t>(t ^ 8);
    std::swap(out.sequences[0], out.sequences[1]);
    for (auto& r : out.rotation) r = -r;
    return out;
}

Configuration normalize(const Configuration& c, bool renumber_vertices) {
    std::array<std::array<int, 4>, 2> newb{};
    std::array<std::array<bool, 4>, 2> flip{};
    std::array<int, 2> next{};
    for (auto& a : newb) a.fill(-1);
    for (auto t : c.order) {
        EndToken e = EndToken::unpack(t);
        auto& nb = newb[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.branch)];
        if (nb >= 0) continue;
        nb = next[static_cast<std::size_t>(e.color)]++;
        flip[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.branch)] = e.end == 1;
    }
    Configuration out;
    for (int p = 0; p < 16; ++p) {
        EndToken e = EndToken::unpack(c.order[static_cast<std::size_t>(p)]);
        bool f = flip[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.branch)];
        out.order[static_cast<std::size_t>(p)] =
            EndToken{e.color, newb[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.branch)], f ? 1 - e.end : e.end}.pack();
    }
    std::vector<int> rot = c.rotation;
    std::array<std::array<std::vector<int>, 4>, 2> seqs;
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) {
            auto s = c.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)];
            if (flip[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)]) {
                std::reverse(s.begin(), s.end());
                for (int v : s) rot[static_cast<std::size_t>(v)] = -rot[static_cast<std::size_t>(v)];
            }
            seqs[static_cast<std::size_t>(col)][static_cast<std::size_t>(newb[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)])] = std::move(s);
        }
    std::vector<int> vid(rot.size(), -1);
    int k = 0;
    for (int b = 0; b < 4; ++b)
        for (int v : seqs[0][static_cast<std::size_t>(b)]) vid[static_cast<std::size_t>(v)] = renumber_vertices ? k++ : v;
    out.rotation.assign(rot.size(), 0);
    for (std::size_t v = 0; v < rot.size(); ++v) out.rotation[static_cast<std::size_t>(vid[v])] = rot[v];
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b)
            for (int v : seqs[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)])
                out.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)].push_back(vid[static_cast<std::size_t>(v)]);
    return out;
}

std::string encode(const Configuration& c) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (auto t : c.order) s += hex[t];
    for (int col = 0; col < 2; ++col) {
        s += '|';
        for (int b = 0; b < 4; ++b) {
            if (b) s += '/';
            const auto& q = c.sequences[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (i) s += '.';
                s += std::to_string(q[i]);
            }
        }
    }
    s += '|';
    for (int r : c.rotation) s += r > 0 ? '+' : '-';
    return s;
}

std::optional<Configuration> decode(const std::string& s) {
    Configuration c;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == '|') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4 || parts[0].size() != 16) return std::nullopt;
    for (std::size_t p = 0; p < 16; ++p) {
        char ch = parts[0][p];
        int v = (ch >= '0' && ch <= '9') ? ch - '0' : (ch >= 'a' && ch <= 'f') ? ch - 'a' + 10 : -1;
        if (v < 0) return std::nullopt;
        c.order[p] = static_cast<std::uint8_t>(v);
    }
    for (int col = 0; col < 2; ++col) {
        std::vector<std::string> br{""};
        for (char ch : parts[static_cast<std::size_t>(col + 1)]) {
            if (ch == '/') {
                br.emplace_back();
            } else {
                br.back() += ch;
            }
        }
        if (br.size() != 4) return std::nullopt;
        for (std::size_t b = 0; b < 4; ++b) {
            std::stringstream ss(br[b]);
            std::string tok;
            while (std::getline(ss, tok, '.')) {
                if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
                c.sequences[static_cast<std::size_t>(col)][b].push_back(std::stoi(tok));
            }
        }
    }
    for (char ch : parts[3]) {
        if (ch != '+' && ch != '-') return std::nullopt;
        c.rotation.push_back(ch == '+' ? 1 : -1);
    }
    if (!is_valid(c)) return std::nullopt;
    return c;
}

std::string canonical_form(const Configuration& c) {
    std::string best;
    for (int sw = 0; sw < 2; ++sw)
        for (int mi = 0; mi < 2; ++mi)
            for (int q = 0; q < 4; ++q) {
                Configuration t = sw ? swap_colors(c) : c;
                if (mi) t = mirror(t);
                t = rotate(t, q);
                auto e = encode(normalize(t));
                if (best.empty() || e < best) best = e;
            }
    return best;
}

// ---------------------------------------------------------------- asymptote data

int nvd_contribution(const Configuration& c, int color) {
    int n = 0;
    for (int p = 0; p < 16; ++p)
        if (EndToken::unpack(c.order[static_cast<std::size_t>(p)]).color == color && arc_is_nvd(c, 1 - color, p)) ++n;
    return n;
}

int asymptote_relation(const Configuration& c, int axis) {
    std::array<int, 4> col{};
    for (int k = 0; k < 4; ++k) {
        int p = axis == 0 ? 7 - k : k;  // ascending coordinate
        col[static_cast<std::size_t>(k)] = EndToken::unpack(c.order[static_cast<std::size_t>(p)]).color;
    }
    if (col[0] == col[1]) return 0;
    if (col[0] == col[2]) return 1;
    return col[0] == 1 ? 2 : 3;  // the outer pair encloses the other color
}

}  // namespace quadline
