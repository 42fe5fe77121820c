#include "quadline/diagram.hpp"

#include "quadline/infinity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace quadline {

namespace {

template <class T>
auto& at(T& container, int i) {
    return container[static_cast<size_t>(i)];
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (at(parent, x) != x) x = at(parent, x) = at(parent, at(parent, x));
        return x;
    }
    void unite(int a, int b) { at(parent, find(a)) = find(b); }
};

bool has_line(int slot, int line) { return at(kSlotPairs, slot)[0] == line || at(kSlotPairs, slot)[1] == line; }

// Everything the gluing needs from one slot, expressed in global terms.
struct SlotView {
    Overlay overlay;
    // global end id (trisector*8 + branch*2 + end) at each circle position
    std::array<int, 16> end_at{};
    // global segment id of each host segment, [color][branch][segment]
    std::array<std::array<std::vector<int>, 4>, 2> segment;
};

class Gluer {
public:
    Gluer(const ConfigurationTuple& t, const EndGluing& g) : t_(t), g_(g) {}

    std::optional<DiagramSummary> run(std::string& why) {
        if (!build_segments(why)) return std::nullopt;
        for (int s = 0; s < 6; ++s)
            if (!build_view(s, why)) return std::nullopt;
        DiagramSummary d;
        d.vertices = t_.vertex_count();
        if (!gamma(FaceLabel::NVD, d.gamma_nearest, why)) return std::nullopt;
        if (!gamma(FaceLabel::FVD, d.gamma_farthest, why)) return std::nullopt;
        if (!cells(FaceLabel::NVD, d, why)) return std::nullopt;
        if (!cells(FaceLabel::FVD, d, why)) return std::nullopt;
        for (int s = 0; s < 6; ++s)
            for (const auto& f : at(views_, s).overlay.faces) d.bounded_faces += f.bounded;
        return d;
    }

private:
    // Global segments of every trisector, numbered along its base host.
    bool build_segments(std::string& why) {
        for (int m = 0; m < 4; ++m) {
            auto base = hosts_of(m)[0];
            const Configuration& c = at(t_.slots, base[0]);
            auto ov = build_overlay(c);
            if (!ov) {
                why = "overlay";
                return false;
            }
            for (int b = 0; b < 4; ++b) {
                const auto& seq = at(at(c.sequences, base[1]), b);
                at(at(first_, m), b) = static_cast<int>(seg_.size());
                for (int k = 0; k <= static_cast<int>(seq.size()); ++k) {
                    int face = at(at(at(ov->segment_faces, base[1]), b), k)[0];
                    Seg sg;
                    sg.ref = {m, b, k};
                    sg.nearest = at(at(ov->faces, face).nvd, 1 - base[1]);
                    sg.ends = {k > 0 ? at(seq, k - 1) : -1, k < static_cast<int>(seq.size()) ? at(seq, k) : -1};
                    seg_.push_back(sg);
                }
            }
        }
        return true;
    }

    bool build_view(int s, std::string& why) {
        const Configuration& c = at(t_.slots, s);
        auto ov = build_overlay(c);
        if (!ov) {
            why = "overlay";
            return false;
        }
        SlotView& v = at(views_, s);
        v.overlay = std::move(*ov);
        for (int col = 0; col < 2; ++col) {
            int m = missing_line(s, col);
            const CurveLink& l = at(at(g_.links, s), col);
            for (int b = 0; b < 4; ++b) {
                int gb = at(l.branch, b);
                bool rev = at(l.reversed, b);
                int n = static_cast<int>(at(at(c.sequences, col), b).size());
                auto& out = at(at(v.segment, col), b);
                for (int k = 0; k <= n; ++k) {
                    int id = at(at(first_, m), gb) + (rev ? n - k : k);
                    out.push_back(id);
                    int face = at(at(at(v.overlay.segment_faces, col), b), k)[0];
                    if (at(at(v.overlay.faces, face).nvd, 1 - col) != at(seg_, id).nearest) {
                        why = "segment-label";
                        return false;
                    }
                }
            }
        }
        for (int p = 0; p < 16; ++p) {
            EndToken e = EndToken::unpack(at(c.order, p));
            const CurveLink& l = at(at(g_.links, s), e.color);
            int gb = at(l.branch, e.branch);
            int ge = e.end ^ (at(l.reversed, e.branch) ? 1 : 0);
            at(v.end_at, p) = missing_line(s, e.color) * 8 + gb * 2 + ge;
        }
        return true;
    }

    bool gamma(FaceLabel label, GammaMap& out, std::string& why) {
        std::array<CircleData, 6> circles;
        for (int s = 0; s < 6; ++s) {
            const SlotView& v = at(views_, s);
            at(circles, s).end = v.end_at;
            for (int p = 0; p < 16; ++p) at(at(circles, s).arc, p) = at(v.overlay.faces, at(v.overlay.arc_face, p)).label;
        }
        auto m = gamma_from_circles(circles, label, &why);
        if (!m) return false;
        out = std::move(*m);
        return true;
    }

    // 3D cells of each line: components of its boundary surface.
    bool cells(FaceLabel label, DiagramSummary& d, std::string& why) {
        bool nearest = label == FaceLabel::NVD;
        // global face ids
        std::vector<std::array<int, 2>> faces;  // (slot, face)
        std::map<std::array<int, 2>, int> fid;
        for (int s = 0; s < 6; ++s) {
            const auto& fs = at(views_, s).overlay.faces;
            for (int f = 0; f < static_cast<int>(fs.size()); ++f)
                if (at(fs, f).label == label) {
                    fid[{s, f}] = static_cast<int>(faces.size());
                    faces.push_back({s, f});
                }
        }
        // faces along each global segment of this label, one per host
        std::vector<std::vector<std::array<int, 2>>> along(seg_.size());
        for (int s = 0; s < 6; ++s) {
            const SlotView& v = at(views_, s);
            for (int col = 0; col < 2; ++col)
                for (int b = 0; b < 4; ++b)
                    for (int k = 0; k < static_cast<int>(at(at(v.segment, col), b).size()); ++k) {
                        int id = at(at(at(v.segment, col), b), k);
                        if (at(seg_, id).nearest != nearest) continue;
                        auto fs = at(at(at(v.overlay.segment_faces, col), b), k);
                        int hit = -1;
                        for (int f : fs)
                            if (at(v.overlay.faces, f).label == label) hit = f;
                        if (hit < 0) {
                            why = "segment-faces";
                            return false;
                        }
                        at(along, id).push_back({s, hit});
                    }
        }
        FeatureCounts fc;
        fc.faces = static_cast<int>(faces.size());
        std::vector<int> edges;
        for (int id = 0; id < static_cast<int>(seg_.size()); ++id) {
            if (at(seg_, id).nearest != nearest) continue;
            if (at(along, id).size() != 3) {
                why = "segment-hosts";
                return false;
            }
            edges.push_back(id);
        }
        fc.edges = static_cast<int>(edges.size());
        for (int line = 0; line < 4; ++line) {
            UnionFind uf(static_cast<int>(faces.size()));
            for (int id : edges) {
                std::vector<int> mine;
                for (auto sf : at(along, id))
                    if (has_line(sf[0], line)) mine.push_back(fid.at(sf));
                if (mine.size() == 2) uf.unite(mine[0], mine[1]);
            }
            // per component: vertices, edges, faces
            std::map<int, std::array<std::set<int>, 3>> comp;
            for (int f = 0; f < static_cast<int>(faces.size()); ++f)
                if (has_line(at(faces, f)[0], line)) comp[uf.find(f)][2].insert(f);
            for (int id : edges) {
                for (auto sf : at(along, id)) {
                    if (!has_line(sf[0], line)) continue;
                    auto& c = comp[uf.find(fid.at(sf))];
                    c[1].insert(id);
                    for (int v : at(seg_, id).ends)
                        if (v >= 0) c[0].insert(v);
                }
            }
            int target = nearest ? 0 : 1;
            for (const auto& [root, c] : comp) {
                int chi = static_cast<int>(c[0].size()) - static_cast<int>(c[1].size()) + static_cast<int>(c[2].size());
                if (chi != target) {
                    why = nearest ? "nearest-cell-euler" : "farthest-cell-euler";
                    return false;
                }
            }
            int n = static_cast<int>(comp.size());
            fc.cells += n;
            if (!nearest) at(d.farthest_cells_per_line, line) = n;
            if (nearest && n != 1) {
                why = "nearest-cell-count";
                return false;
            }
            if (!nearest && n != 3) {
                why = "farthest-cell-count";
                return false;
            }
        }
        auto expect = combinatorics_counts(4, d.vertices, nearest ? Diagram::Nearest : Diagram::Farthest);
        if (fc.edges != expect[0] || fc.faces != expect[1] || fc.cells != expect[2]) {
            why = nearest ? "nearest-counts" : "farthest-counts";
            return false;
        }
        // 1-skeleton through bounded and one-sided edges
        bool connected = true;
        if (d.vertices > 0) {
            UnionFind uf(d.vertices);
            for (int id : edges) {
                auto e = at(seg_, id).ends;
                if (e[0] >= 0 && e[1] >= 0) uf.unite(e[0], e[1]);
            }
            for (int v = 1; v < d.vertices; ++v) connected = connected && uf.find(v) == uf.find(0);
        }
        auto& bounded = nearest ? d.bounded_nearest_edges : d.bounded_farthest_edges;
        for (int id : edges)
            if (at(seg_, id).ends[0] >= 0 && at(seg_, id).ends[1] >= 0) bounded.push_back(at(seg_, id).ref);
        (nearest ? d.nearest : d.farthest) = fc;
        (nearest ? d.nearest_skeleton_connected : d.farthest_skeleton_connected) = connected;
        return true;
    }

    struct Seg {
        SegmentRef ref;
        bool nearest = false;
        std::array<int, 2> ends{-1, -1};  // vertices, -1 at infinity
    };

    const ConfigurationTuple& t_;
    const EndGluing& g_;
    std::vector<Seg> seg_;
    std::array<std::array<int, 4>, 4> first_{};
    std::array<SlotView, 6> views_;
};

// Orients the faces coherently; false when impossible or not a sphere.
bool orient(GammaMap& m) {
    int nf = static_cast<int>(m.faces.size());
    std::vector<std::vector<int>> by_edge(m.edges.size());
    for (int f = 0; f < nf; ++f)
        for (int d : at(m.faces, f)) at(by_edge, d / 2).push_back(f);
    for (const auto& v : by_edge)
        if (v.size() != 2) return false;
    std::vector<int> flip(static_cast<size_t>(nf), -1);
    auto dir = [&](int f, int e) {
        for (int d : at(m.faces, f))
            if (d / 2 == e) return (d % 2) ^ at(flip, f);
        return -1;
    };
    for (int root = 0; root < nf; ++root) {
        if (at(flip, root) >= 0) continue;
        at(flip, root) = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int d : at(m.faces, f)) {
                int e = d / 2;
                int g = at(by_edge, e)[0] == f ? at(by_edge, e)[1] : at(by_edge, e)[0];
                int want = 1 - dir(f, e);
                if (at(flip, g) < 0) {
                    int raw = -1;
                    for (int d2 : at(m.faces, g))
                        if (d2 / 2 == e) raw = d2 % 2;
                    at(flip, g) = raw ^ want;
                    stack.push_back(g);
                } else if (dir(g, e) != want) {
                    return false;
                }
            }
        }
    }
    for (int f = 0; f < nf; ++f) {
        if (!at(flip, f)) continue;
        auto& cyc = at(m.faces, f);
        std::reverse(cyc.begin(), cyc.end());
        for (int& d : cyc) d ^= 1;
    }
    return m.euler_characteristic() == 2;
}


}  // namespace

std::optional<GammaMap> gamma_from_circles(const std::array<CircleData, 6>& circles, FaceLabel label, std::string* why) {
    auto fail = [&](const char* w) -> std::optional<GammaMap> {
        if (why) *why = w;
        return std::nullopt;
    };
    std::map<int, int> vid;
    struct Arc {
        int slot;
        std::array<int, 2> ends;
    };
    std::vector<Arc> arcs;
    // incident arc of each end in each slot
    std::map<std::pair<int, int>, int> incident;
    for (int s = 0; s < 6; ++s) {
        const CircleData& c = at(circles, s);
        for (int p = 0; p < 16; ++p) {
            if (at(c.arc, p) != label) continue;
            Arc a{s, {at(c.end, p), at(c.end, (p + 1) % 16)}};
            for (int e : a.ends) {
                if (!incident.emplace(std::pair{s, e}, static_cast<int>(arcs.size())).second) return fail("gamma-degree");
                vid.emplace(e, static_cast<int>(vid.size()));
            }
            arcs.push_back(a);
        }
    }
    GammaMap out;
    out.vertex_count = static_cast<int>(vid.size());
    for (const auto& a : arcs) out.edges.push_back({vid[a.ends[0]], vid[a.ends[1]]});
    // Walk the faces of each line. An arc of slot {i,j} separates the cells of i and j.
    std::set<std::pair<int, int>> used;  // (arc, line)
    for (int a0 = 0; a0 < static_cast<int>(arcs.size()); ++a0)
        for (int line : at(kSlotPairs, at(arcs, a0).slot)) {
            if (used.count({a0, line})) continue;
            std::vector<int> darts;
            int a = a0, from = at(arcs, a0).ends[0];
            for (int guard = 0;; ++guard) {
                if (guard > static_cast<int>(arcs.size()) || !used.insert({a, line}).second) return fail("gamma-walk");
                const Arc& arc = at(arcs, a);
                bool forward = arc.ends[0] == from;
                darts.push_back(2 * a + (forward ? 0 : 1));
                int to = forward ? arc.ends[1] : arc.ends[0];
                // next host of the end's trisector that also contains `line`
                int m = to / 8, next = -1;
                for (auto h : hosts_of(m))
                    if (h[0] != arc.slot && has_line(h[0], line)) next = h[0];
                auto it = incident.find({next, to});
                if (next < 0 || it == incident.end()) return fail("gamma-walk");
                a = it->second;
                from = to;
                if (a == a0) break;
            }
            out.faces.push_back(std::move(darts));
            out.face_line.push_back(line);
        }
    if (!orient(out)) return fail("gamma-orientation");
    auto expect = gamma_counts(4)[label == FaceLabel::NVD ? 0 : 1];
    if (out.vertex_count != expect[0] || static_cast<int>(out.edges.size()) != expect[1] ||
        static_cast<int>(out.faces.size()) != expect[2])
        return fail(label == FaceLabel::NVD ? "gamma-nearest-counts" : "gamma-farthest-counts");
    return out;
}

namespace {

// Dart-based BFS code from a starting dart. Faces are the cycles of `next`;
// the vertex rotation is next(opposite(d)).
std::string code_from(const GammaMap& m, const std::vector<int>& next, int start) {
    int nd = static_cast<int>(next.size());
    std::vector<int> order(static_cast<size_t>(nd), -1);
    std::vector<int> queue{start};
    at(order, start) = 0;
    int count = 1;
    std::vector<int> line_name(4, -1);
    int names = 0;
    std::vector<int> face_of(static_cast<size_t>(nd), -1);
    for (int f = 0; f < static_cast<int>(m.faces.size()); ++f)
        for (int d : at(m.faces, f)) at(face_of, d) = f;
    std::string code;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int d = at(queue, qi);
        for (int nbr : {at(next, d), d ^ 1}) {
            if (at(order, nbr) < 0) {
                at(order, nbr) = count++;
                queue.push_back(nbr);
            }
            code += std::to_string(at(order, nbr)) + ',';
        }
        int line = at(m.face_line, at(face_of, d));
        if (at(line_name, line) < 0) at(line_name, line) = names++;
        code += std::to_string(at(line_name, line)) + ';';
    }
    return code;
}

std::string canonical_oriented(const GammaMap& m) {
    std::vector<int> next(m.edges.size() * 2, -1), face_len(m.edges.size() * 2, 0);
    for (const auto& f : m.faces)
        for (size_t k = 0; k < f.size(); ++k) {
            at(next, f[k]) = f[(k + 1) % f.size()];
            at(face_len, f[k]) = static_cast<int>(f.size());
        }
    // Only darts with the least (face length, opposite face length) can start
    // the least code; this is itself invariant, so the code stays canonical.
    auto key = [&](int d) { return std::pair{at(face_len, d), at(face_len, d ^ 1)}; };
    std::pair<int, int> least{1 << 30, 0};
    for (int d = 0; d < static_cast<int>(next.size()); ++d) least = std::min(least, key(d));
    std::string best;
    for (int d = 0; d < static_cast<int>(next.size()); ++d) {
        if (key(d) != least) continue;
        std::string c = code_from(m, next, d);
        if (best.empty() || c < best) best = std::move(c);
    }
    return best;
}

}  // namespace

std::array<int, 3> combinatorics_counts(int n, int vertices, Diagram d) {
    if (d == Diagram::Nearest) return {2 * vertices + 2 * n - 2, vertices + 3 * n - 3, n};
    return {2 * vertices + n * n - n - 2, vertices + 2 * n * n - 2 * n - 3, n * n - n};
}

std::array<std::array<int, 3>, 2> gamma_counts(int n) {
    return {{{4 * n - 4, 6 * n - 6, 2 * n}, {2 * n * n - 2 * n - 4, 3 * n * n - 3 * n - 6, n * n - n}}};
}

GammaMap reflected(const GammaMap& m) {
    GammaMap r = m;
    for (auto& f : r.faces) {
        std::reverse(f.begin(), f.end());
        for (int& d : f) d ^= 1;
    }
    return r;
}

std::string canonical_code(const GammaMap& m, bool with_reflection) {
    std::string a = canonical_oriented(m);
    if (!with_reflection) return a;
    std::string b = canonical_oriented(reflected(m));
    return std::min(a, b);
}

std::vector<DiagramSummary> assemble_diagrams(const ConfigurationTuple& t, bool first_only, std::string* why) {
    std::string reason = "ends";
    const auto& realizable = realizable_infinity_types();
    std::vector<DiagramSummary> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& g : identify_ends(t)) {
        Gluer gl(t, g);
        auto d = gl.run(reason);
        if (!d) continue;
        std::pair codes{canonical_code(d->gamma_nearest), canonical_code(d->gamma_farthest)};
        if (!realizable.count(codes)) {
            reason = "infinity-type";
            continue;
        }
        if (!seen.insert(codes).second) continue;
        out.push_back(std::move(*d));
        if (first_only) break;
    }
    if (why) *why = out.empty() ? reason : std::string();
    return out;
}

std::optional<DiagramSummary> assemble_diagram(const ConfigurationTuple& t, std::string* why) {
    auto all = assemble_diagrams(t, true, why);
    if (all.empty()) return std::nullopt;
    return std::move(all.front());
}

}  // namespace quadline
