#include "quadline/enumeration.hpp"

#include "quadline/diagram.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <thread>

namespace quadline {

namespace {

using std::size_t;

template <class T>
auto& at(T& container, int i) {
    return container[static_cast<size_t>(i)];
}

// Per-curve data the search needs from a slot configuration.
struct CurveInfo {
    std::array<std::vector<int>, 4> seq;
    std::array<int, 4> first_label{};  // 1 when segment 0 is an NVD edge
    int middle = -1;
    int u = -1;
    bool vertical = false;
    int nvd = 0;  // contribution to the unbounded NVD map
    std::string signature;
};

struct Candidate {
    Configuration config;
    std::array<CurveInfo, 2> curve;
    int nvd_faces = 0;
    int fvd_faces = 0;
};

std::string signature_of(const CurveInfo& ci) {
    std::vector<std::array<int, 3>> parts;
    for (int b = 0; b < 4; ++b) {
        int len = static_cast<int>(at(ci.seq, b).size());
        parts.push_back({len, b == ci.middle ? 1 : 0, len % 2 == 0 ? at(ci.first_label, b) : 2});
    }
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (auto& p : parts) s += std::to_string(p[0]) + ":" + std::to_string(p[1]) + ":" + std::to_string(p[2]) + ",";
    return s;
}

Candidate make_candidate(const Configuration& c) {
    auto ov = build_overlay(c);
    if (!ov) throw std::logic_error("phase 2 configuration without an overlay");
    Candidate k;
    k.config = c;
    for (int col = 0; col < 2; ++col) {
        auto& ci = at(k.curve, col);
        ci.seq = at(c.sequences, col);
        auto mu = middle_and_u(c, col);
        ci.middle = mu[0];
        ci.u = mu[1];
        ci.vertical = vertical_middle(c, col);
        ci.nvd = nvd_contribution(c, col);
        for (int b = 0; b < 4; ++b) {
            int f = at(at(at(ov->segment_faces, col), b), 0)[0];
            at(ci.first_label, b) = at(at(ov->faces, f).nvd, 1 - col) ? 1 : 0;
        }
        ci.signature = signature_of(ci);
    }
    for (const auto& f : ov->faces) {
        if (f.label == FaceLabel::NVD) ++k.nvd_faces;
        if (f.label == FaceLabel::FVD) ++k.fvd_faces;
    }
    return k;
}

struct Skeleton {
    bool defined = false;
    std::array<std::vector<int>, 4> seq;
    std::array<int, 4> first_label{};
    int middle = -1;
    std::array<int, 4> u_hosts{};
    std::string signature;
};

struct State {
    std::array<Skeleton, 4> tri;  // by missing line
    std::array<const Candidate*, 6> chosen{};
    std::array<std::array<CurveLink, 2>, 6> links;
    std::array<std::vector<int>, 6> to_global;  // local vertex -> global
    int vertices = 0;
};

std::string skeleton_signature(const Skeleton& s) {
    CurveInfo ci;
    ci.seq = s.seq;
    ci.first_label = s.first_label;
    ci.middle = s.middle;
    return signature_of(ci);
}

// All ways to lay a host curve onto a defined skeleton, extending the local to
// global vertex map. Empty non-middle branches are interchangeable apart from
// their label and U count, so they are assigned greedily.
void match_curve(const CurveInfo& host, const Skeleton& sk, std::vector<int> phi,
                 std::vector<std::pair<CurveLink, std::vector<int>>>& out) {
    CurveLink link;
    std::array<bool, 4> used{};
    std::vector<int> inverse(phi.size(), -1);
    for (size_t v = 0; v < phi.size(); ++v)
        if (phi[v] >= 0) inverse[static_cast<size_t>(phi[v])] = static_cast<int>(v);

    std::vector<int> order;  // nonempty branches first, middle included
    for (int b = 0; b < 4; ++b)
        if (!at(host.seq, b).empty() || b == host.middle) order.push_back(b);

    auto label_of = [&](int b, bool rev) {
        int len = static_cast<int>(at(host.seq, b).size());
        return rev ? at(host.first_label, b) ^ (len & 1) : at(host.first_label, b);
    };

    auto finish = [&]() {
        // Empty non-middle host branches onto empty non-middle global branches.
        std::vector<int> host_empty, global_empty;
        for (int b = 0; b < 4; ++b)
            if (at(host.seq, b).empty() && b != host.middle) host_empty.push_back(b);
        for (int g = 0; g < 4; ++g)
            if (!at(used, g) && g != sk.middle) {
                if (!at(sk.seq, g).empty()) return;
                global_empty.push_back(g);
            }
        if (host_empty.size() != global_empty.size()) return;
        CurveLink l = link;
        std::vector<bool> taken(global_empty.size(), false);
        auto assign = [&](int b, bool want_fresh_u) {
            for (size_t k = 0; k < global_empty.size(); ++k) {
                int g = global_empty[k];
                if (taken[k] || at(sk.first_label, g) != at(host.first_label, b)) continue;
                if (want_fresh_u && at(sk.u_hosts, g) != 0) continue;
                taken[k] = true;
                at(l.branch, b) = g;
                at(l.reversed, b) = false;
                return true;
            }
            return false;
        };
        if (host.u >= 0 && at(host.seq, host.u).empty() && !assign(host.u, true)) return;
        for (int b : host_empty)
            if (b != host.u && !assign(b, false)) return;
        out.emplace_back(l, phi);
    };

    auto rec = [&](auto&& self, size_t idx) -> void {
        if (idx == order.size()) {
            finish();
            return;
        }
        int b = order[idx];
        const auto& hs = at(host.seq, b);
        for (int g = 0; g < 4; ++g) {
            if (at(used, g)) continue;
            if ((b == host.middle) != (g == sk.middle)) continue;
            const auto& gs = at(sk.seq, g);
            if (gs.size() != hs.size()) continue;
            for (int r = 0; r < (hs.size() > 0 ? 2 : 1); ++r) {
                bool rev = r == 1;
                if (label_of(b, rev) != at(sk.first_label, g)) continue;
                std::vector<std::pair<int, int>> assigned;
                bool ok = true;
                for (size_t p = 0; p < hs.size() && ok; ++p) {
                    int lv = hs[rev ? hs.size() - 1 - p : p];
                    int gv = gs[p];
                    if (phi[static_cast<size_t>(lv)] >= 0) {
                        ok = phi[static_cast<size_t>(lv)] == gv;
                    } else if (inverse[static_cast<size_t>(gv)] >= 0) {
                        ok = false;
                    } else {
                        phi[static_cast<size_t>(lv)] = gv;
                        inverse[static_cast<size_t>(gv)] = lv;
                        assigned.push_back({lv, gv});
                    }
                }
                if (ok) {
                    at(used, g) = true;
                    at(link.branch, b) = g;
                    at(link.reversed, b) = rev;
                    self(self, idx + 1);
                    at(used, g) = false;
                }
                for (auto [lv, gv] : assigned) {
                    phi[static_cast<size_t>(lv)] = -1;
                    inverse[static_cast<size_t>(gv)] = -1;
                }
            }
        }
    };
    rec(rec, 0);
}

void define_skeleton(Skeleton& sk, const CurveInfo& host, const std::vector<int>& phi) {
    sk.defined = true;
    for (int b = 0; b < 4; ++b) {
        at(sk.seq, b).clear();
        for (int v : at(host.seq, b)) at(sk.seq, b).push_back(phi[static_cast<size_t>(v)]);
    }
    sk.first_label = host.first_label;
    sk.middle = host.middle;
    sk.u_hosts = {};
    if (host.u >= 0) at(sk.u_hosts, host.u) = 1;
    sk.signature = skeleton_signature(sk);
}

bool parallel_closed(const std::array<std::array<int, 4>, 4>& par) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                if (a == b || b == c || a == c) continue;
                if (at(at(par, a), b) && at(at(par, b), c) && !at(at(par, a), c)) return false;
            }
    return true;
}

class Search {
public:
    Search(const std::vector<Candidate>& cands, SearchStats& stats) : cands_(cands), stats_(stats) {
        for (const auto& c : cands_) by_count_[c.config.vertex_count()].push_back(&c);
    }

    void run_from(const Candidate& first, std::map<std::string, ConfigurationTuple>& found) {
        found_ = &found;
        State st;
        st.vertices = first.config.vertex_count();
        std::vector<int> id(static_cast<size_t>(st.vertices));
        for (int v = 0; v < st.vertices; ++v) id[static_cast<size_t>(v)] = v;
        st.chosen[0] = &first;
        st.to_global[0] = id;
        for (int col = 0; col < 2; ++col) define_skeleton(at(st.tri, missing_line(0, col)), at(first.curve, col), id);
        step(st, 1);
    }

private:
    void reject(const char* why) { ++stats_.rejected[why]; }

    void step(State& st, int slot) {
        if (slot == 6) {
            complete(st);
            return;
        }
        int mr = missing_line(slot, 0), mb = missing_line(slot, 1);
        const Skeleton& red = at(st.tri, mr);
        const Skeleton& blue = at(st.tri, mb);
        for (const Candidate* c : by_count_[st.vertices]) {
            if (at(c->curve, 0).signature != red.signature) continue;
            if (blue.defined && at(c->curve, 1).signature != blue.signature) continue;
            std::vector<std::pair<CurveLink, std::vector<int>>> reds;
            match_curve(at(c->curve, 0), red, std::vector<int>(static_cast<size_t>(st.vertices), -1), reds);
            for (auto& [rl, phi] : reds) {
                State s1 = st;
                bump_u(at(s1.tri, mr), at(c->curve, 0), rl);
                if (!u_ok(at(s1.tri, mr))) continue;
                if (blue.defined) {
                    std::vector<std::pair<CurveLink, std::vector<int>>> blues;
                    match_curve(at(c->curve, 1), blue, phi, blues);
                    for (auto& [bl, phi2] : blues) {
                        State s2 = s1;
                        bump_u(at(s2.tri, mb), at(c->curve, 1), bl);
                        if (!u_ok(at(s2.tri, mb))) continue;
                        place(s2, slot, c, rl, bl, phi2);
                    }
                } else {
                    State s2 = s1;
                    define_skeleton(at(s2.tri, mb), at(c->curve, 1), phi);
                    place(s2, slot, c, rl, CurveLink{}, phi);
                }
            }
        }
    }

    static void bump_u(Skeleton& sk, const CurveInfo& host, const CurveLink& l) {
        if (host.u >= 0) ++at(sk.u_hosts, at(l.branch, host.u));
    }
    static bool u_ok(const Skeleton& sk) {
        for (int g = 0; g < 4; ++g)
            if (at(sk.u_hosts, g) > 1) return false;
        return true;
    }

    void place(State& st, int slot, const Candidate* c, const CurveLink& rl, const CurveLink& bl, const std::vector<int>& phi) {
        at(st.chosen, slot) = c;
        at(st.links, slot) = {rl, bl};
        at(st.to_global, slot) = phi;
        step(st, slot + 1);
    }

    void complete(State& st) {
        ++stats_.candidates;
        for (int m = 0; m < 4; ++m)
            for (int g = 0; g < 4; ++g)
                if (g != at(st.tri, m).middle && at(at(st.tri, m).u_hosts, g) != 1) return reject("u-branch");
        ConfigurationTuple t;
        for (int s = 0; s < 6; ++s) {
            const Configuration& c = at(st.chosen, s)->config;
            Configuration g = c;
            const auto& phi = at(st.to_global, s);
            for (auto& col : g.sequences)
                for (auto& br : col)
                    for (int& v : br) v = phi[static_cast<size_t>(v)];
            for (int v = 0; v < c.vertex_count(); ++v) at(g.rotation, phi[static_cast<size_t>(v)]) = at(c.rotation, v);
            at(t.slots, s) = std::move(g);
            at(t.links, s) = at(st.links, s);
        }
        std::string why = check_tuple(t);
        if (!why.empty()) return reject(why.c_str());
        auto gluings = identify_ends(t);
        t.links = gluings.front().links;
        if (!assemble_diagram(t, &why)) return reject(why.c_str());
        std::string key = canonical_key(t);
        found_->emplace(std::move(key), std::move(t));
    }

    const std::vector<Candidate>& cands_;
    SearchStats& stats_;
    std::map<int, std::vector<const Candidate*>> by_count_;
    std::map<std::string, ConfigurationTuple>* found_ = nullptr;
};

// Per host curve in one frame: sign code of every end over the trisector's
// lines (bit n set when the direction agrees with the n-th line, ascending).
using EndCodes = std::array<std::array<int, 2>, 4>;

// Signs of the host's two lines on each side: right, top, left, bottom.
constexpr std::array<std::array<int, 2>, 4> kSideSigns{{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};

EndCodes end_codes(const Configuration& framed, int slot, int color, int bit) {
    auto [i, j] = at(kSlotPairs, slot);
    int m = missing_line(slot, color);
    int k = 6 - i - j - m;
    auto bit_of = [&](int line) { return line - (line > m ? 1 : 0); };
    EndCodes out{};
    std::array<int, 4> seen{};
    for (int p = 0; p < 16; ++p) {
        EndToken e = EndToken::unpack(at(framed.order, p));
        if (e.color != color) continue;
        int side = p / 4;
        int rank = at(seen, side)++;
        int sk = (bit ? 1 : -1) * (rank == 1 ? 1 : -1) * (side % 2 == 1 ? -1 : 1);
        std::array<int, 3> sg{};
        at(sg, bit_of(i)) = at(kSideSigns, side)[0];
        at(sg, bit_of(j)) = at(kSideSigns, side)[1];
        at(sg, bit_of(k)) = sk;
        int code = 0;
        for (int n = 0; n < 3; ++n)
            if (at(sg, n) > 0) code |= 1 << n;
        at(at(out, e.branch), e.end) = code;
    }
    return out;
}

struct CurveFacts {
    std::array<std::vector<int>, 4> seq;
    std::array<int, 4> first_label{};
    int middle = -1;
    int u = -1;
};

CurveFacts curve_facts(const Configuration& c, const Overlay& ov, int col) {
    CurveFacts f;
    f.seq = at(c.sequences, col);
    auto mu = middle_and_u(c, col);
    f.middle = mu[0];
    f.u = mu[1];
    for (int b = 0; b < 4; ++b) {
        int face = at(at(at(ov.segment_faces, col), b), 0)[0];
        at(f.first_label, b) = at(at(ov.faces, face).nvd, 1 - col) ? 1 : 0;
    }
    return f;
}

// Link of `host` onto `base` implied by matching end codes, if consistent.
std::optional<CurveLink> link_by_codes(const CurveFacts& base, const EndCodes& bc, const CurveFacts& host,
                                       const EndCodes& hc) {
    std::array<std::array<int, 2>, 8> where{};
    for (int b = 0; b < 4; ++b)
        for (int e = 0; e < 2; ++e) where[static_cast<size_t>(at(at(bc, b), e))] = {b, e};
    CurveLink l;
    for (int b = 0; b < 4; ++b) {
        auto w0 = where[static_cast<size_t>(at(at(hc, b), 0))];
        auto w1 = where[static_cast<size_t>(at(at(hc, b), 1))];
        if (w0[0] != w1[0] || w0[1] == w1[1]) return std::nullopt;
        int g = w0[0];
        bool rev = w0[1] == 1;
        auto s = at(base.seq, g);
        if (rev) std::reverse(s.begin(), s.end());
        if (s != at(host.seq, b)) return std::nullopt;
        int label = at(base.first_label, g) ^ (rev ? static_cast<int>(s.size() % 2) : 0);
        if (label != at(host.first_label, b)) return std::nullopt;
        if ((b == host.middle) != (g == base.middle)) return std::nullopt;
        at(l.branch, b) = g;
        at(l.reversed, b) = rev;
    }
    return l;
}

// Slot image of a permuted tuple.
struct SlotMap {
    int slot;
    bool swap;  // colors exchanged
};

SlotMap permuted_slot(const std::array<int, 4>& perm, int s) {
    int i = perm[static_cast<size_t>(at(kSlotPairs, s)[0])], j = perm[static_cast<size_t>(at(kSlotPairs, s)[1])];
    int k = perm[static_cast<size_t>(missing_line(s, 1))], l = perm[static_cast<size_t>(missing_line(s, 0))];
    // red third is missing_line(s,1); after relabeling it must stay the smaller one
    return {slot_of(std::min(i, j), std::max(i, j)), k > l};
}

Configuration dihedral(const Configuration& c, int k) {
    Configuration t = k >= 4 ? mirror(c) : c;
    return rotate(t, k % 4);
}

// Encoding under a global vertex renumbering, branches normalized.
std::string encode_fixed(const Configuration& c, const std::vector<int>& relabel) {
    Configuration t = c;
    for (auto& col : t.sequences)
        for (auto& br : col)
            for (int& v : br) v = relabel[static_cast<size_t>(v)];
    for (size_t v = 0; v < c.rotation.size(); ++v) t.rotation[static_cast<size_t>(relabel[v])] = c.rotation[v];
    return encode(normalize(t, false));
}

}  // namespace

int slot_of(int i, int j) {
    for (int s = 0; s < 6; ++s)
        if (at(kSlotPairs, s)[0] == i && at(kSlotPairs, s)[1] == j) return s;
    throw std::invalid_argument("not a line pair");
}

int missing_line(int slot, int color) {
    auto [i, j] = at(kSlotPairs, slot);
    std::array<int, 2> rest{};
    int n = 0;
    for (int m = 0; m < 4; ++m)
        if (m != i && m != j) at(rest, n++) = m;
    // red passes through rest[0], so it misses rest[1]
    return color == 0 ? rest[1] : rest[0];
}

std::array<std::array<int, 2>, 3> hosts_of(int missing) {
    std::array<std::array<int, 2>, 3> out{};
    int n = 0;
    for (int s = 0; s < 6; ++s)
        for (int col = 0; col < 2; ++col)
            if (missing_line(s, col) == missing) at(out, n++) = {s, col};
    return out;
}

bool vertical_middle(const Configuration& c, int color) {
    int m = middle_and_u(c, color)[0];
    int p = c.position_of(EndToken{color, m, 0});
    int side = p / 4;
    return side == 1 || side == 3;
}

std::array<int, 2> bisector_class(const Configuration& c) {
    int a = nvd_contribution(c, 0), b = nvd_contribution(c, 1);
    return {std::min(a, b), std::max(a, b)};
}

bool phase2_filter(const Configuration& c) {
    auto k = bisector_class(c);
    static const std::array<std::array<int, 2>, 4> admissible{{{0, 4}, {4, 4}, {2, 2}, {2, 6}}};
    if (std::find(admissible.begin(), admissible.end(), k) == admissible.end()) return false;
    int rx = asymptote_relation(c, 0), ry = asymptote_relation(c, 1);
    bool double_nested = (rx == 2 && ry == 3) || (rx == 3 && ry == 2);
    return !double_nested;
}

std::map<std::string, Configuration> phase1_generate(int budget) {
    std::map<std::string, Configuration> seen;
    std::deque<Configuration> queue;
    for (auto& c : enumerate_simple_configurations())
        if (seen.emplace(canonical_form(c), c).second) queue.push_back(c);
    while (!queue.empty()) {
        Configuration c = std::move(queue.front());
        queue.pop_front();
        if (c.vertex_count() + 2 > budget) continue;
        auto ov = build_overlay(c);
        if (!ov) continue;
        std::vector<EdgeRef> reds, blues;
        for (int col = 0; col < 2; ++col)
            for (int b = 0; b < 4; ++b) {
                const auto& sf = at(at(ov->segment_faces, col), b);
                for (int s = 0; s < static_cast<int>(sf.size()); ++s)
                    for (int side = 0; side < 2; ++side) {
                        int f = at(sf, s)[static_cast<size_t>(side)];
                        if (at(ov->faces, f).label != FaceLabel::VD2) continue;
                        (col == 0 ? reds : blues).push_back(EdgeRef{col, b, s, side == 0});
                    }
            }
        auto face = [&](const EdgeRef& e) {
            return at(at(at(ov->segment_faces, e.color), e.branch), e.segment)[e.left ? 0 : 1];
        };
        for (const auto& r : reds)
            for (const auto& b : blues) {
                if (face(r) != face(b)) continue;
                Configuration n = insert_twist(c, r, b, budget);
                auto tw = detect_twists(n);
                if (std::any_of(tw.begin(), tw.end(), [](const Twist& t) { return t.kind == Twist::Kind::Full; })) continue;
                auto key = canonical_form(n);
                if (seen.emplace(std::move(key), n).second) queue.push_back(std::move(n));
            }
    }
    return seen;
}

std::vector<EndGluing> identify_ends(const ConfigurationTuple& t) {
    std::array<std::array<Configuration, 8>, 6> framed;
    std::array<std::array<CurveFacts, 2>, 6> facts;
    for (int s = 0; s < 6; ++s) {
        auto ov = build_overlay(at(t.slots, s));
        if (!ov) return {};
        for (int col = 0; col < 2; ++col) at(facts, s)[static_cast<size_t>(col)] = curve_facts(at(t.slots, s), *ov, col);
        for (int d = 0; d < 8; ++d) at(framed, s)[static_cast<size_t>(d)] = dihedral(at(t.slots, s), d);
    }
    // Per trisector: admissible frames of its hosts, with the two non-base links.
    struct Option {
        std::array<int, 3> frame;
        CurveLink second, third;
    };
    std::array<std::vector<Option>, 4> options;
    for (int m = 0; m < 4; ++m) {
        auto hosts = hosts_of(m);
        std::array<std::array<EndCodes, 16>, 3> codes;
        for (int h = 0; h < 3; ++h)
            for (int o = 0; o < 16; ++o)
                at(codes, h)[static_cast<size_t>(o)] =
                    end_codes(at(framed, at(hosts, h)[0])[static_cast<size_t>(o / 2)], at(hosts, h)[0], at(hosts, h)[1], o % 2);
        auto fact = [&](int h) -> const CurveFacts& { return at(facts, at(hosts, h)[0])[static_cast<size_t>(at(hosts, h)[1])]; };
        for (int o0 = 0; o0 < 16; ++o0)
            for (int o1 = 0; o1 < 16; ++o1) {
                auto l1 = link_by_codes(fact(0), at(codes, 0)[static_cast<size_t>(o0)], fact(1), at(codes, 1)[static_cast<size_t>(o1)]);
                if (!l1) continue;
                for (int o2 = 0; o2 < 16; ++o2) {
                    auto l2 = link_by_codes(fact(0), at(codes, 0)[static_cast<size_t>(o0)], fact(2), at(codes, 2)[static_cast<size_t>(o2)]);
                    if (!l2) continue;
                    // every side branch is the U branch of exactly one host
                    std::array<int, 4> uses{};
                    if (fact(0).u >= 0) ++at(uses, fact(0).u);
                    if (fact(1).u >= 0) ++at(uses, at(l1->branch, fact(1).u));
                    if (fact(2).u >= 0) ++at(uses, at(l2->branch, fact(2).u));
                    bool ok = true;
                    for (int g = 0; g < 4; ++g)
                        if (g != fact(0).middle && at(uses, g) != 1) ok = false;
                    if (ok) at(options, m).push_back({{o0 / 2, o1 / 2, o2 / 2}, *l1, *l2});
                }
            }
        if (at(options, m).empty()) return {};
    }
    // Frames shared between the two trisectors drawn on each slot.
    std::vector<EndGluing> out;
    EndGluing cur;
    std::array<int, 6> assigned;
    assigned.fill(-1);
    auto rec = [&](auto& self, int m) -> void {
        if (m == 4) {
            out.push_back(cur);
            return;
        }
        auto hosts = hosts_of(m);
        for (const auto& op : at(options, m)) {
            bool ok = true;
            for (int h = 0; h < 3 && ok; ++h) {
                int a = at(assigned, at(hosts, h)[0]);
                if (a >= 0 && a != at(op.frame, h)) ok = false;
            }
            if (!ok) continue;
            auto saved = assigned;
            auto saved_links = cur.links;
            for (int h = 0; h < 3; ++h) at(assigned, at(hosts, h)[0]) = at(op.frame, h);
            at(cur.links, at(hosts, 0)[0])[static_cast<size_t>(at(hosts, 0)[1])] = CurveLink{};
            at(cur.links, at(hosts, 1)[0])[static_cast<size_t>(at(hosts, 1)[1])] = op.second;
            at(cur.links, at(hosts, 2)[0])[static_cast<size_t>(at(hosts, 2)[1])] = op.third;
            cur.frame = assigned;
            self(self, m + 1);
            assigned = saved;
            cur.links = saved_links;
        }
    };
    rec(rec, 0);
    return out;
}

std::string check_tuple(const ConfigurationTuple& t) {
    int V = t.vertex_count();
    int n22 = 0, n26 = 0, n04 = 0, n44 = 0, nvd_faces = 0, fvd_faces = 0;
    std::array<std::array<int, 4>, 4> par{};
    for (int s = 0; s < 6; ++s) {
        const auto& c = at(t.slots, s);
        if (c.vertex_count() != V) return "vertex-count";
        auto k = bisector_class(c);
        n22 += k == std::array<int, 2>{2, 2};
        n26 += k == std::array<int, 2>{2, 6};
        n04 += k == std::array<int, 2>{0, 4};
        n44 += k == std::array<int, 2>{4, 4};
        int a = missing_line(s, 0), b = missing_line(s, 1);
        bool p = vertical_middle(c, 0) == vertical_middle(c, 1);
        at(at(par, a), b) = at(at(par, b), a) = p ? 1 : 0;
        auto ov = build_overlay(c);
        if (!ov) return "overlay";
        for (const auto& f : ov->faces) {
            nvd_faces += f.label == FaceLabel::NVD;
            fvd_faces += f.label == FaceLabel::FVD;
        }
    }
    if (!((n22 == 3 && n26 == 3) || (n04 == 3 && n44 == 3))) return "class-pattern";
    if (!parallel_closed(par)) return "parallel";
    if (nvd_faces != V + 9) return "nvd-faces";
    if (fvd_faces != V + 21) return "fvd-faces";
    if (identify_ends(t).empty()) return "ends";
    return "";
}

std::string canonical_key(const ConfigurationTuple& t) {
    std::string best;
    int V = t.vertex_count();
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        std::array<Configuration, 6> img;
        for (int s = 0; s < 6; ++s) {
            SlotMap m = permuted_slot(perm, s);
            at(img, m.slot) = m.swap ? swap_colors(at(t.slots, s)) : at(t.slots, s);
        }
        // Vertex numbering from the least dihedral image of the first slot.
        std::string first;
        std::vector<std::vector<int>> relabels;
        for (int d = 0; d < 8; ++d) {
            Configuration c = dihedral(img[0], d);
            std::string e = encode(normalize(c));
            if (first.empty() || e < first) {
                first = e;
                relabels.clear();
            }
            if (e == first) {
                // first-appearance numbering of that image
                std::vector<int> rl(static_cast<size_t>(V), -1);
                std::array<int, 4> seen{-1, -1, -1, -1};
                int next = 0, k = 0;
                std::vector<std::pair<int, bool>> br;
                for (auto tok : c.order) {
                    EndToken e2 = EndToken::unpack(tok);
                    if (e2.color != 0 || at(seen, e2.branch) >= 0) continue;
                    at(seen, e2.branch) = next++;
                    br.push_back({e2.branch, e2.end == 1});
                }
                for (auto [b, flip] : br) {
                    auto s = at(c.sequences[0], b);
                    if (flip) std::reverse(s.begin(), s.end());
                    for (int v : s) rl[static_cast<size_t>(v)] = k++;
                }
                relabels.push_back(rl);
            }
        }
        for (const auto& rl : relabels) {
            std::string key = first;
            for (int s = 1; s < 6; ++s) {
                std::string b;
                for (int d = 0; d < 8; ++d) {
                    std::string e = encode_fixed(dihedral(at(img, s), d), rl);
                    if (b.empty() || e < b) b = e;
                }
                key += ' ';
                key += b;
            }
            if (best.empty() || key < best) best = key;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<ConfigurationTuple> phase3_search(const std::map<std::string, Configuration>& configs, int jobs,
                                              SearchStats* stats) {
    // Slot candidates: both color assignments of every admissible configuration.
    std::map<std::string, Configuration> oriented;
    for (const auto& [key, c] : configs) {
        if (!phase2_filter(c)) continue;
        for (int sw = 0; sw < 2; ++sw) {
            Configuration t = sw ? swap_colors(c) : c;
            std::string best;
            Configuration rep;
            for (int d = 0; d < 8; ++d) {
                Configuration u = normalize(dihedral(t, d));
                std::string e = encode(u);
                if (best.empty() || e < best) {
                    best = e;
                    rep = u;
                }
            }
            oriented.emplace(best, rep);
        }
    }
    std::vector<Candidate> cands;
    for (const auto& [key, c] : oriented) cands.push_back(make_candidate(c));

    jobs = std::max(1, jobs);
    std::vector<std::map<std::string, ConfigurationTuple>> found(static_cast<size_t>(jobs));
    std::vector<SearchStats> st(static_cast<size_t>(jobs));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            Search search(cands, st[static_cast<size_t>(w)]);
            for (size_t i = static_cast<size_t>(w); i < cands.size(); i += static_cast<size_t>(jobs))
                search.run_from(cands[i], found[static_cast<size_t>(w)]);
        });
    for (auto& th : pool) th.join();

    std::map<std::string, ConfigurationTuple> merged;
    for (auto& f : found) merged.merge(f);
    if (stats) {
        for (const auto& s : st) {
            stats->candidates += s.candidates;
            for (const auto& [k, v] : s.rejected) stats->rejected[k] += v;
        }
    }
    std::vector<std::pair<std::string, ConfigurationTuple>> sorted(merged.begin(), merged.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.second.vertex_count() < b.second.vertex_count();
    });
    std::vector<ConfigurationTuple> out;
    for (auto& [k, t] : sorted) out.push_back(std::move(t));
    return out;
}

}  // namespace quadline
