#include "quadline/curves.hpp"

#include "quadline/configuration.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace quadline {

namespace {

// Raised when a sign cannot be certified at the current working precision.
struct NeedPrecision {};

constexpr mpfr_prec_t kStartPrecision = 128;
constexpr mpfr_prec_t kMaxPrecision = 8192;

int certain(const Interval& v) {
    auto s = v.sign();
    if (!s) throw NeedPrecision{};
    return *s;
}

Interval eval(const SurdPoly& p, const Interval& t) {
    Interval acc(t.precision());
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + Interval(*it, t.precision());
    return acc;
}

Interval eval(const QPoly& p, const Interval& t) {
    Interval acc(t.precision());
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + Interval(*it, t.precision());
    return acc;
}

Interval eval(const Biquadratic& p, const Interval& x, const Interval& y) {
    auto prec = x.precision();
    Interval acc(prec);
    Interval xp(Rational(1), prec);
    for (std::size_t i = 0; i < 3; ++i) {
        Interval yp(Rational(1), prec);
        for (std::size_t j = 0; j < 3; ++j) {
            if (p.c[i][j].sign() != 0) acc += Interval(p.c[i][j], prec) * xp * yp;
            yp *= y;
        }
        xp *= x;
    }
    return acc;
}

// Partial derivatives of a biquadratic at an interval point: {d/dX, d/dY}.
std::array<Interval, 2> gradient(const Biquadratic& p, const Interval& x, const Interval& y) {
    auto prec = x.precision();
    std::array<Interval, 2> g{Interval(prec), Interval(prec)};
    const std::array<Interval, 3> xs{Interval(Rational(1), prec), x, x * x};
    const std::array<Interval, 3> ys{Interval(Rational(1), prec), y, y * y};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (p.c[i][j].sign() == 0) continue;
            Interval c(p.c[i][j], prec);
            if (i > 0) g[0] += Interval(Rational(static_cast<long>(i)), prec) * c * xs[i - 1] * ys[j];
            if (j > 0) g[1] += Interval(Rational(static_cast<long>(j)), prec) * c * xs[i] * ys[j - 1];
        }
    return g;
}

// Ascending real roots of a quadratic with coefficients in Q(sqrt q).
std::array<QuadraticRoot, 2> quadratic_roots(const SurdPoly& p) {
    if (p.degree() != 2) throw DegenerateInput(5, "trisector asymptote missing");
    Surd lam = p.coeff(2), mu = p.coeff(1), nu = p.coeff(0);
    Surd disc = mu * mu - Surd(4) * lam * nu;
    if (disc.sign() <= 0) throw DegenerateInput(5, "trisector asymptotes not real and distinct");
    Surd alpha = -mu / (Surd(2) * lam);
    Surd half = Surd(1) / (Surd(2) * (lam.sign() < 0 ? -lam : lam));
    return {QuadraticRoot{alpha, -half, disc}, QuadraticRoot{alpha, half, disc}};
}

bool has_real_root(const SurdPoly& p) { return p.degree() > 0 && sturm_count(p) > 0; }

// Order of two algebraic values given as enclosures; refines through the precision loop.
bool less_certain(const Interval& a, const Interval& b) {
    if (a.overlaps(b)) throw NeedPrecision{};
    return a.upper() < b.lower();
}

Vec3<Interval> to_interval(const Vec3<Surd>& v, mpfr_prec_t prec) {
    return {Interval(v.x, prec), Interval(v.y, prec), Interval(v.z, prec)};
}

Interval idot(const Vec3<Interval>& a, const Vec3<Interval>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

std::array<int, 2> remaining(LinePair pair) {
    std::array<int, 2> out{};
    std::size_t n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != pair.first && k != pair.second) out[n++] = k;
    return out;
}

}  // namespace

// ---------------------------------------------------------------- quadratic roots

Interval QuadraticRoot::enclose(mpfr_prec_t prec) const {
    return Interval(alpha, prec) + Interval(beta, prec) * Interval(disc, prec).sqrt();
}

int QuadraticRoot::sign_at(const SurdPoly& p) const {
    // Reduce p modulo the minimal quadratic t^2 - 2 alpha t + (alpha^2 - beta^2 disc).
    Surd s = Surd(2) * alpha;
    Surd n = alpha * alpha - beta * beta * disc;
    std::vector<Surd> c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 2;) {
        // t^k = t^(k-2) (s t - n)
        c[k - 1] += c[k] * s;
        c[k - 2] -= c[k] * n;
        c[k] = 0;
    }
    Surd r0 = c.size() > 0 ? c[0] : Surd(0);
    Surd r1 = c.size() > 1 ? c[1] : Surd(0);
    return sign_nested(r0 + r1 * alpha, r1 * beta, disc);
}

// ---------------------------------------------------------------- branch separation

int BranchStructure::middle() const {
    for (int b = 0; b < 4; ++b)
        if (branches[static_cast<std::size_t>(b)].role == BranchRole::Middle) return b;
    return -1;
}

int BranchStructure::u_branch() const {
    for (int b = 0; b < 4; ++b)
        if (branches[static_cast<std::size_t>(b)].role == BranchRole::U) return b;
    return -1;
}

int BranchStructure::branch_of(BranchEnd e) const {
    for (int b = 0; b < 4; ++b)
        for (const auto& x : branches[static_cast<std::size_t>(b)].ends)
            if (x == e) return b;
    return -1;
}

BranchStructure separate_branches(const Biquadratic& p) {
    BranchStructure s;
    SurdPoly dy = p.in_y(1) * p.in_y(1) - p.in_y(2) * p.in_y(0) * Surd(4);
    SurdPoly dx = p.in_x(1) * p.in_x(1) - p.in_x(2) * p.in_x(0) * Surd(4);
    bool ymono = !has_real_root(dy);
    bool xmono = !has_real_root(dx);
    if (ymono == xmono) throw DegenerateInput(5, "trisector is not monotone in exactly one direction");
    s.monotonicity = ymono ? Monotonicity::YMonotone : Monotonicity::XMonotone;

    // The curve is lead(t) u^2 + mid(t) u + rest(t) = 0 in the parameter t.
    SurdPoly lead = ymono ? p.in_y(2) : p.in_x(2);
    SurdPoly mid = ymono ? p.in_y(1) : p.in_x(1);
    s.horizontal = quadratic_roots(p.in_y(2));
    s.vertical = quadratic_roots(p.in_x(2));
    const auto& cuts = ymono ? s.horizontal : s.vertical;

    int sl = lead.lc().sign();
    s.lead_sign = {sl, -sl, sl};
    // Root escaping to infinity just below each cut: 1 (upper root, +inf) or 0.
    std::array<int, 2> esc_below{};
    for (std::size_t a = 0; a < 2; ++a) {
        int sb = cuts[a].sign_at(mid);
        if (sb == 0) throw DegenerateInput(5, "asymptote meets the curve");
        esc_below[a] = -sb * s.lead_sign[a] > 0 ? 1 : 0;
    }
    const Side plus = ymono ? Side::Right : Side::Top;
    const Side minus = ymono ? Side::Left : Side::Bottom;
    const Side low = ymono ? Side::Bottom : Side::Left;
    const Side high = ymono ? Side::Top : Side::Right;

    // Piece (k, r): root r on parameter interval k. An end is either a BranchEnd or a link.
    struct PieceEnds {
        std::optional<BranchEnd> lower, upper;
        int next = -1;  // root index on interval k+1 when linked upward
    };
    std::array<std::array<PieceEnds, 2>, 3> pieces;
    for (int k = 0; k < 3; ++k)
        for (int r = 0; r < 2; ++r) {
            auto& pe = pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
            if (k == 0) {
                pe.lower = BranchEnd{low, r};
            } else if (1 - esc_below[static_cast<std::size_t>(k - 1)] == r) {
                pe.lower = BranchEnd{r == 1 ? plus : minus, k - 1};
            }
            if (k == 2) {
                pe.upper = BranchEnd{high, r};
            } else if (esc_below[static_cast<std::size_t>(k)] == r) {
                pe.upper = BranchEnd{r == 1 ? plus : minus, k};
            } else {
                pe.next = esc_below[static_cast<std::size_t>(k)];
            }
        }
    int nb = 0;
    for (int k = 0; k < 3; ++k)
        for (int r = 0; r < 2; ++r) {
            const auto& start = pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
            if (!start.lower) continue;
            if (nb == 4) throw std::logic_error("more than four branches");
            auto& br = s.branches[static_cast<std::size_t>(nb++)];
            br.ends[0] = *start.lower;
            int kk = k, rr = r;
            while (true) {
                const auto& pe = pieces[static_cast<std::size_t>(kk)][static_cast<std::size_t>(rr)];
                br.pieces[static_cast<std::size_t>(kk)] = rr;
                if (pe.upper) {
                    br.ends[1] = *pe.upper;
                    break;
                }
                rr = pe.next;
                ++kk;
            }
        }
    if (nb != 4) throw std::logic_error("branch separation did not find four branches");
    int middles = 0;
    for (auto& br : s.branches) {
        int used = static_cast<int>(std::count_if(br.pieces.begin(), br.pieces.end(), [](int r) { return r >= 0; }));
        if (used == 3) {
            br.role = BranchRole::Middle;
            ++middles;
        } else if (used == 1 && br.pieces[1] >= 0) {
            br.role = BranchRole::U;
        }
    }
    if (middles != 1) throw DegenerateInput(5, "trisector has no unique middle branch");
    int rank = s.branches[static_cast<std::size_t>(s.middle())].ends[0].rank;
    s.middle_axis = ymono ? (rank == 0 ? MiddleAxis::LeftVertical : MiddleAxis::RightVertical)
                          : (rank == 0 ? MiddleAxis::LowerHorizontal : MiddleAxis::UpperHorizontal);
    return s;
}

std::optional<BranchPoint> locate_on_branch(const Biquadratic& p, const BranchStructure& s, const Interval& x,
                                            const Interval& y) {
    bool ymono = s.monotonicity == Monotonicity::YMonotone;
    const Interval& t = ymono ? y : x;
    const Interval& u = ymono ? x : y;
    const auto& cuts = ymono ? s.horizontal : s.vertical;
    auto prec = t.precision();
    int k = 0;
    for (const auto& c : cuts) {
        Interval e = c.enclose(prec);
        if (e.overlaps(t)) return std::nullopt;
        if (e.upper() < t.lower()) ++k;
    }
    SurdPoly lead = ymono ? p.in_y(2) : p.in_x(2);
    SurdPoly mid = ymono ? p.in_y(1) : p.in_x(1);
    Interval w = Interval(Rational(2), prec) * eval(lead, t) * u + eval(mid, t);
    auto sw = w.sign();
    if (!sw) return std::nullopt;
    int r = *sw * s.lead_sign[static_cast<std::size_t>(k)] > 0 ? 1 : 0;
    for (int b = 0; b < 4; ++b)
        if (s.branches[static_cast<std::size_t>(b)].pieces[static_cast<std::size_t>(k)] == r) return BranchPoint{b, t};
    throw std::logic_error("branch pieces do not cover the curve");
}

// ---------------------------------------------------------------- vertices

VertexSolver::VertexSolver(const LineSet& lines)
    : lines_(lines), t3_(trisector_polynomial(lines, 2)), t4_(trisector_polynomial(lines, 3)) {
    res_ = intersection_polynomial(t3_, t4_);
    if (res_.is_zero()) throw DegenerateInput(6, "intersection resultant vanishes");
    if (!is_squarefree(res_)) throw DegenerateInput(6, "intersection resultant has a repeated root");
    roots_ = RootIsolator<Rational>(res_).isolate();
}

std::vector<VertexBox> VertexSolver::boxes(mpfr_prec_t prec) const {
    RootIsolator<Rational> iso(res_);
    Rational width(1);
    mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), static_cast<mp_bitcnt_t>(prec));
    std::vector<VertexBox> out;
    for (RootInterval iv : roots_) {
        iso.refine(iv, width);
        Interval x(iv.lo, iv.hi, prec);
        Interval A = eval(t3_.A, x), B = eval(t3_.B, x), C = eval(t3_.C, x);
        Interval D = B * B - Interval(Rational(4), prec) * A * C;
        if (certain(D) < 0) throw std::logic_error("vertex off the real trisector");
        Interval sq = D.sqrt();
        // Stable pair of roots: q = -(B + sgn(B) sqrt D) / 2, roots q / A and C / q.
        std::vector<Interval> cand;
        auto sb = B.sign();
        if (sb) {
            Interval q = Interval(Rational(-1, 2), prec) * (*sb > 0 ? B + sq : B - sq);
            if (!A.contains_zero()) cand.push_back(q / A);
            if (!q.contains_zero()) cand.push_back(C / q);
        } else {
            if (A.contains_zero()) throw NeedPrecision{};
            Interval two_a = Interval(Rational(2), prec) * A;
            cand.push_back((-B - sq) / two_a);
            cand.push_back((-B + sq) / two_a);
        }
        std::optional<Interval> y;
        for (const auto& c : cand) {
            Interval other = eval(t4_.A, x) * c * c + eval(t4_.B, x) * c + eval(t4_.C, x);
            if (!other.contains_zero()) continue;
            if (y && !y->overlaps(c)) throw NeedPrecision{};
            y = y ? Interval::hull(*y, c) : c;
        }
        if (!y) throw NeedPrecision{};
        Rational a = lines_.a();
        Interval z = Interval(-a / (1 + a * a), prec) * x * *y;
        out.push_back({x, *y, z});
    }
    return out;
}

// ---------------------------------------------------------------- tracing

namespace {

struct TraceInputs {
    LinePair pair;
    std::array<int, 2> thirds;
    BisectorFrame frame;
    std::array<Biquadratic, 2> curve;
    std::array<BranchStructure, 2> branches;
};

BisectorTrace trace_at(const TraceInputs& in, const VertexSolver& solver, const LineSet& lines, mpfr_prec_t prec) {
    BisectorTrace tr;
    tr.pair = in.pair;
    tr.thirds = in.thirds;
    tr.frame = in.frame;
    tr.curve = in.curve;
    tr.branches = in.branches;

    // Circular order of the ends.
    struct EndInfo {
        int color, branch, end;
        Side side;
        int rank;
        Interval value;
    };
    std::array<std::vector<EndInfo>, 4> by_side;
    for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 4; ++b)
            for (int e = 0; e < 2; ++e) {
                const auto& bs = in.branches[static_cast<std::size_t>(c)];
                BranchEnd be = bs.branches[static_cast<std::size_t>(b)].ends[static_cast<std::size_t>(e)];
                bool horizontal = be.side == Side::Right || be.side == Side::Left;
                const auto& roots = horizontal ? bs.horizontal : bs.vertical;
                by_side[static_cast<std::size_t>(be.side)].push_back(
                    {c, b, e, be.side, be.rank, roots[static_cast<std::size_t>(be.rank)].enclose(prec)});
            }
    std::size_t pos = 0;
    for (std::size_t side = 0; side < 4; ++side) {
        auto& v = by_side[side];
        if (v.size() != 4) throw std::logic_error("a side does not hold four ends");
        bool ascending = side == 0 || side == 3;
        std::sort(v.begin(), v.end(), [&](const EndInfo& a, const EndInfo& b) {
            if (a.color == b.color) return ascending ? a.rank < b.rank : a.rank > b.rank;
            return ascending ? less_certain(a.value, b.value) : less_certain(b.value, a.value);
        });
        for (const auto& e : v) tr.order[pos++] = {e.color, e.branch, e.end};
    }

    // Directions of the ends in space, and their signs against each line direction.
    const auto& f = in.frame;
    Vec3<Surd> ez{Surd(f.ez.x), Surd(f.ez.y), Surd(f.ez.z)};
    for (std::size_t side = 0; side < 4; ++side)
        for (const auto& e : by_side[side]) {
            const auto& bs = in.branches[static_cast<std::size_t>(e.color)];
            bool horizontal = e.side == Side::Right || e.side == Side::Left;
            const QuadraticRoot& root = (horizontal ? bs.horizontal : bs.vertical)[static_cast<std::size_t>(e.rank)];
            const Vec3<Surd>& axis = horizontal ? f.ex : f.ey;
            int flip = (e.side == Side::Left || e.side == Side::Bottom) ? -1 : 1;
            for (int m = 0; m < 4; ++m) {
                QVec um = lines.line(m).dir;
                Vec3<Surd> su{Surd(um.x), Surd(um.y), Surd(um.z)};
                SurdPoly form({dot(axis, su), Surd(f.kappa) * dot(ez, su)});
                tr.end_signs[static_cast<std::size_t>(e.color)][static_cast<std::size_t>(e.branch)]
                            [static_cast<std::size_t>(e.end)][static_cast<std::size_t>(m)] = flip * root.sign_at(form);
            }
        }

    // Vertices, projected from space into this frame.
    auto boxes = solver.boxes(prec);
    Vec3<Interval> ex = to_interval(f.ex, prec), ey = to_interval(f.ey, prec);
    Interval exx(dot(f.ex, f.ex), prec), eyy(dot(f.ey, f.ey), prec);
    std::array<std::array<std::vector<std::pair<Interval, int>>, 4>, 2> along;
    for (std::size_t v = 0; v < boxes.size(); ++v) {
        const auto& bx = boxes[v];
        Vec3<Interval> d{bx.x - Interval(f.origin.x, prec), bx.y - Interval(f.origin.y, prec),
                         bx.z - Interval(f.origin.z, prec)};
        Interval X = idot(d, ex) / exx;
        Interval Y = idot(d, ey) / eyy;
        BisectorTrace::Incidence inc;
        std::array<std::array<Interval, 2>, 2> grads{{{Interval(prec), Interval(prec)}, {Interval(prec), Interval(prec)}}};
        std::array<int, 2> eps{};
        for (std::size_t c = 0; c < 2; ++c) {
            if (!eval(in.curve[c], X, Y).contains_zero()) throw std::logic_error("projected vertex misses a trisector");
            auto bp = locate_on_branch(in.curve[c], in.branches[c], X, Y);
            if (!bp) throw NeedPrecision{};
            inc.branch[c] = bp->branch;
            inc.parameter[c] = bp->parameter.mid_double();
            along[c][static_cast<std::size_t>(bp->branch)].push_back({bp->parameter, static_cast<int>(v)});
            grads[c] = gradient(in.curve[c], X, Y);
            eps[c] = in.branches[c].monotonicity == Monotonicity::YMonotone ? certain(grads[c][0]) : -certain(grads[c][1]);
        }
        Interval det = grads[0][0] * grads[1][1] - grads[0][1] * grads[1][0];
        inc.rotation = eps[0] * eps[1] * certain(det);
        tr.vertices.push_back(inc);
    }
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t b = 0; b < 4; ++b) {
            auto& list = along[c][b];
            std::sort(list.begin(), list.end(), [](const auto& p, const auto& q) { return less_certain(p.first, q.first); });
            for (const auto& [t, v] : list) tr.sequences[c][b].push_back(v);
        }
    return tr;
}

}  // namespace

BisectorTrace trace_bisector(const LineSet& lines, LinePair pair, const VertexSolver& solver) {
    if (pair.first > pair.second) std::swap(pair.first, pair.second);
    TraceInputs in;
    in.pair = pair;
    in.thirds = remaining(pair);
    in.frame = bisector_frame(lines, pair);
    for (std::size_t c = 0; c < 2; ++c) {
        in.curve[c] = frame_trisector(lines, in.frame, in.thirds[c]);
        in.branches[c] = separate_branches(in.curve[c]);
    }
    for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        try {
            return trace_at(in, solver, lines, prec);
        } catch (const NeedPrecision&) {
        }
    }
    throw DegenerateInput(6, "vertex signs undecided at maximum precision");
}

BisectorTrace trace_bisector(const LineSet& lines, LinePair pair) {
    VertexSolver solver(lines);
    return trace_bisector(lines, pair, solver);
}

Configuration to_configuration(const BisectorTrace& trace) {
    Configuration c;
    for (std::size_t p = 0; p < 16; ++p) {
        const auto& s = trace.order[p];
        c.order[p] = EndToken{s.color, s.branch, s.end}.pack();
    }
    c.sequences = trace.sequences;
    for (const auto& v : trace.vertices) c.rotation.push_back(v.rotation);
    return c;
}

Configuration trace_configuration(const LineSet& lines, LinePair pair) { return to_configuration(trace_bisector(lines, pair)); }

bool parallel(const BranchStructure& a, const BranchStructure& b) { return a.monotonicity == b.monotonicity; }
bool parallel(const ProjectedTrisector& a, const ProjectedTrisector& b) { return a.monotonicity == b.monotonicity; }

}  // namespace quadline
