#include "quadline/lines.hpp"

#include "quadline/curves.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace quadline {

const std::array<LinePair, 6>& all_pairs() {
    static const std::array<LinePair, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return pairs;
}

int pair_index(LinePair p) {
    if (p.first > p.second) std::swap(p.first, p.second);
    const auto& ps = all_pairs();
    for (int k = 0; k < 6; ++k)
        if (ps[static_cast<std::size_t>(k)] == p) return k;
    throw std::invalid_argument("not a line pair");
}

LineSet::LineSet(Rational a, std::array<Rational, 4> l3, std::array<Rational, 4> l4)
    : a_(std::move(a)), p_{std::move(l3), std::move(l4)} {
    if (a_ == 0) throw std::invalid_argument("a = 0: the first two lines are parallel");
}

std::array<Rational, 9> LineSet::flat() const {
    return {a_, p_[0][0], p_[0][1], p_[0][2], p_[0][3], p_[1][0], p_[1][1], p_[1][2], p_[1][3]};
}

Line LineSet::line(int i) const {
    switch (i) {
        case 0: return {{0, 0, 1}, {1, a_, 0}};
        case 1: return {{0, 0, -1}, {1, -a_, 0}};
        case 2:
        case 3: {
            const auto& q = p_[static_cast<std::size_t>(i - 2)];
            return {{q[0], q[1], 0}, {q[2], q[3], 1}};
        }
        default: throw std::out_of_range("line index");
    }
}

// ---------------------------------------------------------------- parsing

ParsedLineSet parse_lineset(std::string_view text) {
    ParsedLineSet out;
    static const char* const keys[9] = {"a", "b3", "c3", "d3", "e3", "b4", "c4", "d4", "e4"};
    std::vector<std::pair<std::string, std::pair<int, int>>> tokens;
    std::map<std::string, std::pair<std::string, std::pair<int, int>>> kv;
    bool keyed = false;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++lineno;
        pos = end + 1;
        auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string trimmed(raw);
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (trimmed.empty() || trimmed.rfind("quadline-atlas", 0) == 0) {
            if (end == text.size()) break;
            continue;
        }
        auto eq = raw.find_first_of("=:");
        if (eq != std::string_view::npos) {
            keyed = true;
            std::string key(raw.substr(0, eq)), val(raw.substr(eq + 1));
            auto strip = [](std::string& s) {
                s.erase(0, s.find_first_not_of(" \t\r"));
                s.erase(s.find_last_not_of(" \t\r") + 1);
            };
            strip(key);
            strip(val);
            int col = static_cast<int>(raw.find_first_not_of(" \t", eq + 1)) + 1;
            if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys)) {
                out.error = {lineno, 1, "unknown key '" + key + "'"};
                return out;
            }
            kv[key] = {val, {lineno, col}};
        } else {
            std::size_t i = 0;
            while (i < raw.size()) {
                while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                if (i >= raw.size()) break;
                std::size_t j = i;
                while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
                tokens.push_back({std::string(raw.substr(i, j - i)), {lineno, static_cast<int>(i) + 1}});
                i = j;
            }
        }
        if (end == text.size()) break;
    }
    if (keyed && !tokens.empty()) {
        out.error = {tokens[0].second.first, tokens[0].second.second, "mixed positional and key/value input"};
        return out;
    }
    if (keyed) {
        for (const char* k : keys) {
            auto it = kv.find(k);
            if (it == kv.end()) {
                out.error = {lineno, 1, std::string("missing key '") + k + "'"};
                return out;
            }
            tokens.push_back(it->second);
        }
    }
    if (tokens.size() != 9) {
        int l = tokens.size() > 9 ? tokens[9].second.first : lineno;
        int c = tokens.size() > 9 ? tokens[9].second.second : 1;
        out.error = {l, c, "expected 9 parameters, found " + std::to_string(tokens.size())};
        return out;
    }
    std::array<Rational, 9> v;
    for (std::size_t k = 0; k < 9; ++k) {
        try {
            v[k] = parse_rational(tokens[k].first);
        } catch (const std::invalid_argument& e) {
            out.error = {tokens[k].second.first, tokens[k].second.second, e.what()};
            return out;
        }
    }
    if (v[0] == 0) {
        out.error = {tokens[0].second.first, tokens[0].second.second, "a must be nonzero"};
        return out;
    }
    out.value = LineSet(v[0], {v[1], v[2], v[3], v[4]}, {v[5], v[6], v[7], v[8]});
    return out;
}

std::string format_lineset(const LineSet& lines) {
    std::ostringstream os;
    auto f = lines.flat();
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? " " : "") << f[k].get_str();
    return os.str();
}

// ---------------------------------------------------------------- biquadratics

SurdPoly Biquadratic::in_x(int j) const {
    return SurdPoly({c[0][static_cast<std::size_t>(j)], c[1][static_cast<std::size_t>(j)], c[2][static_cast<std::size_t>(j)]});
}

SurdPoly Biquadratic::in_y(int i) const {
    const auto& r = c[static_cast<std::size_t>(i)];
    return SurdPoly({r[0], r[1], r[2]});
}

Poly<SurdPoly> Biquadratic::as_poly_in_y() const { return Poly<SurdPoly>({in_x(0), in_x(1), in_x(2)}); }

Surd Biquadratic::eval(const Surd& x, const Surd& y) const {
    Surd acc = 0;
    Surd xp = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        Surd yp = 1;
        for (std::size_t j = 0; j < 3; ++j) {
            acc += c[i][j] * xp * yp;
            yp *= y;
        }
        xp *= x;
    }
    return acc;
}

namespace {

// a + b X + c Y + d XY
struct Bilinear {
    std::array<Surd, 4> k{};  // 1, X, Y, XY
};

Biquadratic product(const Bilinear& p, const Bilinear& q) {
    static const int ex[4] = {0, 1, 0, 1};
    static const int ey[4] = {0, 0, 1, 1};
    Biquadratic r;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            if (p.k[a].sign() == 0 || q.k[b].sign() == 0) continue;
            r.c[static_cast<std::size_t>(ex[a] + ex[b])][static_cast<std::size_t>(ey[a] + ey[b])] += p.k[a] * q.k[b];
        }
    return r;
}

Biquadratic& add_scaled(Biquadratic& acc, const Biquadratic& t, const Surd& s) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) acc.c[i][j] += s * t.c[i][j];
    return acc;
}

// r * |w|^2 - (w.u)^2 for w = frame point - line point.
Biquadratic scaled_sq_distance(const BisectorFrame& f, const Line& l) {
    std::array<Bilinear, 3> w;
    const Surd ox[3] = {Rational(f.origin.x - l.point.x), Rational(f.origin.y - l.point.y), Rational(f.origin.z - l.point.z)};
    const Surd ex[3] = {f.ex.x, f.ex.y, f.ex.z};
    const Surd ey[3] = {f.ey.x, f.ey.y, f.ey.z};
    const Rational ez[3] = {f.ez.x, f.ez.y, f.ez.z};
    for (std::size_t c = 0; c < 3; ++c) w[c].k = {ox[c], ex[c], ey[c], Surd(f.kappa * ez[c])};
    const Rational u[3] = {l.dir.x, l.dir.y, l.dir.z};
    Rational r = dot(l.dir, l.dir);
    Bilinear wu;
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < 4; ++m) wu.k[m] += w[c].k[m] * Surd(u[c]);
    Biquadratic out;
    for (std::size_t c = 0; c < 3; ++c) add_scaled(out, product(w[c], w[c]), Surd(r));
    add_scaled(out, product(wu, wu), Surd(-1));
    return out;
}

}  // namespace

Vec3<Surd> BisectorFrame::point(const Surd& x, const Surd& y) const {
    Surd h = Surd(kappa) * x * y;
    return {Surd(origin.x) + x * ex.x + y * ey.x + h * Surd(ez.x), Surd(origin.y) + x * ex.y + y * ey.y + h * Surd(ez.y),
            Surd(origin.z) + x * ex.z + y * ey.z + h * Surd(ez.z)};
}

BisectorFrame bisector_frame(const LineSet& lines, LinePair pair) {
    BisectorFrame f;
    f.i = pair.first;
    f.j = pair.second;
    Line li = lines.line(f.i), lj = lines.line(f.j);
    const QVec& u = li.dir;
    const QVec& v = lj.dir;
    QVec w0 = li.point - lj.point;
    Rational a = dot(u, u), b = dot(u, v), c = dot(v, v), d = dot(u, w0), e = dot(v, w0);
    Rational den = a * c - b * b;
    if (den == 0) throw DegenerateInput(1, "parallel lines");
    Rational s = (b * e - c * d) / den;
    Rational t = (a * e - b * d) / den;
    QVec qi = li.point + s * u;
    QVec qj = lj.point + t * v;
    f.origin = Rational(1, 2) * (qi + qj);
    f.ez = qi - f.origin;
    Rational h2 = dot(f.ez, f.ez);
    if (h2 == 0) throw DegenerateInput(1, "intersecting lines");
    QVec n = cross(u, v);
    f.kappa = -dot(n, n) / (c * h2);
    Surd tau(0, 1 / c, a * c);  // sqrt(a c) / c = |u| / |v|
    f.radicand = tau.is_rational() ? Rational(0) : a * c;
    auto lift = [](const QVec& q) { return Vec3<Surd>{Surd(q.x), Surd(q.y), Surd(q.z)}; };
    Vec3<Surd> su = lift(u), sv = lift(v);
    f.ex = su + tau * sv;
    f.ey = su - tau * sv;
    return f;
}

Biquadratic frame_trisector(const LineSet& lines, const BisectorFrame& frame, int k) {
    Line li = lines.line(frame.i), lk = lines.line(k);
    Biquadratic gi = scaled_sq_distance(frame, li);
    Biquadratic gk = scaled_sq_distance(frame, lk);
    Biquadratic out;
    add_scaled(out, gi, Surd(dot(lk.dir, lk.dir)));
    add_scaled(out, gk, Surd(-dot(li.dir, li.dir)));
    return out;
}

SurdPoly frame_resultant(const Biquadratic& p, const Biquadratic& q) {
    return resultant(p.as_poly_in_y(), q.as_poly_in_y());
}

// ---------------------------------------------------------------- printed trisector

std::string to_string(MiddleAxis m) {
    switch (m) {
        case MiddleAxis::LeftVertical: return "left-vertical";
        case MiddleAxis::RightVertical: return "right-vertical";
        case MiddleAxis::LowerHorizontal: return "lower-horizontal";
        case MiddleAxis::UpperHorizontal: return "upper-horizontal";
    }
    return "?";
}

std::string to_string(Monotonicity m) { return m == Monotonicity::XMonotone ? "x-monotone" : "y-monotone"; }

QPoly ProjectedTrisector::A_prime() const { return QPoly({C.coeff(2), B.coeff(2), A.coeff(2)}); }

Rational ProjectedTrisector::eval(const Rational& x, const Rational& y) const {
    return A.eval(x) * y * y + B.eval(x) * y + C.eval(x);
}

ProjectedTrisector trisector_polynomial(const LineSet& lines, int i) {
    if (i != 2 && i != 3) throw std::invalid_argument("trisector_polynomial expects the third or fourth line");
    const Rational& a = lines.a();
    if (a == 0) throw std::invalid_argument("a = 0");
    const auto& prm = lines.params(i - 2);
    const Rational &b = prm[0], &c = prm[1], &d = prm[2], &e = prm[3];
    Rational a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    Rational d2 = d * d, e2 = e * e, b2 = b * b, c2 = c * c;

    ProjectedTrisector t;
    t.third = i;
    t.A = QPoly({a2 + a4 + a2 * d2 + a4 * d2 - e2 - a2 * e2, 2 * a * e + 2 * a3 * e, -a2});
    t.B = QPoly({-2 * c - 4 * a2 * c - 2 * a4 * c - 2 * c * d2 - 4 * a2 * c * d2 - 2 * a4 * c * d2 + 2 * b * d * e +
                     4 * a2 * b * d * e + 2 * a4 * b * d * e,
                 -2 * a * b * d - 2 * a3 * b * d - 2 * a * c * e - 2 * a3 * c * e - 2 * d * e - 4 * a2 * d * e -
                     2 * a4 * d * e,
                 2 * a * d + 2 * a3 * d});
    t.C = QPoly({-1 - 2 * a2 - a4 + c2 - d2 - 2 * a2 * d2 - a4 * d2 + c2 * d2 + 2 * a2 * c2 * (1 + d2) +
                     a4 * c2 * (1 + d2) - 2 * b * c * d * e - 4 * a2 * b * c * d * e - 2 * a4 * b * c * d * e - e2 -
                     2 * a2 * e2 - a4 * e2 + b2 * (1 + e2) + 2 * a2 * b2 * (1 + e2) + a4 * b2 * (1 + e2),
                 -2 * b - 4 * a2 * b - 2 * a4 * b + 2 * c * d * e + 4 * a2 * c * d * e + 2 * a4 * c * d * e -
                     2 * b * e2 - 4 * a2 * b * e2 - 2 * a4 * b * e2,
                 1 + a2 - a2 * d2 - a4 * d2 + e2 + a2 * e2});

    Rational A = 1 + a2;
    Rational Delta = d2 + e2 + 1;
    Surd root(0, 1, A * Delta);
    t.vertical_asymptotes = {Surd(e * A / a) - root, Surd(e * A / a) + root};
    Surd ym = (Surd(d * A) - root) / Surd(a), yp = (Surd(d * A) + root) / Surd(a);
    t.horizontal_asymptotes = ym < yp ? std::array<Surd, 2>{ym, yp} : std::array<Surd, 2>{yp, ym};

    Biquadratic bq;
    for (std::size_t k = 0; k < 3; ++k) {
        bq.c[k][0] = t.C.coeff(k);
        bq.c[k][1] = t.B.coeff(k);
        bq.c[k][2] = t.A.coeff(k);
    }
    BranchStructure s = separate_branches(bq);
    t.monotonicity = s.monotonicity;
    t.middle_branch_axis = s.middle_axis;
    return t;
}

QPoly intersection_polynomial(const ProjectedTrisector& t1, const ProjectedTrisector& t2) {
    Poly<QPoly> p({t1.C, t1.B, t1.A});
    Poly<QPoly> q({t2.C, t2.B, t2.A});
    return resultant(p, q);
}

// ---------------------------------------------------------------- general position

std::string general_position_condition_name(int condition) {
    switch (condition) {
        case 0: return "general position";
        case 1: return "lines pairwise skew with no three directions coplanar";
        case 4: return "unit directions not cocircular";
        case 5: return "related trisectors have distinct asymptotes";
        case 6: return "intersection resultants nonzero and squarefree";
        default: return "unknown condition";
    }
}

namespace {

// Sign of sum c_k sqrt(n_k) over at most four terms, exact.
int sign_of_root_sum(const std::vector<std::pair<Rational, Rational>>& terms) {
    auto two = [](const std::pair<Rational, Rational>& s, const std::pair<Rational, Rational>& t) {
        Surd x(0, s.first, s.second), y(0, -t.first, t.second);
        auto c = x <=> y;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    };
    if (terms.size() != 4) throw std::logic_error("expected four terms");
    int s1 = two(terms[0], terms[1]);
    int s2 = two(terms[2], terms[3]);
    if (s1 == 0 || s2 == 0 || s1 == s2) return s1 == 0 ? s2 : s1;
    auto square = [](const std::pair<Rational, Rational>& s, const std::pair<Rational, Rational>& t) {
        return Surd(s.first * s.first * s.second + t.first * t.first * t.second, 2 * s.first * t.first,
                    s.second * t.second);
    };
    Surd x2 = square(terms[0], terms[1]);
    Surd y2 = square(terms[2], terms[3]);
    auto c = x2 <=> y2;
    if (c == 0) return 0;
    return c > 0 ? s1 : s2;
}

}  // namespace

GeneralPositionReport check_general_position(const LineSet& lines) {
    GeneralPositionReport rep;
    auto fail = [&](int cond, std::string why) {
        rep.pass = false;
        rep.condition = cond;
        rep.detail = std::move(why);
        return rep;
    };
    std::array<Line, 4> L;
    for (int i = 0; i < 4; ++i) L[static_cast<std::size_t>(i)] = lines.line(i);
    for (auto [i, j] : all_pairs()) {
        const Line &p = L[static_cast<std::size_t>(i)], &q = L[static_cast<std::size_t>(j)];
        if (cross(p.dir, q.dir) == QVec{}) return fail(1, "lines " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " are parallel");
        if (det3(q.point - p.point, p.dir, q.dir) == 0)
            return fail(1, "lines " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " intersect");
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (det3(L[static_cast<std::size_t>(i)].dir, L[static_cast<std::size_t>(j)].dir, L[static_cast<std::size_t>(k)].dir) == 0)
                    return fail(1, "directions of lines " + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                       std::to_string(k + 1) + " are coplanar");
    // Cocircularity of +-u_k/|u_k|: the 4x4 determinant with a column of ones,
    // scaled by sqrt(r1 r2 r3 r4), is sum_k c_k sqrt(r_k).
    for (int mask = 0; mask < 8; ++mask) {
        std::array<QVec, 4> u;
        std::array<Rational, 4> r;
        for (std::size_t k = 0; k < 4; ++k) {
            u[k] = L[k].dir;
            if (k > 0 && (mask >> (k - 1) & 1)) u[k] = Rational(-1) * u[k];
            r[k] = dot(u[k], u[k]);
        }
        std::vector<std::pair<Rational, Rational>> terms;
        for (std::size_t k = 0; k < 4; ++k) {
            std::array<QVec, 3> o;
            std::size_t n = 0;
            for (std::size_t m = 0; m < 4; ++m)
                if (m != k) o[n++] = u[m];
            Rational minor = det3(o[0], o[1], o[2]);
            Rational sgn = (k % 2 == 0) ? -1 : 1;
            terms.push_back({sgn * minor, r[k]});
        }
        if (sign_of_root_sum(terms) == 0) return fail(4, "unit directions are cocircular");
    }
    for (auto pair : all_pairs()) {
        BisectorFrame f = bisector_frame(lines, pair);
        std::array<int, 2> others{};
        std::size_t n = 0;
        for (int k = 0; k < 4; ++k)
            if (k != pair.first && k != pair.second) others[n++] = k;
        Biquadratic p = frame_trisector(lines, f, others[0]);
        Biquadratic q = frame_trisector(lines, f, others[1]);
        std::string where = "bisector " + std::to_string(pair.first + 1) + "," + std::to_string(pair.second + 1);
        for (const auto* t : {&p, &q}) {
            if (t->in_x(2).degree() != 2 || t->in_y(2).degree() != 2)
                return fail(5, where + ": trisector asymptotes degenerate");
        }
        if (resultant(p.in_x(2), q.in_x(2)).sign() == 0) return fail(5, where + ": shared vertical asymptote");
        if (resultant(p.in_y(2), q.in_y(2)).sign() == 0) return fail(5, where + ": shared horizontal asymptote");
        SurdPoly res = frame_resultant(p, q);
        if (res.is_zero()) return fail(6, where + ": trisectors share a component");
        if (!is_squarefree(res)) return fail(6, where + ": tangential trisector intersection");
    }
    return rep;
}

int vertex_count(const LineSet& lines) {
    QPoly r = intersection_polynomial(trisector_polynomial(lines, 2), trisector_polynomial(lines, 3));
    if (r.is_zero()) throw DegenerateInput(6, "intersection resultant vanishes");
    if (!is_squarefree(r)) throw DegenerateInput(6, "intersection resultant has a repeated root");
    return sturm_count(r);
}

int vertex_count_on(const LineSet& lines, LinePair pair) {
    BisectorFrame f = bisector_frame(lines, pair);
    std::array<int, 2> others{};
    std::size_t n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != pair.first && k != pair.second) others[n++] = k;
    SurdPoly r = frame_resultant(frame_trisector(lines, f, others[0]), frame_trisector(lines, f, others[1]));
    if (r.is_zero()) throw DegenerateInput(6, "intersection resultant vanishes");
    if (!is_squarefree(r)) throw DegenerateInput(6, "intersection resultant has a repeated root");
    return sturm_count(r);
}

}  // namespace quadline
