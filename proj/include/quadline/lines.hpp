#pragma once

#include "quadline/polynomial.hpp"
#include "quadline/rational.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace quadline {

template <class T>
struct Vec3 {
    T x{0}, y{0}, z{0};

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(const T& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend T dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    friend Vec3 cross(const Vec3& a, const Vec3& b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

using QVec = Vec3<Rational>;

inline Rational det3(const QVec& a, const QVec& b, const QVec& c) { return dot(a, cross(b, c)); }

struct Line {
    QVec point;
    QVec dir;
};

// Line indices are 0-based in code (0..3) and 1-based in every user-facing format.
using LinePair = std::pair<int, int>;

class LineSet {
public:
    LineSet() = default;
    // Throws std::invalid_argument if a == 0.
    LineSet(Rational a, std::array<Rational, 4> l3, std::array<Rational, 4> l4);

    const Rational& a() const { return a_; }
    // Parameters (b, c, d, e) of line 3 (k = 0) or line 4 (k = 1).
    const std::array<Rational, 4>& params(int k) const { return p_[static_cast<std::size_t>(k)]; }
    std::array<Rational, 9> flat() const;
    Line line(int i) const;

    // Same geometry with the parameters of lines 3 and 4 exchanged.
    LineSet swapped_34() const { return LineSet(a_, p_[1], p_[0]); }

    friend bool operator==(const LineSet&, const LineSet&) = default;

private:
    Rational a_{1};
    std::array<std::array<Rational, 4>, 2> p_{};
};

struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
};

// Nine whitespace-separated rationals, or "key = value" lines with keys a, b3,
// c3, d3, e3, b4, c4, d4, e4. '#' starts a comment. A "quadline-atlas v1"
// header line is accepted and skipped.
struct ParsedLineSet {
    std::optional<LineSet> value;
    ParseError error;
};
ParsedLineSet parse_lineset(std::string_view text);
std::string format_lineset(const LineSet& lines);

// Bivariate polynomial of bidegree (2, 2): c[i][j] multiplies X^i Y^j.
struct Biquadratic {
    std::array<std::array<Surd, 3>, 3> c{};

    // Coefficient of Y^j as a polynomial in X, and of X^i as a polynomial in Y.
    SurdPoly in_x(int j) const;
    SurdPoly in_y(int i) const;
    // As a polynomial in Y whose coefficients are polynomials in X.
    Poly<SurdPoly> as_poly_in_y() const;
    Surd eval(const Surd& x, const Surd& y) const;
    bool operator==(const Biquadratic&) const = default;
};

// Orthogonal frame on the bisector of lines i and j: X runs along the sum of
// the two unit directions, Y along their difference, and the surface is the
// graph height = kappa * X * Y over the midpoint plane. Coordinates live in
// Q(sqrt(|u_i|^2 |u_j|^2)).
struct BisectorFrame {
    int i = 0;
    int j = 1;
    QVec origin;
    Vec3<Surd> ex;
    Vec3<Surd> ey;
    QVec ez;  // from origin to the closest point of line i
    Rational kappa;
    Rational radicand;  // q with coordinates in Q(sqrt q); 0 when rational

    Vec3<Surd> point(const Surd& x, const Surd& y) const;
};

BisectorFrame bisector_frame(const LineSet& lines, LinePair pair);

// Trisector of (pair, k) projected onto the frame of bisector(pair).
Biquadratic frame_trisector(const LineSet& lines, const BisectorFrame& frame, int k);

// Res_Y of two projected trisectors on a common frame, a polynomial in X.
SurdPoly frame_resultant(const Biquadratic& p, const Biquadratic& q);

enum class MiddleAxis { LeftVertical, RightVertical, LowerHorizontal, UpperHorizontal };
enum class Monotonicity { XMonotone, YMonotone };
std::string to_string(MiddleAxis m);
std::string to_string(Monotonicity m);

// The trisector of lines 1, 2 and i projected on the bisector of lines 1 and
// 2, in the printed (x, y) coordinates: A(x) y^2 + B(x) y + C(x) = 0.
struct ProjectedTrisector {
    int third = 2;
    QPoly A, B, C;
    std::array<Surd, 2> vertical_asymptotes;    // ascending
    std::array<Surd, 2> horizontal_asymptotes;  // ascending
    MiddleAxis middle_branch_axis = MiddleAxis::RightVertical;
    Monotonicity monotonicity = Monotonicity::YMonotone;

    // Coefficient of x^2 as a polynomial in y.
    QPoly A_prime() const;
    Rational eval(const Rational& x, const Rational& y) const;
};

// i is 2 or 3 (the third or fourth line).
ProjectedTrisector trisector_polynomial(const LineSet& lines, int i);

// Res_y(P1, P2) as a polynomial in x, degree at most 8.
QPoly intersection_polynomial(const ProjectedTrisector& t1, const ProjectedTrisector& t2);

struct GeneralPositionReport {
    bool pass = true;
    int condition = 0;  // 0 when passing; see general_position_condition_name
    std::string detail;
};
std::string general_position_condition_name(int condition);

// Conditions: 1 pairwise skew / direction triples, 4 cocircular unit
// directions, 5 shared asymptote on some bisector, 6 non-squarefree or
// vanishing intersection resultant on some bisector.
GeneralPositionReport check_general_position(const LineSet& lines);

class DegenerateInput : public std::runtime_error {
public:
    DegenerateInput(int condition, const std::string& what) : std::runtime_error(what), condition_(condition) {}
    int condition() const { return condition_; }

private:
    int condition_;
};

// Number of Voronoi vertices: real roots of the intersection resultant on the
// bisector of lines 1 and 2. Throws DegenerateInput on a repeated root.
int vertex_count(const LineSet& lines);
// Same count from the resultant on any bisector.
int vertex_count_on(const LineSet& lines, LinePair pair);

// The six unordered pairs in the fixed order {0,1},{0,2},{0,3},{1,2},{1,3},{2,3}.
const std::array<LinePair, 6>& all_pairs();
int pair_index(LinePair p);

}  // namespace quadline
