#pragma once

#include "quadline/interval.hpp"
#include "quadline/lines.hpp"

#include <array>
#include <optional>
#include <vector>

namespace quadline {

class Configuration;

// Sides of the bounding circle, counterclockwise from the right.
enum class Side : unsigned char { Right = 0, Top = 1, Left = 2, Bottom = 3 };

// An unbounded end of a branch: the side it escapes to and the rank (0 lower,
// 1 upper) of the asymptote it follows among the curve's two asymptotes of
// that direction.
struct BranchEnd {
    Side side = Side::Right;
    int rank = 0;
    bool operator==(const BranchEnd&) const = default;
};

enum class BranchRole : unsigned char { Middle, U, Other };

// Root t of lambda t^2 + mu t + nu with coefficients in Q(sqrt q):
// t = alpha + beta sqrt(disc).
struct QuadraticRoot {
    Surd alpha, beta, disc;
    Interval enclose(mpfr_prec_t prec) const;
    // Exact sign of p(t).
    int sign_at(const SurdPoly& p) const;
};

// Branches of one projected trisector. Along each branch the parameter
// coordinate (Y when y-monotone, X when x-monotone) increases from ends[0] to
// ends[1]; every branch is a single monotone arc in that coordinate.
struct BranchStructure {
    struct Branch {
        std::array<BranchEnd, 2> ends;
        BranchRole role = BranchRole::Other;
        // pieces[k] = root index (0 lower, 1 upper) on parameter interval k, or -1.
        std::array<int, 3> pieces{-1, -1, -1};
    };

    Monotonicity monotonicity = Monotonicity::YMonotone;
    MiddleAxis middle_axis = MiddleAxis::RightVertical;
    std::array<QuadraticRoot, 2> vertical;    // X values, ascending
    std::array<QuadraticRoot, 2> horizontal;  // Y values, ascending
    std::array<Branch, 4> branches;
    // Sign of the leading coefficient of the escaping quadratic on each of the
    // three parameter intervals.
    std::array<int, 3> lead_sign{};

    int middle() const;
    int u_branch() const;
    // Branch owning an end.
    int branch_of(BranchEnd e) const;
};

BranchStructure separate_branches(const Biquadratic& p);

// Position of a curve point: branch and parameter coordinate. nullopt when the
// boxes are too wide to decide; callers refine and retry.
struct BranchPoint {
    int branch = -1;
    Interval parameter;
};
std::optional<BranchPoint> locate_on_branch(const Biquadratic& p, const BranchStructure& s, const Interval& x,
                                            const Interval& y);

// A Voronoi vertex as an isolating box in space, at some working precision.
struct VertexBox {
    Interval x, y, z;
};

// All Voronoi vertices, computed on the bisector of lines 1 and 2 from the
// isolated real roots of the intersection resultant. Ordered by x.
class VertexSolver {
public:
    explicit VertexSolver(const LineSet& lines);
    int count() const { return static_cast<int>(roots_.size()); }
    std::vector<VertexBox> boxes(mpfr_prec_t prec) const;
    const QPoly& resultant() const { return res_; }

private:
    LineSet lines_;
    ProjectedTrisector t3_, t4_;
    QPoly res_;
    std::vector<RootInterval> roots_;
};

// Full real trace of one bisector.
struct BisectorTrace {
    LinePair pair;
    std::array<int, 2> thirds{};  // red = thirds[0], blue = thirds[1]
    BisectorFrame frame;
    std::array<Biquadratic, 2> curve;
    std::array<BranchStructure, 2> branches;
    // Counterclockwise circular order of the 16 ends starting at the bottom of
    // the right side: (color, branch, end index).
    struct EndSlot {
        int color, branch, end;
    };
    std::array<EndSlot, 16> order{};
    // Signs of v . u_m over the four line directions for every end direction v,
    // indexed [color][branch][end][line].
    std::array<std::array<std::array<std::array<int, 4>, 2>, 4>, 2> end_signs{};
    // Vertex incidence: branch of each curve at every global vertex, and the
    // parameter value used for ordering.
    struct Incidence {
        std::array<int, 2> branch{};
        std::array<double, 2> parameter{};
        int rotation = 0;  // +1 when (red+, blue+, red-, blue-) is counterclockwise
    };
    std::vector<Incidence> vertices;
    // Per color and branch, global vertex ids in order of increasing parameter.
    std::array<std::array<std::vector<int>, 4>, 2> sequences;
};

// Bisector of the given pair; the two trisectors are the ones through the
// remaining lines in ascending order. Throws DegenerateInput.
BisectorTrace trace_bisector(const LineSet& lines, LinePair pair, const VertexSolver& solver);
BisectorTrace trace_bisector(const LineSet& lines, LinePair pair);

Configuration to_configuration(const BisectorTrace& trace);
Configuration trace_configuration(const LineSet& lines, LinePair pair);

bool parallel(const BranchStructure& a, const BranchStructure& b);
bool parallel(const ProjectedTrisector& a, const ProjectedTrisector& b);

}  // namespace quadline
