#include "quadline/configuration.hpp"
#include "quadline/curves.hpp"
#include "witnesses.hpp"

#include <doctest.h>

using namespace quadline;
using namespace quadline::testing;

TEST_CASE("branch separation") {
    for (const auto& w : witnesses()) {
        LineSet l = make_lines(w.params);
        for (auto pair : all_pairs()) {
            BisectorFrame f = bisector_frame(l, pair);
            for (int k = 0; k < 4; ++k) {
                if (k == pair.first || k == pair.second) continue;
                BranchStructure s = separate_branches(frame_trisector(l, f, k));
                CHECK(s.middle() >= 0);
                CHECK(s.u_branch() >= 0);
                bool vertical = s.middle_axis == MiddleAxis::LeftVertical || s.middle_axis == MiddleAxis::RightVertical;
                CHECK(vertical == (s.monotonicity == Monotonicity::YMonotone));
            }
        }
    }
}

TEST_CASE("traced configurations are valid on every bisector") {
    for (const auto& w : witnesses()) {
        LineSet l = make_lines(w.params);
        VertexSolver solver(l);
        REQUIRE(solver.count() == w.vertices);
        for (auto pair : all_pairs()) {
            Configuration c = to_configuration(trace_bisector(l, pair, solver));
            CHECK_MESSAGE(c.vertex_count() == w.vertices, w.id);
            CHECK_MESSAGE(is_valid(c), w.id << " pair " << pair.first << pair.second << " " << encode(c));
        }
    }
}
