#include "quadline/atlas.hpp"
#include "witnesses.hpp"

#include <doctest.h>

#include <set>

using namespace quadline;
using namespace quadline::testing;

TEST_CASE("slot bookkeeping") {
    for (int s = 0; s < 6; ++s) {
        auto [i, j] = kSlotPairs[static_cast<std::size_t>(s)];
        CHECK(slot_of(i, j) == s);
        int red = missing_line(s, 0), blue = missing_line(s, 1);
        CHECK(std::set<int>{i, j, red, blue} == std::set<int>{0, 1, 2, 3});
    }
    for (int k = 0; k < 4; ++k)
        for (const auto& [slot, color] : hosts_of(k)) CHECK(missing_line(slot, color) == k);
}

TEST_CASE("count formulas") {
    CHECK(combinatorics_counts(4, 0, Diagram::Nearest) == std::array<int, 3>{6, 9, 4});
    CHECK(combinatorics_counts(4, 0, Diagram::Farthest) == std::array<int, 3>{10, 21, 12});
    CHECK(combinatorics_counts(4, 6, Diagram::Nearest) == std::array<int, 3>{18, 15, 4});
    CHECK(combinatorics_counts(4, 6, Diagram::Farthest) == std::array<int, 3>{22, 27, 12});
    auto g = gamma_counts(4);
    CHECK(g[0] == std::array<int, 3>{12, 18, 8});
    CHECK(g[1] == std::array<int, 3>{20, 30, 12});
}

TEST_CASE("phase 1 configurations are twist-free and valid") {
    auto configs = phase1_generate();
    CHECK(configs.size() > 100);
    for (const auto& [key, c] : configs) {
        CHECK(is_valid(c));
        CHECK(c.vertex_count() % 2 == 0);
        CHECK(canonical_form(c) == key);
        for (const auto& t : detect_twists(c)) CHECK(t.kind == Twist::Kind::Partial);
    }
}

TEST_CASE("witness tuples pass the tuple checks and assemble once") {
    for (const auto& w : witnesses()) {
        CAPTURE(w.id);
        auto t = trace_tuple(make_lines(w.params));
        CHECK(t.vertex_count() == w.vertices);
        CHECK(check_tuple(t).empty());
        CHECK_FALSE(identify_ends(t).empty());
        auto all = assemble_diagrams(t);
        REQUIRE(all.size() == 1);
        const auto& d = all.front();
        CHECK(d.nearest == FeatureCounts{2 * w.vertices + 6, w.vertices + 9, 4});
        CHECK(d.farthest == FeatureCounts{2 * w.vertices + 10, w.vertices + 21, 12});
        CHECK(d.farthest_cells_per_line == std::array<int, 4>{3, 3, 3, 3});
    }
}

TEST_CASE("canonical keys ignore line relabeling") {
    for (const auto& w : witnesses()) {
        CAPTURE(w.id);
        LineSet lines = make_lines(w.params);
        CHECK(canonical_key(trace_tuple(lines)) == canonical_key(trace_tuple(lines.swapped_34())));
    }
}

TEST_CASE("map codes are invariant under reflection") {
    auto d = assemble_diagram(trace_tuple(make_lines(witnesses()[10].params)));
    REQUIRE(d);
    const GammaMap& m = d->gamma_farthest;
    CHECK(m.vertex_count == 20);
    CHECK(m.euler_characteristic() == 2);
    CHECK(canonical_code(m) == canonical_code(reflected(m)));
    CHECK(canonical_code(reflected(reflected(m)), false) == canonical_code(m, false));
}
