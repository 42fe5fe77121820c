#include "quadline/classifier.hpp"
#include "witnesses.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace quadline;
using namespace quadline::testing;

namespace {

const Atlas& atlas() {
    static const Atlas a = load_atlas();
    return a;
}

// Pole bit from the chirality of the two lines: set when the offset from
// line i to line j turns positively against their directions.
unsigned chirality_poles(const LineSet& lines) {
    unsigned bits = 0;
    for (int s = 0; s < 6; ++s) {
        auto [i, j] = kSlotPairs[static_cast<std::size_t>(s)];
        Line li = lines.line(i), lj = lines.line(j);
        if (sgn(det3(lj.point - li.point, li.dir, lj.dir)) > 0) bits |= 1U << s;
    }
    return bits;
}

Direction random_direction(std::mt19937& rng) {
    std::normal_distribution<double> n;
    Direction v{n(rng), n(rng), n(rng)};
    double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / len, v[1] / len, v[2] / len};
}

}  // namespace

TEST_CASE("witnesses classify to their own label") {
    for (const auto& w : witnesses()) {
        CAPTURE(w.id);
        auto r = classify(make_lines(w.params), atlas());
        CHECK(r.label.base_label == w.id);
        CHECK(r.label.total_vertices == w.vertices);
        CHECK(r.label.full_twists.empty());
        CHECK(r.vertex_count == w.vertices);
        CHECK(r.farthest_cells_per_line == std::array<int, 4>{3, 3, 3, 3});
    }
}

TEST_CASE("relabeling lines three and four keeps the topology") {
    for (const auto& w : witnesses()) {
        CAPTURE(w.id);
        LineSet lines = make_lines(w.params);
        CHECK(classify(lines.swapped_34(), atlas()).label.base_id == classify(lines, atlas()).label.base_id);
    }
}

TEST_CASE("eight-vertex instance reduces to a base topology plus full twists") {
    LineSet lines = make_lines(kEightVertex);
    auto r = classify(lines, atlas());
    CHECK(r.vertex_count == 8);
    CHECK(r.label.total_vertices == 8);
    CHECK(r.label.total_vertices == r.label.base_vertices + 2 * static_cast<int>(r.label.full_twists.size()));
    CHECK_FALSE(r.label.full_twists.empty());
    for (const auto& t : r.label.full_twists) {
        CHECK(t.slots.size() >= 2);
        for (const auto& box : t.boxes)
            for (const auto& range : box) CHECK(range[0] <= range[1]);
    }
    CHECK(locate_full_twists(lines, atlas(), r.label.base_id) == r.label);
    auto other = (r.label.base_id + 1) % static_cast<int>(atlas().entries.size());
    CHECK_THROWS_AS(locate_full_twists(lines, atlas(), other), ClassificationError);
}

TEST_CASE("anomaly poles agree with line chirality") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-20, 20);
    int tested = 0;
    while (tested < 100) {
        std::array<long, 9> p{};
        for (auto& x : p) x = d(rng);
        if (p[0] == 0) continue;
        LineSet lines = make_lines(p);
        if (!check_general_position(lines).pass) continue;
        CHECK(anomaly_poles(lines) == chirality_poles(lines));
        ++tested;
    }
}

TEST_CASE("map faces agree with the farthest line") {
    std::mt19937 rng(11);
    for (const auto& w : witnesses()) {
        CAPTURE(w.id);
        LineSet lines = make_lines(w.params);
        SphericalMap m = gaussian_map_fvd(lines);
        CHECK(m.map.vertex_count == 20);
        CHECK(m.map.edges.size() == 30);
        CHECK(m.map.faces.size() == 12);
        int located = 0;
        for (int k = 0; k < 50; ++k) {
            Direction v = random_direction(rng);
            int f = m.locate(v);
            if (f < 0) continue;
            ++located;
            CHECK(m.map.face_line[static_cast<std::size_t>(f)] == farthest_line_at(lines, v));
        }
        CHECK(located > 40);
    }
}

TEST_CASE("report text round trip") {
    for (const auto& params : {witnesses()[9].params, kEightVertex}) {
        auto r = classify(make_lines(params), atlas());
        std::string text = format_report(r);
        auto p = parse_report(text);
        REQUIRE(p.value);
        CHECK(format_report(*p.value) == text);
        CHECK(p.value->label == r.label);
        CHECK(p.value->configurations == r.configurations);
    }
    auto bad = parse_report("quadline-report v1\nvertices x\n");
    CHECK_FALSE(bad.value);
    CHECK(bad.error.line == 2);
}

TEST_CASE("degenerate input is refused before classification") {
    // Lines 3 and 4 coincide.
    LineSet lines = make_lines({1, 2, 3, 4, 5, 2, 3, 4, 5});
    CHECK_FALSE(check_general_position(lines).pass);
    CHECK_THROWS_AS(classify(lines, atlas()), DegenerateInput);
}
