#include "quadline/render.hpp"
#include "witnesses.hpp"

#include <doctest.h>

#include <cctype>
#include <regex>

using namespace quadline;
using namespace quadline::testing;

namespace {

int count(const std::string& svg, const std::string& needle) {
    int n = 0;
    for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
    return n;
}

// Boundary tint classes in emission order.
std::vector<std::string> boundary_tints(const std::string& svg) {
    std::vector<std::string> out;
    std::regex re("class=\"boundary (nvd|fvd|vd2)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
        out.push_back((*it)[1]);
    return out;
}

std::string lower(std::string s) {
    for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

}  // namespace

TEST_CASE("bisector picture structure") {
    for (const auto& w : {witnesses()[0], witnesses()[9]}) {
        CAPTURE(w.id);
        LineSet lines = make_lines(w.params);
        VertexSolver solver(lines);
        auto boxes = solver.boxes(64);
        for (const auto& pair : all_pairs()) {
            std::string svg = render_bisector_svg(lines, trace_bisector(lines, pair, solver), boxes);
            CHECK(svg.starts_with("<svg"));
            CHECK(count(svg, "class=\"asymptote red\"") == 4);
            CHECK(count(svg, "class=\"asymptote blue\"") == 4);
            CHECK(count(svg, "class=\"curve red\"") >= 3);
            CHECK(count(svg, "class=\"curve blue\"") >= 3);
            CHECK(count(svg, "class=\"vertex\"") == w.vertices);
            CHECK(count(svg, "class=\"face nvd\"") > 0);
            CHECK(count(svg, "class=\"face fvd\"") > 0);
        }
    }
}

TEST_CASE("configuration picture tints follow the overlay") {
    Atlas atlas = load_atlas();
    for (const auto& e : atlas.entries)
        for (const auto& c : e.tuple.slots) {
            std::string svg = render_configuration_svg(c);
            CHECK(count(svg, "class=\"branch red\"") == 4);
            CHECK(count(svg, "class=\"branch blue\"") == 4);
            CHECK(count(svg, "class=\"vertex\"") == c.vertex_count());
            auto o = build_overlay(c);
            REQUIRE(o);
            auto tints = boundary_tints(svg);
            REQUIRE(tints.size() == 16);
            for (std::size_t p = 0; p < 16; ++p) {
                FaceLabel l = o->faces[static_cast<std::size_t>(o->arc_face[p])].label;
                CHECK(tints[p] == lower(to_string(l)));
            }
        }
}

TEST_CASE("empty intersection picture has no vertex dots") {
    int empty = 0;
    for (const auto& c : enumerate_simple_configurations())
        if (c.vertex_count() == 0) {
            CHECK(count(render_configuration_svg(c), "class=\"vertex\"") == 0);
            ++empty;
        }
    CHECK(empty > 0);
    LineSet lines = make_lines(witnesses()[0].params);
    VertexSolver solver(lines);
    CHECK(count(render_bisector_svg(lines, trace_bisector(lines, {0, 1}, solver), solver.boxes(64)), "class=\"vertex\"") == 0);
}

TEST_CASE("map picture structure") {
    SphericalMap m = gaussian_map_fvd(make_lines(witnesses()[4].params));
    std::string svg = render_gamma_svg(m);
    CHECK(count(svg, "class=\"gamma-vertex\"") > 0);
    CHECK(count(svg, "class=\"gamma-edge") > 0);
}

TEST_CASE("rendering is deterministic") {
    LineSet lines = make_lines(witnesses()[12].params);
    VertexSolver solver(lines);
    auto trace = trace_bisector(lines, {1, 3}, solver);
    CHECK(render_bisector_svg(lines, trace, solver.boxes(64)) == render_bisector_svg(lines, trace, solver.boxes(64)));
    Configuration c = to_configuration(trace);
    CHECK(render_configuration_svg(c) == render_configuration_svg(c));
    SphericalMap m = gaussian_map_fvd(lines);
    CHECK(render_gamma_svg(m) == render_gamma_svg(gaussian_map_fvd(lines)));
}
