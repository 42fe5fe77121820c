#include "quadline/configuration.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace quadline;

namespace {

// First edge pair on a bounded face with the requested label, if any.
std::optional<std::pair<EdgeRef, EdgeRef>> edges_on(const Configuration& c, FaceLabel want) {
    auto o = build_overlay(c);
    if (!o) return std::nullopt;
    for (int rb = 0; rb < 4; ++rb)
        for (std::size_t rs = 0; rs < o->segment_faces[0][static_cast<std::size_t>(rb)].size(); ++rs)
            for (int rside = 0; rside < 2; ++rside) {
                int f = o->segment_faces[0][static_cast<std::size_t>(rb)][rs][static_cast<std::size_t>(rside)];
                if (o->faces[static_cast<std::size_t>(f)].label != want) continue;
                for (int bb = 0; bb < 4; ++bb)
                    for (std::size_t bs = 0; bs < o->segment_faces[1][static_cast<std::size_t>(bb)].size(); ++bs)
                        for (int bside = 0; bside < 2; ++bside)
                            if (o->segment_faces[1][static_cast<std::size_t>(bb)][bs][static_cast<std::size_t>(bside)] == f)
                                return std::pair{EdgeRef{0, rb, static_cast<int>(rs), rside == 0},
                                                 EdgeRef{1, bb, static_cast<int>(bs), bside == 0}};
            }
    return std::nullopt;
}

}  // namespace

TEST_CASE("simple configurations") {
    int raw = 0;
    auto all = enumerate_simple_configurations(&raw);
    CHECK(raw == 96);
    CHECK(all.size() < 96);
    for (const auto& c : all) {
        CHECK(is_valid(c));
        CHECK(c.vertex_count() % 2 == 0);
        CHECK(detect_twists(c).empty());
        auto o = build_overlay(c);
        REQUIRE(o);
    }
}

TEST_CASE("the reference simple configuration has two vertices") {
    // horizontal case 1, vertical case 2, red middle branch left-vertical
    Configuration c = simple_configuration(horizontal_cases()[0], vertical_cases()[1], 0);
    CHECK(c.vertex_count() == 2);
    CHECK(is_valid(c));
}

TEST_CASE("each curve has one NVD arc per side") {
    for (const auto& c : enumerate_simple_configurations()) {
        for (int color = 0; color < 2; ++color) {
            // Regions of one curve are the arcs between its consecutive ends.
            int nvd = 0, total = 0;
            for (int p = 0; p < 16; ++p) {
                if (EndToken::unpack(c.order[static_cast<std::size_t>(p)]).color != color) continue;
                ++total;
                nvd += arc_is_nvd(c, color, p);
            }
            CHECK(total == 8);
            CHECK(nvd == 4);
        }
    }
}

TEST_CASE("symmetries preserve the canonical form") {
    for (const auto& c : enumerate_simple_configurations()) {
        auto k = canonical_form(c);
        CHECK(canonical_form(mirror(c)) == k);
        CHECK(canonical_form(swap_colors(c)) == k);
        CHECK(canonical_form(rotate(c, 1)) == k);
        auto d = decode(encode(c));
        REQUIRE(d);
        CHECK(*d == c);
    }
}

TEST_CASE("twist insertion and removal") {
    int full = 0, partial = 0;
    for (const auto& c : enumerate_simple_configurations()) {
        if (c.vertex_count() > 6) continue;
        for (FaceLabel l : {FaceLabel::NVD, FaceLabel::FVD, FaceLabel::VD2}) {
            auto e = edges_on(c, l);
            if (!e) continue;
            Configuration t = insert_twist(c, e->first, e->second);
            CHECK(t.vertex_count() == c.vertex_count() + 2);
            // The new pair may also close a bigon with an older crossing.
            std::optional<Twist> added;
            for (const auto& tw : detect_twists(t))
                if (tw.vertices == std::array<int, 2>{c.vertex_count(), c.vertex_count() + 1}) added = tw;
            REQUIRE(added);
            if (l == FaceLabel::VD2) {
                CHECK(added->kind == Twist::Kind::Partial);
                CHECK_THROWS_AS(remove_full_twist(t, *added), std::invalid_argument);
                ++partial;
            } else {
                CHECK(added->kind == Twist::Kind::Full);
                CHECK(canonical_form(remove_full_twist(t, *added)) == canonical_form(c));
                ++full;
            }
        }
    }
    CHECK(full > 0);
    CHECK(partial > 0);
}

TEST_CASE("twist insertion rejects edges without a common face") {
    Configuration c = simple_configuration(horizontal_cases()[0], vertical_cases()[1], 0);
    bool rejected = false;
    for (int rb = 0; rb < 4 && !rejected; ++rb)
        for (int bb = 0; bb < 4 && !rejected; ++bb)
            try {
                insert_twist(c, {0, rb, 0, true}, {1, bb, 0, true});
            } catch (const std::invalid_argument&) {
                rejected = true;
            }
    CHECK(rejected);
    CHECK_THROWS_AS(insert_twist(c, {0, 0, 0, true}, {1, 0, 0, true}, 2), std::invalid_argument);
}

TEST_CASE("a full twist cannot be nested inside another") {
    int attempts = 0;
    for (const auto& c : enumerate_simple_configurations()) {
        if (c.vertex_count() > 4) continue;
        auto e = edges_on(c, FaceLabel::NVD);
        if (!e) continue;
        Configuration t = insert_twist(c, e->first, e->second);
        auto o = build_overlay(t);
        REQUIRE(o);
        for (const auto& tw : detect_twists(t)) {
            if (tw.kind != Twist::Kind::Full) continue;
            for (int rb = 0; rb < 4; ++rb)
                for (std::size_t rs = 0; rs < o->segment_faces[0][static_cast<std::size_t>(rb)].size(); ++rs)
                    for (int rside = 0; rside < 2; ++rside) {
                        if (o->segment_faces[0][static_cast<std::size_t>(rb)][rs][static_cast<std::size_t>(rside)] != tw.face) continue;
                        for (int bb = 0; bb < 4; ++bb)
                            for (std::size_t bs = 0; bs < o->segment_faces[1][static_cast<std::size_t>(bb)].size(); ++bs)
                                for (int bside = 0; bside < 2; ++bside) {
                                    if (o->segment_faces[1][static_cast<std::size_t>(bb)][bs][static_cast<std::size_t>(bside)] != tw.face)
                                        continue;
                                    CHECK_THROWS_WITH_AS(insert_twist(t, {0, rb, static_cast<int>(rs), rside == 0},
                                                                      {1, bb, static_cast<int>(bs), bside == 0}),
                                                         "a full twist cannot be nested inside another",
                                                         std::invalid_argument);
                                    ++attempts;
                                }
                    }
        }
    }
    CHECK(attempts > 0);
}
