#include "quadline/interval.hpp"
#include "quadline/lines.hpp"
#include "witnesses.hpp"

#include <doctest.h>

using namespace quadline;
using namespace quadline::testing;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("surd arithmetic and order") {
    Surd r2(0, 1, 2);
    CHECK(r2 * r2 == Surd(2));
    CHECK((Surd(1) / (Surd(1) + r2)) == Surd(-1, 1, 2));
    CHECK(Surd(0, 1, 2) < Surd(Rational(3, 2)));
    CHECK(Surd(0, 1, 3) > Surd(0, 1, 2) + Surd(Rational(-1, 4)));
    CHECK(Surd(3, 2, 9) == Surd(9));
    CHECK(sign_nested(Surd(-3), Surd(1), Surd(9)) == 0);
    CHECK(sign_nested(Surd(-4), Surd(1), Surd(0, 1, 82)) < 0);
}

TEST_CASE("resultant and sturm counts") {
    QPoly p{-2, 0, 1};  // x^2 - 2
    QPoly q{-3, 0, 1};
    CHECK(resultant(p, q) == 1);
    CHECK(sturm_count(QPoly{0, -1, 0, 1}) == 3);
    CHECK(sturm_count(QPoly{1, 0, 1}) == 0);
    CHECK(sturm_count(p, Rational(0), std::nullopt) == 1);
    auto roots = RootIsolator<Rational>(QPoly{0, -1, 0, 1}).isolate();
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].exact());
}

TEST_CASE("intervals enclose") {
    Interval s(Surd(0, 1, 2), 128);
    CHECK(s.lower() < Rational(141422, 100000));
    CHECK(s.upper() > Rational(141421, 100000));
    CHECK((s * s - Interval(Rational(2), 128)).contains_zero());
}

TEST_CASE("asymptote closed forms") {
    auto t = trisector_polynomial(make_lines(witnesses()[0].params), 2);
    CHECK(t.vertical_asymptotes[0] == Surd(Rational(82, 3), -1, 902));
    CHECK(t.vertical_asymptotes[1] == Surd(Rational(82, 3), 1, 902));
    for (const auto& v : t.vertical_asymptotes) CHECK(t.A.degree() == 2);
}

TEST_CASE("printed trisector agrees with the bisector frame") {
    // On the bisector of lines 1, 2 the frame coordinates are (x / 2, y / (2a)).
    for (const auto& w : witnesses()) {
        LineSet l = make_lines(w.params);
        BisectorFrame f = bisector_frame(l, {0, 1});
        for (int k : {2, 3}) {
            auto t = trisector_polynomial(l, k);
            Biquadratic b = frame_trisector(l, f, k);
            Rational ratio = 0;
            bool consistent = true;
            for (int x = -2; x <= 2; ++x)
                for (int y = -2; y <= 2; ++y) {
                    Rational pv = t.eval(x, y);
                    Surd fv = b.eval(Surd(Rational(x, 2)), Surd(Rational(y) / (2 * l.a())));
                    REQUIRE(fv.is_rational());
                    if (pv == 0) {
                        consistent = consistent && fv.p() == 0;
                        continue;
                    }
                    Rational r = fv.p() / pv;
                    if (ratio == 0) ratio = r;
                    consistent = consistent && r == ratio;
                }
            CHECK_MESSAGE(consistent, w.id);
        }
    }
}

TEST_CASE("parsing line sets") {
    auto p = parse_lineset("# witness\n-9 2 -2 1\n-3 -1 1 -1 -5\n");
    REQUIRE(p.value);
    CHECK(format_lineset(*p.value) == "-9 2 -2 1 -3 -1 1 -1 -5");
    auto k = parse_lineset("a=1\nb3=2\nc3=3\nd3=4\ne3=5\nb4=6\nc4=7\nd4=8\ne4 = 9/2\n");
    REQUIRE(k.value);
    CHECK(k.value->params(1)[3] == Rational(9, 2));
    auto bad = parse_lineset("1 2 3 4 5 6 7 8 x");
    CHECK_FALSE(bad.value);
    CHECK(bad.error.column == 17);
    CHECK_FALSE(parse_lineset("0 1 2 3 4 5 6 7 8").value);
}

TEST_CASE("witnesses are in general position with the expected vertex counts") {
    for (const auto& w : witnesses()) {
        LineSet l = make_lines(w.params);
        auto rep = check_general_position(l);
        CHECK_MESSAGE(rep.pass, w.id << " " << rep.detail);
        CHECK_MESSAGE(vertex_count(l) == w.vertices, w.id);
        for (auto pair : all_pairs()) CHECK_MESSAGE(vertex_count_on(l, pair) == w.vertices, w.id);
    }
    CHECK(vertex_count(make_lines(kEightVertex)) == 8);
}
