#include "doctest.h"

#include "mdv/descent.hpp"
#include "mdv/search.hpp"

using namespace mdv;

TEST_CASE("integral point search finds the worked example") {
    SearchConfig cfg;
    cfg.x_bound = 100;
    auto pts = integral_points(BigInt(-1355), cfg);
    bool found = false;
    for (auto& [a, b] : pts) found = found || (a == 64 && b == 572);
    CHECK(found);
    for (auto& [a, b] : pts) CHECK(b * b == a * a * a + 65040);
}

TEST_CASE("family curves with the hypothesis have empty searches") {
    SearchConfig cfg;
    cfg.x_bound = 100000;
    CHECK(integral_points(BigInt(-31), cfg).empty());
    CHECK(integral_points(BigInt(5), cfg).empty());
}

TEST_CASE("scan window start is asserted") {
    // D = -31: k = 1488 > 0, so the window starts at the first A with
    // A^3 + 1488 >= 0, i.e. A = -11 (-11^3 = -1331). (-12)^3 + 1488 < 0.
    SearchConfig cfg;
    cfg.x_bound = 12;
    auto pts = integral_points(BigInt(-31), cfg);  // window assertions run inside
    CHECK(pts.empty());
    for (long a = -12; a <= -12; ++a) CHECK(a * a * a + 1488 < 0);
    CHECK((-11) * (-11) * (-11) + 1488 >= 0);
}

TEST_CASE("search determinism across thread counts") {
    for (long d : {-31L, -1355L, 17L}) {
        SearchConfig one;
        one.x_bound = 20000;
        one.threads = 1;
        SearchConfig four = one;
        four.threads = 4;
        auto a = integral_points(BigInt(d), one);
        auto b = integral_points(BigInt(d), four);
        CHECK(a == b);
    }
}

TEST_CASE("every found integral point round-trips through the cubic construction") {
    SearchConfig cfg;
    cfg.x_bound = 5000;
    for (long d : {-1355L, -91L, -79L, -67L, -7L}) {
        for (auto& [a, b] : integral_points(BigInt(d), cfg)) {
            auto up = cubic_from_integral_point(BigInt(d), a, b);    // identities assert inside
            auto down = cubic_from_integral_point(BigInt(d), a, -b); // conjugate instance
            CHECK(up.poly.p1 == down.poly.p1);
            CHECK(up.poly.p0 == -down.poly.p0);
        }
    }
}

TEST_CASE("integral search rejects bad input") {
    SearchConfig cfg;
    CHECK_THROWS_AS(integral_points(BigInt(12), cfg), usage_error);
    CHECK_THROWS_AS(integral_points(BigInt(0), cfg), usage_error);
    cfg.x_bound = 0;
    CHECK_THROWS_AS(integral_points(BigInt(-31), cfg), usage_error);
}

TEST_CASE("rational point search") {
    SearchConfig cfg;
    cfg.height_bound = 600;
    auto pts = rational_points(curve_other(BigInt(65040)), cfg);
    bool found = false;
    for (auto& p : pts) found = found || (!p.infinity && p.x == 64 && p.y == 572);
    CHECK(found);
    // both signs of y are present
    bool found_neg = false;
    for (auto& p : pts) found_neg = found_neg || (!p.infinity && p.x == 64 && p.y == -572);
    CHECK(found_neg);

    // degenerate bound: only |x|, |y| <= 1 integral points can appear
    SearchConfig tiny;
    tiny.height_bound = 1;
    auto small = rational_points(curve_other(BigInt(-7 * 48)), tiny);
    CHECK(small.empty());
    auto cusp = rational_points(curve_other(BigInt(1)), tiny);  // (0, 1) and (-1, 0)
    CHECK(cusp.size() == 3);

    // emptiness at a bound is just a report fact
    SearchConfig k1488;
    k1488.height_bound = 200;
    auto none = rational_points(curve_other(BigInt(1488)), k1488);
    for (auto& p : none) CHECK(on_curve(curve_other(BigInt(1488)), p));
}

TEST_CASE("rational point search is sorted by z then m, y-positive first") {
    SearchConfig cfg;
    cfg.height_bound = 50;
    auto pts = rational_points(curve_other(BigInt(-26)), cfg);  // (3, 1) lives here
    REQUIRE(!pts.empty());
    BigInt last_z = 1, last_m;
    bool first = true;
    for (auto& p : pts) {
        auto dec = decompose(p);
        if (!first && dec.Z == last_z) CHECK(dec.X >= last_m);
        if (!first) CHECK(dec.Z >= last_z);
        last_z = dec.Z;
        last_m = dec.X;
        first = false;
    }
}

TEST_CASE("lemma check: hypothesis gate") {
    SearchConfig cfg;
    cfg.height_bound = 30;
    auto skip3 = lemma_notinim_check(BigInt(21), cfg);
    CHECK(!skip3.hypothesis_met);
    CHECK(skip3.skip_reason.find("3") != std::string::npos);

    auto skip_even = lemma_notinim_check(BigInt(8), cfg);
    CHECK(!skip_even.hypothesis_met);

    auto skip_nonfund = lemma_notinim_check(BigInt(-27), cfg);
    CHECK(!skip_nonfund.hypothesis_met);

    auto ok = lemma_notinim_check(BigInt(-7), cfg);
    CHECK(ok.hypothesis_met);
}

TEST_CASE("lemma check examines points when they exist") {
    // E_D for D = -7 is Y^2 = X^3 - 9072 and carries (88, +-820), the phi
    // image of (4, 20) on E_D'; height 1000 reaches it.
    SearchConfig cfg;
    cfg.height_bound = 1000;
    auto rep = lemma_notinim_check(BigInt(-7), cfg);
    CHECK(rep.hypothesis_met);
    CHECK(!rep.vacuous);
    CHECK(rep.points_examined >= 2);

    SearchConfig small;
    small.height_bound = 50;
    for (long d : {-19L, -31L, 5L, 17L}) {
        auto r = lemma_notinim_check(BigInt(d), small);
        CHECK(r.hypothesis_met);
        CHECK(r.vacuous == (r.points_examined == 0));
    }
}
