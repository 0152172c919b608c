#include "doctest.h"

#include "mdv/discriminants.hpp"

using namespace mdv;

namespace {

// Test-local squarefree check, independent of squarefree_part.
bool brute_squarefree(long n) {
    if (n < 0) n = -n;
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

long mod12(long n) { return ((n % 12) + 12) % 12; }

} // namespace

TEST_CASE("is_fundamental") {
    CHECK(is_fundamental(BigInt(-31)));
    CHECK(is_fundamental(BigInt(12)));
    CHECK(!is_fundamental(BigInt(45)));
    CHECK(is_fundamental(BigInt(5)));
    CHECK(is_fundamental(BigInt(-4)));
    CHECK(is_fundamental(BigInt(8)));
    CHECK(is_fundamental(BigInt(-8)));
    CHECK(!is_fundamental(BigInt(-2)));
    CHECK(!is_fundamental(BigInt(16)));
    CHECK(!is_fundamental(BigInt(-12)));
    CHECK_THROWS_AS(is_fundamental(BigInt(0)), usage_error);
    CHECK_THROWS_AS(is_fundamental(BigInt(1)), usage_error);
}

TEST_CASE("in_family") {
    CHECK(in_family(BigInt(-7)));
    CHECK(in_family(BigInt(-19)));
    CHECK(!in_family(BigInt(-23)));
    CHECK(in_family(BigInt(5)));
    CHECK(!in_family(BigInt(9)));       // 9 = 3^2
    CHECK(!in_family(BigInt(21)));      // 21 = 9 mod 12
    CHECK(!in_family(BigInt(-45)));
    CHECK(!in_family(BigInt(0)));
    CHECK(!in_family(BigInt(1)));

    // in_family(n) <=> n odd fundamental with n = 2 mod 3
    for (long n = -500; n <= 500; ++n) {
        if (n == 0 || n == 1) continue;
        bool lhs = in_family(BigInt(n));
        bool odd_fund = (n % 2 != 0) && is_fundamental(BigInt(n));
        bool rhs = odd_fund && ((n % 3 + 3) % 3 == 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mirror") {
    auto p = mirror(BigInt(-7));
    CHECK(p.d == -7);
    CHECK(p.dprime == 21);
    CHECK(p.negative);
    CHECK(p.imaginary_disc() == -7);
    CHECK(p.real_disc() == 21);

    auto q = mirror(BigInt(-31));
    CHECK(q.dprime == 93);

    auto r = mirror(BigInt(5));
    CHECK(r.dprime == -15);
    CHECK(!r.negative);
    CHECK(r.imaginary_disc() == -15);
    CHECK(r.real_disc() == 5);

    CHECK_THROWS_AS(mirror(BigInt(-23)), usage_error);
    CHECK_THROWS_AS(mirror(BigInt(9)), usage_error);
}

TEST_CASE("mirror involution up to fundamental reduction") {
    for (auto& p : enumerate_family(BigInt(-400), BigInt(400))) {
        CHECK(-3 * p.dprime == 9 * p.d);
        CHECK(-3 * p.dprime / 9 == p.d);
    }
}

TEST_CASE("enumerate_family on hand-checked windows") {
    auto neg = enumerate_family(BigInt(-35), BigInt(-1));
    REQUIRE(neg.size() == 3);
    CHECK(neg[0].d == -31);
    CHECK(neg[1].d == -19);
    CHECK(neg[2].d == -7);

    auto pos = enumerate_family(BigInt(1), BigInt(35));
    REQUIRE(pos.size() == 3);
    CHECK(pos[0].d == 5);
    CHECK(pos[1].d == 17);
    CHECK(pos[2].d == 29);

    CHECK(enumerate_family(BigInt(-5), BigInt(-1)).empty());
    CHECK(enumerate_family(BigInt(-100), BigInt(-1)).size() == 8);
    CHECK_THROWS_AS(enumerate_family(BigInt(3), BigInt(1)), usage_error);
}

TEST_CASE("enumerate_family equals the 5 mod 12 squarefree filter") {
    auto got = enumerate_family(BigInt(-1000), BigInt(1000));
    std::vector<long> expected;
    for (long n = -1000; n <= 1000; ++n)
        if (mod12(n) == 5 && brute_squarefree(n)) expected.push_back(n);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].d == expected[i]);
        CHECK(got[i].dprime == -3 * expected[i]);
        // certificates claimed by the pair
        CHECK(is_fundamental(got[i].d));
        CHECK(is_fundamental(got[i].dprime));
        CHECK(mod12(expected[i]) == 5);
        CHECK(mod12(-3 * expected[i]) == 9);
        if (i > 0) CHECK(got[i - 1].d < got[i].d);
    }
}
