#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "twistd/phase.hpp"

using namespace twistd;

TEST_CASE("phase canonical form and order") {
    CHECK(phase_order(Phase(0, 1)) == 1);
    CHECK(phase_order(Phase(1, 3)) == 3);
    CHECK(phase_order(Phase(2, 6)) == 3);  // reduction enforced
    CHECK(Phase(2, 6) == Phase(1, 3));
    CHECK(Phase(-1, 3) == Phase(2, 3));
    CHECK(Phase(7, 3) == Phase(1, 3));
    CHECK(Phase(3, 3) == Phase(0, 1));
}

TEST_CASE("phase arithmetic is mod-1 group arithmetic") {
    CHECK(Phase(1, 2) + Phase(1, 2) == Phase(0, 1));
    CHECK(Phase(1, 3) + Phase(1, 6) == Phase(1, 2));
    CHECK(-Phase(1, 3) == Phase(2, 3));
    CHECK(Phase(1, 3) - Phase(2, 3) == Phase(2, 3));
    CHECK(Phase(1, 3).times(3) == Phase(0, 1));
    CHECK(Phase(1, 3).times(-1) == Phase(2, 3));
    CHECK(Phase(2, 3).divided_by(2) == Phase(1, 3));
    CHECK(Phase(1, 3).divided_by(2) == Phase(1, 6));
}

TEST_CASE("phase group laws on random values") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long long> num(-50, 50), den(1, 24);
    for (int i = 0; i < 500; ++i) {
        Phase a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a + (-a) == Phase());
        CHECK(a.divided_by(5).times(5) == a);
        CHECK(a.times(phase_order(a)) == Phase());
    }
}

TEST_CASE("phase parse and format round trip") {
    CHECK(Phase::parse("0"));
    CHECK(*Phase::parse("0") == Phase());
    CHECK(*Phase::parse("1/3") == Phase(1, 3));
    CHECK(*Phase::parse("-1/3") == Phase(2, 3));
    CHECK(*Phase::parse("5/10") == Phase(1, 2));
    CHECK_FALSE(Phase::parse(""));
    CHECK_FALSE(Phase::parse("a/b"));
    CHECK_FALSE(Phase::parse("1/0"));
    CHECK_FALSE(Phase::parse("1/2/3"));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long long> num(0, 100), den(1, 64);
    for (int i = 0; i < 200; ++i) {
        Phase p(num(rng), den(rng));
        auto q = Phase::parse(p.str());
        REQUIRE(q);
        CHECK(*q == p);
    }
}
