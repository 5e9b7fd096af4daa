#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "twistd/corpus.hpp"
#include "twistd/group.hpp"

using namespace twistd;

namespace {

std::multiset<long long> order_multiset(const GroupTable& G) {
    std::multiset<long long> m;
    for (ElemId g = 0; g < G.n; ++g) m.insert(element_order(G, g));
    return m;
}

}  // namespace

TEST_CASE("make_cyclic basics") {
    auto C1 = make_cyclic(1);
    CHECK(C1.n == 1);
    CHECK(group_exponent(C1) == 1);
    auto C3 = make_cyclic(3);
    CHECK(C3.mul(1, 2) == 0);  // a * a^2 = e
    auto C4 = make_cyclic(4);
    CHECK(element_order(C4, 1) == 4);
    CHECK_THROWS_AS(make_cyclic(0), std::invalid_argument);
}

TEST_CASE("from_permutations closure enumeration") {
    auto S3 = from_permutations({{1, 0, 2}, {1, 2, 0}});
    CHECK(S3.n == 6);
    CHECK(group_exponent(S3) == 6);
    auto T = from_permutations({{0, 1, 2}});
    CHECK(T.n == 1);
    auto C4 = from_permutations({{1, 2, 3, 0}});
    CHECK(C4.n == 4);
    CHECK(order_multiset(C4) == order_multiset(make_cyclic(4)));
    CHECK_THROWS(from_permutations({{0, 0, 1}}));  // not a bijection
    CHECK_THROWS_AS(from_permutations({{1, 2, 3, 4, 0}}, 3), std::runtime_error);  // cap
}

TEST_CASE("regular representation of a cyclic group is isomorphic to it") {
    for (int n : {2, 5, 6}) {
        auto Cn = make_cyclic(n);
        std::vector<int> shift(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) shift[static_cast<size_t>(i)] = Cn.mul(1, i);
        auto R = from_permutations({shift});
        CHECK(R.n == n);
        CHECK(order_multiset(R) == order_multiset(Cn));
    }
}

TEST_CASE("direct products") {
    auto V = direct_product(make_cyclic(2), make_cyclic(2));
    CHECK(V.n == 4);
    CHECK(group_exponent(V) == 2);
    auto C33 = direct_product(make_cyclic(3), make_cyclic(3));
    for (ElemId g = 1; g < C33.n; ++g) CHECK(element_order(C33, g) == 3);
    auto C6ish = direct_product(make_cyclic(2), make_cyclic(3));
    CHECK(order_multiset(C6ish) == order_multiset(make_cyclic(6)));
}

TEST_CASE("quotients") {
    auto S3 = builtin_s3();
    SECTION("G/G is trivial") {
        Subgroup all;
        all.members.resize(static_cast<size_t>(S3.n));
        std::iota(all.members.begin(), all.members.end(), 0);
        auto [Q, proj] = quotient(S3, all);
        CHECK(Q.n == 1);
    }
    SECTION("G/{e} is G up to reindexing") {
        Subgroup triv;
        triv.members = {0};
        auto [Q, proj] = quotient(S3, triv);
        CHECK(Q.n == 6);
        CHECK(order_multiset(Q) == order_multiset(S3));
    }
    SECTION("S3 / C3 = C2, projection is a homomorphism") {
        ElemId three_cycle = 0;
        for (ElemId g = 1; g < S3.n; ++g)
            if (element_order(S3, g) == 3) { three_cycle = g; break; }
        auto N = subgroup_generated(S3, {three_cycle});
        CHECK(N.order() == 3);
        auto [Q, proj] = quotient(S3, N);
        CHECK(Q.n == 2);
        for (ElemId a = 0; a < S3.n; ++a)
            for (ElemId b = 0; b < S3.n; ++b)
                CHECK(proj[static_cast<size_t>(S3.mul(a, b))] ==
                      Q.mul(proj[static_cast<size_t>(a)], proj[static_cast<size_t>(b)]));
    }
    SECTION("non-normal subgroup is rejected") {
        ElemId transposition = 0;
        for (ElemId g = 1; g < S3.n; ++g)
            if (element_order(S3, g) == 2) { transposition = g; break; }
        auto H = subgroup_generated(S3, {transposition});
        CHECK_THROWS_AS(quotient(S3, H), std::runtime_error);
    }
}

TEST_CASE("subgroup_generated") {
    auto C6 = make_cyclic(6);
    auto E = subgroup_generated(C6, {});
    CHECK(E.members == std::vector<ElemId>{0});
    auto H = subgroup_generated(C6, {2});
    CHECK(H.members == std::vector<ElemId>({0, 2, 4}));
    auto S3 = builtin_s3();
    ElemId transposition = 0;
    for (ElemId g = 1; g < S3.n; ++g)
        if (element_order(S3, g) == 2) { transposition = g; break; }
    CHECK(subgroup_generated(S3, {transposition}).order() == 2);
}

TEST_CASE("element orders and exponents") {
    auto C4 = make_cyclic(4);
    CHECK(element_order(C4, 0) == 1);
    CHECK(element_order(C4, 1) == 4);
    auto S3 = builtin_s3();
    CHECK(group_exponent(S3) == 6);
    CHECK(group_exponent(builtin_d4()) == 4);
    for (ElemId g = 0; g < S3.n; ++g) {
        CHECK(group_exponent(S3) % element_order(S3, g) == 0);
        CHECK(S3.n % element_order(S3, g) == 0);
    }
}

TEST_CASE("exact factorizations") {
    auto C6 = make_cyclic(6);
    CHECK(is_exact_factorization(C6, subgroup_generated(C6, {3}), subgroup_generated(C6, {2})));
    auto C4 = make_cyclic(4);
    auto H = subgroup_generated(C4, {2});
    CHECK_FALSE(is_exact_factorization(C4, H, H));
    auto S3 = builtin_s3();
    ElemId t = 0, c = 0;
    for (ElemId g = 1; g < S3.n; ++g) {
        if (element_order(S3, g) == 2 && t == 0) t = g;
        if (element_order(S3, g) == 3 && c == 0) c = g;
    }
    CHECK(is_exact_factorization(S3, subgroup_generated(S3, {t}), subgroup_generated(S3, {c})));
}

TEST_CASE("builtin corpus groups have the expected shapes") {
    auto F21 = builtin_frobenius21();
    CHECK(F21.n == 21);
    CHECK(group_exponent(F21) == 21);
    auto orders = order_multiset(F21);
    CHECK(orders.count(3) == 14);
    CHECK(orders.count(7) == 6);
    auto H27 = builtin_heisenberg27();
    CHECK(H27.n == 27);
    CHECK(group_exponent(H27) == 3);
    bool abelian = true;
    for (ElemId a = 0; a < H27.n && abelian; ++a)
        for (ElemId b = 0; b < H27.n; ++b)
            if (H27.mul(a, b) != H27.mul(b, a)) { abelian = false; break; }
    CHECK_FALSE(abelian);
}

TEST_CASE("group table validation rejects broken tables") {
    GroupTable bad;
    bad.n = 2;
    bad.mult = {0, 1, 1, 1};  // second row constant: not a Latin square
    bad.inv = {0, 1};
    CHECK_THROWS_AS(bad.validate(), std::runtime_error);
}
