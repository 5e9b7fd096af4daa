#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "twistd/corpus.hpp"
#include "twistd/exponent.hpp"

using namespace twistd;

TEST_CASE("pi_n") {
    auto C3 = make_cyclic(3);
    auto w = cyclic_standard_cocycle(C3, Phase(1, 3));
    SECTION("pi_1 = 0 and trivial cocycles give 0") {
        for (ElemId g = 0; g < 3; ++g) CHECK(pi_n(w, g, 1).is_zero());
        Cochain3 triv(C3);
        for (long long n = 1; n <= 6; ++n)
            for (ElemId g = 0; g < 3; ++g) CHECK(pi_n(triv, g, n).is_zero());
    }
    SECTION("paper values on C3: pi_3(a) = pi_3(a^2) = 1/3") {
        CHECK(pi_n(w, 1, 3) == Phase(1, 3));
        CHECK(pi_n(w, 2, 3) == Phase(1, 3));  // zeta^{(n-1)^2} = zeta
    }
    SECTION("recursion pi_n(g) = pi_{n-1}(g) + w(g, g^{n-1}, g)") {
        for (ElemId g = 0; g < 3; ++g)
            for (long long n = 2; n <= 9; ++n)
                CHECK(pi_n(w, g, n) ==
                      pi_n(w, g, n - 1) + w.at(g, power(C3, g, n - 1), g));
    }
}

TEST_CASE("modified exponent") {
    SECTION("trivial cocycle gives exp G") {
        for (auto name : {"c6", "s3", "d4"}) {
            auto G = *builtin_group(name);
            Cochain3 triv(G);
            CHECK(exp_omega_modified(triv) == group_exponent(G));
        }
    }
    SECTION("cyclic groups: exp_w = |zeta| n") {
        for (int n = 2; n <= 9; ++n)
            for (int k = 0; k < n; ++k) {
                Phase zeta(k, n);
                auto w = cyclic_standard_cocycle(make_cyclic(n), zeta);
                CHECK(exp_omega_modified(w) == phase_order(zeta) * n);
            }
    }
    SECTION("inflated 1/3 twist on C3 x C3 gives 9") {
        auto C33 = direct_product(make_cyclic(3), make_cyclic(3));
        auto inst = instance_inflated("c3xc3", C33, 3, Phase(1, 3));
        CHECK(exp_omega_modified(inst.ctx.omega) == 9);
    }
    SECTION("sandwich exp G | exp_w G | e(w) exp G") {
        auto inst = instance_inflated("c3xc3",
                                      direct_product(make_cyclic(3), make_cyclic(3)), 3,
                                      Phase(1, 3));
        long long expG = group_exponent(inst.ctx.omega.group);
        long long expw = exp_omega_modified(inst.ctx.omega);
        long long ew = class_order(inst.ctx.omega);
        CHECK(expw % expG == 0);
        CHECK((ew * expG) % expw == 0);
    }
}

TEST_CASE("three exponent routes") {
    SECTION("trivial cocycles give exp G") {
        for (auto name : {"c4", "s3", "d4"}) {
            auto G = *builtin_group(name);
            Context ctx{Cochain3(G)};
            long long e = group_exponent(G);
            CHECK(exponent_via_pi(ctx.omega) == e);
            CHECK(exponent_via_ribbon(ctx) == e);
            CHECK(exponent_via_monodromy(ctx) == e);
        }
    }
    SECTION("(C3, 1/3) has exponent 9 by all routes") {
        Context ctx{cyclic_standard_cocycle(make_cyclic(3), Phase(1, 3))};
        CHECK(exponent_via_pi(ctx.omega) == 9);
        CHECK(exponent_via_ribbon(ctx) == 9);
        CHECK(exponent_via_monodromy(ctx) == 9);
    }
    SECTION("even edge case: (C2, w(a,a,a) = 1/2) has exponent exactly 2") {
        Context ctx{cyclic_standard_cocycle(make_cyclic(2), Phase(1, 2))};
        CHECK(exponent_via_pi(ctx.omega) == 2);
        CHECK(exponent_via_ribbon(ctx) == 2);
        CHECK(exponent_via_monodromy(ctx) == 2);
    }
    SECTION("routes agree on a nonabelian instance") {
        auto inst = instance_inflated("d4", builtin_d4(), 2, Phase(1, 2));
        long long a = exponent_via_pi(inst.ctx.omega);
        CHECK(a == exponent_via_ribbon(inst.ctx));
        CHECK(a == exponent_via_monodromy(inst.ctx));
    }
}

TEST_CASE("fiber functor check") {
    auto S3 = builtin_s3();
    ElemId t = 0, c = 0;
    for (ElemId g = 1; g < S3.n; ++g) {
        if (element_order(S3, g) == 2 && t == 0) t = g;
        if (element_order(S3, g) == 3 && c == 0) c = g;
    }
    auto F = subgroup_generated(S3, {t});
    auto Gam = subgroup_generated(S3, {c});
    SECTION("trivial cocycle with an exact factorization") {
        Cochain3 triv(S3);
        CHECK(fiber_functor_check(triv, F, Gam));
    }
    SECTION("nontrivial restriction is rejected") {
        auto w = cyclic_standard_cocycle(make_cyclic(3), Phase(1, 3));
        Subgroup all;
        all.members = {0, 1, 2};
        CHECK_FALSE(fiber_functor_check(w, all, all));
    }
    SECTION("inflated sign cocycle on S3: Gamma restriction trivial, F must be solver-checked") {
        auto inst = instance_inflated("s3", S3, 2, Phase(1, 2));
        const auto& w = inst.ctx.omega;
        auto rGam = restrict3(w, Gam);
        bool gamma_trivial = true;
        for (const Phase& p : rGam.values)
            if (!p.is_zero()) gamma_trivial = false;
        CHECK(gamma_trivial);
        // the F restriction is the nontrivial class on C2, so no fiber functor here
        CHECK_FALSE(solve_coboundary3(restrict3(w, F)).solvable);
        CHECK_FALSE(fiber_functor_check(w, F, Gam));
    }
    SECTION("intersection and covering are enforced") {
        Cochain3 triv(S3);
        CHECK_FALSE(fiber_functor_check(triv, F, F));
        Subgroup e_only;
        e_only.members = {0};
        CHECK_FALSE(fiber_functor_check(triv, F, e_only));
    }
}

TEST_CASE("theorem battery") {
    SECTION("(C3, 1/3): exponent 9 divides e(w) exp G = 9 and (exp G)^2 = 9") {
        auto inst = instance_cyclic(3, Phase(1, 3));
        auto rep = theorem_battery(inst.ctx, {12, 24, inst.name});
        CHECK(rep.exp_double == 9);
        CHECK(rep.exp_omega_G == 9);
        REQUIRE(rep.e_omega_global.has_value());
        CHECK(*rep.e_omega_global == 3);
        CHECK(rep.all_pass());
        bool saw_odd_equality = false;
        for (const auto& c : rep.checks)
            if (c.name == "odd_order_equality") {
                saw_odd_equality = true;
                CHECK(c.status == CheckStatus::Pass);
            }
        CHECK(saw_odd_equality);
    }
    SECTION("trivial cocycle: everything passes, exponent is exp G") {
        auto inst = instance_trivial("d4", builtin_d4());
        auto rep = theorem_battery(inst.ctx, {12, 24, inst.name});
        CHECK(rep.exp_double == 4);
        CHECK(rep.beta_order == 1);
        CHECK(rep.all_pass());
    }
    SECTION("D4 with an inflated cocycle: exponent divides 16, same primes as 8") {
        auto inst = instance_inflated("d4", builtin_d4(), 2, Phase(1, 2));
        auto rep = theorem_battery(inst.ctx, {12, 24, inst.name});
        CHECK(16 % rep.exp_double == 0);
        CHECK(rep.all_pass());
    }
    SECTION("the C2 edge case leaves a noteworthy event, not a failure") {
        auto inst = instance_cyclic(2, Phase(1, 2));
        auto rep = theorem_battery(inst.ctx, {12, 24, inst.name});
        CHECK(rep.exp_double == 2);
        CHECK(rep.all_pass());
        bool noteworthy = false;
        for (const auto& e : rep.events)
            if (e.find("nonzero character") != std::string::npos) noteworthy = true;
        CHECK(noteworthy);
    }
    SECTION("beta order of the normalized representative divides exp G") {
        std::mt19937_64 rng(31);
        auto C3 = make_cyclic(3);
        auto w = cyclic_standard_cocycle(C3, Phase(1, 3));
        Context pert{w + coboundary(random_cochain2(C3, rng))};
        auto rep = theorem_battery(pert, {12, 24, "perturbed"});
        CHECK(rep.exp_G % rep.beta_order_normalized == 0);
        CHECK(rep.all_pass());
    }
    SECTION("invalid fiber data is rejected") {
        auto inst = instance_cyclic(3, Phase(1, 3));
        Subgroup all;
        all.members = {0, 1, 2};
        CHECK_THROWS_AS(theorem_battery(inst.ctx, {}, FiberData{all, all}),
                        std::invalid_argument);
    }
    SECTION("a theta fault is detected as route disagreement") {
        auto inst = instance_cyclic(3, Phase(1, 3));
        inst.ctx.theta_fault = Phase(1, 5);
        auto rep = theorem_battery(inst.ctx, {12, 24, inst.name});
        CHECK_FALSE(rep.all_pass());
    }
}

TEST_CASE("question probe") {
    auto S3 = builtin_s3();
    ElemId t = 0, c = 0;
    for (ElemId g = 1; g < S3.n; ++g) {
        if (element_order(S3, g) == 2 && t == 0) t = g;
        if (element_order(S3, g) == 3 && c == 0) c = g;
    }
    auto F = subgroup_generated(S3, {t});
    auto Gam = subgroup_generated(S3, {c});
    SECTION("trivial cocycle trivially divides") {
        auto res = question_probe(Cochain3(S3), F, Gam);
        REQUIRE(res.e_omega.has_value());
        CHECK(*res.e_omega == 1);
        CHECK(res.divides.value());
    }
    SECTION("coprime factor orders force e(w) = 1") {
        // every kernel element w over the coprime S3 factorization has trivial class
        auto mp = matched_pair_s3();
        auto w = omega_from_sigma_tau(mp, ExtensionDatum::trivial(mp));
        BicrossedGroup bg = build_bicrossed(mp);
        auto res = question_probe(w, bg.F_image, bg.Gamma_image);
        REQUIRE(res.e_omega.has_value());
        CHECK(*res.e_omega == 1);
        CHECK(res.divides.value());
    }
    SECTION("precondition violations throw") {
        auto inst = instance_inflated("s3", S3, 2, Phase(1, 2));
        CHECK_THROWS_AS(question_probe(inst.ctx.omega, F, Gam), std::invalid_argument);
    }
}
