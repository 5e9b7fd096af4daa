// Acceptance suite: runs every verification criterion at its stated
// tolerance (exact arithmetic throughout) and prints one pass/fail line
// per criterion. Returns nonzero if any blocking criterion fails; the
// final exploratory search reports findings without failing.

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "twistd/twistd.hpp"

using namespace twistd;

namespace {

int failures = 0;

void line(int number, bool pass, const std::string& what, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

void info(int number, const std::string& what) {
    std::cout << "INFO criterion " << number << ": " << what << std::endl;
}

long long h3_kuenneth_cyclic_product(long long m, long long k) { return m * k * std::gcd(m, k); }

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0]() {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    CorpusOptions copts;
    std::vector<Instance> corpus = default_corpus(copts);
    struct Result {
        ExponentReport report;
        AxiomReport axioms;
    };
    std::vector<Result> results;
    results.reserve(corpus.size());
    for (const auto& inst : corpus) {
        BatteryOptions bopts;
        bopts.instance_name = inst.name;
        results.push_back({theorem_battery(inst.ctx, bopts, inst.fiber),
                           axiom_suite(inst.ctx, exp_omega_modified(inst.ctx.omega))});
    }

    // 1. cyclic exactness: exp D^w C_n = |zeta| n for odd n <= 9, all roots
    {
        auto start = elapsed();
        bool ok = true;
        std::string detail;
        for (int n = 1; n <= 9; n += 2)
            for (int k = 0; k < n; ++k) {
                Phase zeta(k, n);
                Context ctx{cyclic_standard_cocycle(make_cyclic(n), zeta)};
                long long expect = phase_order(zeta) * n;
                if (exponent_via_pi(ctx.omega) != expect ||
                    exponent_via_ribbon(ctx) != expect ||
                    exponent_via_monodromy(ctx) != expect) {
                    ok = false;
                    detail = "n=" + std::to_string(n) + " zeta=" + zeta.str();
                }
            }
        long long ms = elapsed() - start;
        if (ms >= 10000) {
            ok = false;
            detail = "runtime " + std::to_string(ms) + " ms exceeds 10 s";
        }
        line(1, ok, "cyclic exactness by all three routes",
             detail.empty() ? std::to_string(ms) + " ms" : detail);
    }

    // 2. even edge case (C2, w(a,a,a) = -1)
    {
        Context ctx{cyclic_standard_cocycle(make_cyclic(2), Phase(1, 2))};
        bool ok = exponent_via_pi(ctx.omega) == 2 && exponent_via_ribbon(ctx) == 2 &&
                  exponent_via_monodromy(ctx) == 2;
        line(2, ok, "even edge case exponent is exactly 2");
    }

    // 3. divisibility chain and prime support over the full corpus
    {
        bool ok = true;
        std::string detail;
        for (const auto& r : results) {
            const auto& rep = r.report;
            bool chain = rep.exp_double % rep.exp_G == 0 &&
                         rep.exp_omega_G % rep.exp_double == 0 &&
                         (rep.exp_G * rep.exp_G) % rep.exp_double == 0;
            if (rep.e_omega_global)
                chain = chain && (*rep.e_omega_global * rep.exp_G) % rep.exp_omega_G == 0;
            bool primes = true;
            for (const auto& c : rep.checks)
                if (c.name == "same_prime_divisors" && c.status != CheckStatus::Pass) primes = false;
            if (!(chain && primes)) {
                ok = false;
                detail = rep.instance;
            }
        }
        if (elapsed() >= 120000) {
            ok = false;
            detail = "corpus runtime exceeds 2 min";
        }
        line(3, ok, "divisibility chain and prime support on " +
                        std::to_string(results.size()) + " instances",
             detail.empty() ? std::to_string(elapsed()) + " ms total so far" : detail);
    }

    // 4. odd-order and fiber-functor equality with the modified exponent
    {
        bool ok = true;
        std::string detail;
        for (size_t i = 0; i < corpus.size(); ++i) {
            const auto& rep = results[i].report;
            if (rep.group_order % 2 == 1 && rep.exp_double != rep.exp_omega_G) {
                ok = false;
                detail = rep.instance;
            }
            if (corpus[i].fiber && rep.exp_double != rep.exp_omega_G) {
                ok = false;
                detail = rep.instance;
            }
        }
        line(4, ok, "odd-order and fiber-functor instances reach exp_w G", detail);
    }

    // 5. route agreement and the monodromy bound
    {
        bool ok = true;
        std::string detail;
        for (const auto& r : results) {
            const auto& rep = r.report;
            if (rep.route_pi != rep.route_ribbon || rep.route_pi != rep.route_monodromy) {
                ok = false;
                detail = rep.instance;
            }
            for (const auto& c : rep.checks)
                if (c.name == "monodromy_within_bound" && c.status != CheckStatus::Pass) {
                    ok = false;
                    detail = rep.instance + " (bound)";
                }
        }
        line(5, ok, "three exponent routes agree, order of R21R within exp_w G", detail);
    }

    // 6. axiom suite on every instance
    {
        bool ok = true;
        std::string detail;
        for (size_t i = 0; i < corpus.size(); ++i)
            for (const auto& c : results[i].axioms.checks)
                if (!c.pass) {
                    ok = false;
                    detail = corpus[i].name + " " + c.name + " " + c.detail;
                }
        line(6, ok, "quasi-Hopf axiom suite incl. closed forms for R_n, g^n, u^n, v^-n", detail);
    }

    // 7. oracle equivalence: pi invariant vs SNF solver on cyclic subgroups
    {
        bool ok = true;
        std::string detail;
        for (const auto& inst : corpus) {
            const auto& w = inst.ctx.omega;
            const GroupTable& G = w.group;
            for (ElemId g = 0; g < G.n; ++g) {
                auto H = subgroup_generated(G, {g});
                if (cyclic_class_order(w, g) != class_order(restrict3(w, H))) {
                    ok = false;
                    detail = inst.name + " g=" + G.name(g);
                }
            }
        }
        line(7, ok, "cyclic class orders agree with the SNF coboundary solver", detail);
    }

    // 8. cohomology invariance under 20 seeded coboundary perturbations
    {
        bool ok = true;
        std::string detail;
        std::mt19937_64 rng(copts.seed);
        for (const auto& inst : corpus) {
            const auto& w = inst.ctx.omega;
            if (w.group.n > 9) continue;
            long long base = exponent_via_pi(w);
            std::vector<long long> base_cyclic;
            for (ElemId g = 0; g < w.group.n; ++g) base_cyclic.push_back(cyclic_class_order(w, g));
            for (int rep = 0; rep < 20; ++rep) {
                auto wp = w + coboundary(random_cochain2(w.group, rng));
                if (exponent_via_pi(wp) != base) {
                    ok = false;
                    detail = inst.name;
                }
                for (ElemId g = 0; g < w.group.n; ++g)
                    if (cyclic_class_order(wp, g) != base_cyclic[static_cast<size_t>(g)]) {
                        ok = false;
                        detail = inst.name + " g=" + w.group.name(g);
                    }
            }
        }
        line(8, ok, "exponent and cyclic class orders invariant under coboundaries", detail);
    }

    // 9. normalization: N-torsion diagonal, certified cohomologous, beta order
    {
        bool ok = true;
        std::string detail;
        for (const auto& inst : corpus) {
            const auto& w = inst.ctx.omega;
            const GroupTable& G = w.group;
            long long N = group_exponent(G);
            Cochain3 norm = normalize_cocycle(w);
            for (ElemId g = 0; g < G.n; ++g)
                if (!norm.at(g, G.inverse(g), g).times(N).is_zero()) {
                    ok = false;
                    detail = inst.name + " diagonal";
                }
            if (!solve_coboundary3(norm - w).solvable) {
                ok = false;
                detail = inst.name + " certificate";
            }
            Context nctx{norm};
            long long bound = 1;
            for (ElemId g = 0; g < G.n; ++g)
                bound = std::lcm(bound, phase_order(norm.at(g, G.inverse(g), g)));
            if (N % mono_order(canonical_element(nctx, Canonical::Beta), bound) != 0) {
                ok = false;
                detail = inst.name + " beta order";
            }
        }
        line(9, ok, "normalized cocycles: N-torsion diagonal, certificate, beta order", detail);
    }

    // 10. Schur-Zassenhaus collapse for coprime bicrossed data
    {
        bool ok = true;
        std::string detail;
        int accepted = 0;
        auto mp = matched_pair_s3();
        for_each_datum(mp, 2, 3, [&](const ExtensionDatum& d) {
            try {
                omega_from_sigma_tau(mp, d);
            } catch (const std::runtime_error&) {
                return true;
            }
            ++accepted;
            if (!coprime_split_check(mp, d)) {
                ok = false;
                detail = "s3 pair";
            }
            return true;
        });
        auto mp2 = matched_pair_trivial(make_cyclic(2), make_cyclic(5));
        std::mt19937_64 rng(copts.seed + 1);
        int tried = 0;
        for (int rep = 0; rep < 60 && tried < 10; ++rep) {
            auto d = random_datum(mp2, 10, rng);
            try {
                omega_from_sigma_tau(mp2, d);
            } catch (const std::runtime_error&) {
                continue;
            }
            ++tried;
            ++accepted;
            if (!coprime_split_check(mp2, d)) {
                ok = false;
                detail = "c2xc5";
            }
        }
        if (!coprime_split_check(mp2, ExtensionDatum::trivial(mp2))) ok = false;
        line(10, ok && accepted > 0,
             "coprime bicrossed data give coboundary cocycles and exp A = exp G (" +
                 std::to_string(accepted + 1) + " data)",
             detail);
    }

    // 11. H^3 orders against the literature values and a Kuenneth oracle
    {
        auto start = elapsed();
        bool ok = true;
        std::string detail;
        for (int n = 1; n <= 6; ++n)
            if (h3_order(make_cyclic(n)) != n) {
                ok = false;
                detail = "C" + std::to_string(n);
            }
        auto V = direct_product(make_cyclic(2), make_cyclic(2));
        if (h3_order(V) != h3_kuenneth_cyclic_product(2, 2)) {
            ok = false;
            detail = "C2xC2";
        }
        long long ms = elapsed() - start;
        if (ms >= 300000) {
            ok = false;
            detail = "runtime " + std::to_string(ms) + " ms exceeds 5 min";
        }
        line(11, ok, "H3 orders: cyclic groups and the Klein four-group",
             detail.empty() ? std::to_string(ms) + " ms" : detail);
    }

    // 12. exploratory: a D4-type instance with exponent 8 > exp G = 4
    {
        auto d4 = d4_exponent_search(copts.seed);
        info(12, "examined " + std::to_string(d4.accepted) + " accepted cocycles, max exponent " +
                     std::to_string(d4.best_exp));
        if (d4.best_exp == 8)
            info(12, "witness found: " + d4.witness);
        else
            info(12, "no witness with exponent 8 in the searched family (logged, not failed)");
        line(12, true, "exploratory Kac-Paljutkin search completed");
    }

    std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : "FAILURES: " + std::to_string(failures))
              << " (" << elapsed() << " ms total)" << std::endl;
    return failures == 0 ? 0 : 1;
}
