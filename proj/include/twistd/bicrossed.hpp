#pragma once

#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "twistd/cochain.hpp"
#include "twistd/cohomology.hpp"
#include "twistd/exponent.hpp"
#include "twistd/group.hpp"

namespace twistd {

// Compatible actions of a matched pair (F, Gamma): g |> x in F and g <| x
// in Gamma, both stored as |Gamma| x |F| tables. Validity is operational:
// the pair product must define a group, which build_bicrossed checks
// exhaustively.
struct MatchedPair {
    GroupTable F;
    GroupTable Gamma;
    std::vector<ElemId> act_on_F;      // (g, x) -> g |> x
    std::vector<ElemId> act_on_Gamma;  // (g, x) -> g <| x

    ElemId tr(ElemId g, ElemId x) const { return act_on_F[static_cast<size_t>(g) * F.n + x]; }
    ElemId tl(ElemId g, ElemId x) const { return act_on_Gamma[static_cast<size_t>(g) * F.n + x]; }

    void check_units() const {
        if (static_cast<int>(act_on_F.size()) != Gamma.n * F.n ||
            static_cast<int>(act_on_Gamma.size()) != Gamma.n * F.n)
            throw std::invalid_argument("MatchedPair: action table size mismatch");
        for (ElemId v : act_on_F)
            if (v < 0 || v >= F.n) throw std::invalid_argument("MatchedPair: |> out of range");
        for (ElemId v : act_on_Gamma)
            if (v < 0 || v >= Gamma.n) throw std::invalid_argument("MatchedPair: <| out of range");
        for (ElemId g = 0; g < Gamma.n; ++g)
            if (tr(g, 0) != 0 || tl(g, 0) != g)
                throw std::invalid_argument("MatchedPair: unit constraints fail (x = e)");
        for (ElemId x = 0; x < F.n; ++x)
            if (tr(0, x) != x || tl(0, x) != 0)
                throw std::invalid_argument("MatchedPair: unit constraints fail (g = e)");
    }
};

struct BicrossedGroup {
    GroupTable G;                      // pairs (x, g), index x*|Gamma| + g
    std::vector<ElemId> embed_F;       // x -> (x, e)
    std::vector<ElemId> embed_Gamma;   // g -> (e, g)
    Subgroup F_image, Gamma_image;
};

// (x, g)(x', g') = (x (g |> x'), (g <| x') g'). Throws when the actions do
// not produce a group.
inline BicrossedGroup build_bicrossed(const MatchedPair& mp) {
    mp.check_units();
    int nf = mp.F.n, ng = mp.Gamma.n, n = nf * ng;
    GroupTable t;
    t.n = n;
    t.mult.resize(static_cast<size_t>(n) * n);
    for (ElemId x = 0; x < nf; ++x)
        for (ElemId g = 0; g < ng; ++g)
            for (ElemId x2 = 0; x2 < nf; ++x2)
                for (ElemId g2 = 0; g2 < ng; ++g2) {
                    int a = x * ng + g, b = x2 * ng + g2;
                    ElemId xr = mp.F.mul(x, mp.tr(g, x2));
                    ElemId gr = mp.Gamma.mul(mp.tl(g, x2), g2);
                    t.mult[static_cast<size_t>(a) * n + b] = xr * ng + gr;
                }
    try {
        t.compute_inverses();
        t.names.resize(n);
        for (ElemId x = 0; x < nf; ++x)
            for (ElemId g = 0; g < ng; ++g)
                t.names[static_cast<size_t>(x) * ng + g] = "(" + mp.F.names[x] + "|" + mp.Gamma.names[g] + ")";
        t.validate();
    } catch (const std::exception&) {
        throw std::runtime_error("build_bicrossed: incompatible actions (product is not a group)");
    }
    BicrossedGroup bg;
    bg.G = std::move(t);
    bg.embed_F.resize(static_cast<size_t>(nf));
    bg.embed_Gamma.resize(static_cast<size_t>(ng));
    for (ElemId x = 0; x < nf; ++x) bg.embed_F[static_cast<size_t>(x)] = x * ng;
    for (ElemId g = 0; g < ng; ++g) bg.embed_Gamma[static_cast<size_t>(g)] = g;
    bg.F_image.members = bg.embed_F;
    std::sort(bg.F_image.members.begin(), bg.F_image.members.end());
    bg.Gamma_image.members = bg.embed_Gamma;
    std::sort(bg.Gamma_image.members.begin(), bg.Gamma_image.members.end());
    bg.F_image.validate(bg.G);
    bg.Gamma_image.validate(bg.G);
    if (!is_exact_factorization(bg.G, bg.F_image, bg.Gamma_image))
        throw std::logic_error("build_bicrossed: embedded images are not an exact factorization");
    return bg;
}

// sigma: F x F -> (k^Gamma)^x and tau: Gamma x Gamma -> (k^F)^x, normalized
// in their cochain slots. Acceptance of a pair is operational: the produced
// w(sigma, tau) must be a normalized 3-cocycle, and the function components
// at the identity (sigma_e, tau_e) must vanish so that both factor
// restrictions are trivial.
struct ExtensionDatum {
    std::vector<Phase> sigma;  // ((x, x'), g) -> sigma_g(x, x'), size |F|^2 |Gamma|
    std::vector<Phase> tau;    // ((g, g'), x) -> tau_x(g, g'), size |Gamma|^2 |F|

    static ExtensionDatum trivial(const MatchedPair& mp) {
        ExtensionDatum d;
        d.sigma.assign(static_cast<size_t>(mp.F.n) * mp.F.n * mp.Gamma.n, Phase{});
        d.tau.assign(static_cast<size_t>(mp.Gamma.n) * mp.Gamma.n * mp.F.n, Phase{});
        return d;
    }
    Phase sig(const MatchedPair& mp, ElemId x, ElemId x2, ElemId g) const {
        return sigma[(static_cast<size_t>(x) * mp.F.n + x2) * mp.Gamma.n + g];
    }
    Phase ta(const MatchedPair& mp, ElemId g, ElemId g2, ElemId x) const {
        return tau[(static_cast<size_t>(g) * mp.Gamma.n + g2) * mp.F.n + x];
    }
    void set_sigma(const MatchedPair& mp, ElemId x, ElemId x2, ElemId g, Phase p) {
        sigma[(static_cast<size_t>(x) * mp.F.n + x2) * mp.Gamma.n + g] = p;
    }
    void set_tau(const MatchedPair& mp, ElemId g, ElemId g2, ElemId x, Phase p) {
        tau[(static_cast<size_t>(g) * mp.Gamma.n + g2) * mp.F.n + x] = p;
    }
};

// w(xg, x'g', x''g'') = tau_{x''}(g <| x', g') + sigma_g(x', g' |> x'').
inline Cochain3 omega_from_sigma_tau(const MatchedPair& mp, const ExtensionDatum& datum) {
    BicrossedGroup bg = build_bicrossed(mp);
    int nf = mp.F.n, ng = mp.Gamma.n;
    for (ElemId x = 0; x < nf; ++x)
        for (ElemId g = 0; g < ng; ++g) {
            if (!datum.sig(mp, x, 0, g).is_zero() || !datum.sig(mp, 0, x, g).is_zero())
                throw std::invalid_argument("omega_from_sigma_tau: sigma not normalized");
        }
    for (ElemId g = 0; g < ng; ++g)
        for (ElemId x = 0; x < nf; ++x)
            if (!datum.ta(mp, g, 0, x).is_zero() || !datum.ta(mp, 0, g, x).is_zero())
                throw std::invalid_argument("omega_from_sigma_tau: tau not normalized");
    for (ElemId x = 0; x < nf; ++x)
        for (ElemId x2 = 0; x2 < nf; ++x2)
            if (!datum.sig(mp, x, x2, 0).is_zero())
                throw std::runtime_error(
                    "omega_from_sigma_tau: incompatible (sigma,tau): sigma_e is nonzero");
    for (ElemId g = 0; g < ng; ++g)
        for (ElemId g2 = 0; g2 < ng; ++g2)
            if (!datum.ta(mp, g, g2, 0).is_zero())
                throw std::runtime_error(
                    "omega_from_sigma_tau: incompatible (sigma,tau): tau_e is nonzero");

    Cochain3 w(bg.G);
    int n = bg.G.n;
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C) {
                ElemId g = A % ng;
                ElemId x2 = B / ng, g2 = B % ng;
                ElemId x3 = C / ng, g3 = C % ng;
                (void)g3;
                Phase p = datum.ta(mp, mp.tl(g, x2), g2, x3) +
                          datum.sig(mp, x2, mp.tr(g2, x3), g);
                w.set(p, A, B, C);
            }
    if (!w.is_normalized() || !is_cocycle3(w))
        throw std::runtime_error("omega_from_sigma_tau: incompatible (sigma,tau): not a 3-cocycle");
    return w;
}

// Schur-Zassenhaus at the Hopf level: coprime orders force w(sigma,tau) to
// be a coboundary and the exponent to collapse to exp G.
inline bool coprime_split_check(const MatchedPair& mp, const ExtensionDatum& datum) {
    if (std::gcd(mp.F.n, mp.Gamma.n) != 1)
        throw std::invalid_argument("coprime_split_check: |F| and |Gamma| are not coprime");
    Cochain3 w = omega_from_sigma_tau(mp, datum);
    if (!solve_coboundary3(w).solvable) return false;
    return exponent_via_pi(w) == group_exponent(w.group);
}

// Exhaustive search over compatible action pairs (unit constraints fixed,
// group axioms checked by construction). Intended for small orders only.
inline std::vector<MatchedPair> search_matched_pairs(const GroupTable& F, const GroupTable& Gamma,
                                                     int max_order = 8) {
    if (F.n * Gamma.n > max_order)
        throw std::invalid_argument("search_matched_pairs: order exceeds cap");
    int nf = F.n, ng = Gamma.n;
    std::vector<std::pair<int, int>> free_slots;  // (g, x), both nonidentity
    for (ElemId g = 1; g < ng; ++g)
        for (ElemId x = 1; x < nf; ++x) free_slots.push_back({g, x});
    size_t s = free_slots.size();
    std::vector<MatchedPair> found;
    std::vector<int> tr_choice(s, 0), tl_choice(s, 0);
    while (true) {
        MatchedPair mp;
        mp.F = F;
        mp.Gamma = Gamma;
        mp.act_on_F.assign(static_cast<size_t>(ng) * nf, 0);
        mp.act_on_Gamma.assign(static_cast<size_t>(ng) * nf, 0);
        for (ElemId g = 0; g < ng; ++g)
            for (ElemId x = 0; x < nf; ++x) {
                mp.act_on_F[static_cast<size_t>(g) * nf + x] = g == 0 ? x : 0;
                mp.act_on_Gamma[static_cast<size_t>(g) * nf + x] = x == 0 ? g : 0;
            }
        for (size_t i = 0; i < s; ++i) {
            auto [g, x] = free_slots[i];
            mp.act_on_F[static_cast<size_t>(g) * nf + x] = tr_choice[i];
            mp.act_on_Gamma[static_cast<size_t>(g) * nf + x] = tl_choice[i];
        }
        try {
            build_bicrossed(mp);
            found.push_back(std::move(mp));
        } catch (const std::exception&) {
        }
        // odometer over (tr, tl) choices
        size_t i = 0;
        for (; i < 2 * s; ++i) {
            if (i < s) {
                if (++tr_choice[i] < nf) break;
                tr_choice[i] = 0;
            } else {
                if (++tl_choice[i - s] < ng) break;
                tl_choice[i - s] = 0;
            }
        }
        if (i == 2 * s) break;
    }
    return found;
}

// Visits every datum whose free sigma entries have denominator den_sigma
// and free tau entries denominator den_tau (identity-indexed components
// stay zero). Returns early when the visitor returns false.
inline void for_each_datum(const MatchedPair& mp, long long den_sigma, long long den_tau,
                           const std::function<bool(const ExtensionDatum&)>& visit) {
    int nf = mp.F.n, ng = mp.Gamma.n;
    struct Slot {
        bool in_sigma;
        ElemId a, b, c;
    };
    std::vector<Slot> slots;
    for (ElemId x = 1; x < nf; ++x)
        for (ElemId x2 = 1; x2 < nf; ++x2)
            for (ElemId g = 1; g < ng; ++g) slots.push_back({true, x, x2, g});
    for (ElemId g = 1; g < ng; ++g)
        for (ElemId g2 = 1; g2 < ng; ++g2)
            for (ElemId x = 1; x < nf; ++x) slots.push_back({false, g, g2, x});
    std::vector<long long> choice(slots.size(), 0);
    while (true) {
        ExtensionDatum d = ExtensionDatum::trivial(mp);
        for (size_t i = 0; i < slots.size(); ++i) {
            const Slot& sl = slots[i];
            long long den = sl.in_sigma ? den_sigma : den_tau;
            Phase p(choice[i], den);
            if (sl.in_sigma)
                d.set_sigma(mp, sl.a, sl.b, sl.c, p);
            else
                d.set_tau(mp, sl.a, sl.b, sl.c, p);
        }
        if (!visit(d)) return;
        size_t i = 0;
        for (; i < slots.size(); ++i) {
            long long den = slots[i].in_sigma ? den_sigma : den_tau;
            if (++choice[i] < den) break;
            choice[i] = 0;
        }
        if (i == slots.size()) break;
    }
}

inline ExtensionDatum random_datum(const MatchedPair& mp, long long den, std::mt19937_64& rng) {
    ExtensionDatum d = ExtensionDatum::trivial(mp);
    std::uniform_int_distribution<long long> pick(0, den - 1);
    for (ElemId x = 1; x < mp.F.n; ++x)
        for (ElemId x2 = 1; x2 < mp.F.n; ++x2)
            for (ElemId g = 1; g < mp.Gamma.n; ++g)
                d.set_sigma(mp, x, x2, g, Phase(pick(rng), den));
    for (ElemId g = 1; g < mp.Gamma.n; ++g)
        for (ElemId g2 = 1; g2 < mp.Gamma.n; ++g2)
            for (ElemId x = 1; x < mp.F.n; ++x) d.set_tau(mp, g, g2, x, Phase(pick(rng), den));
    return d;
}

}  // namespace twistd
