#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "twistd/bicrossed.hpp"
#include "twistd/cochain.hpp"
#include "twistd/exponent.hpp"
#include "twistd/group.hpp"

namespace twistd {

inline GroupTable builtin_s3() {
    return from_permutations({{1, 0, 2}, {1, 2, 0}});  // (0 1), (0 1 2)
}

inline GroupTable builtin_d4() {
    return from_permutations({{1, 2, 3, 0}, {2, 1, 0, 3}});  // (0 1 2 3), (0 2)
}

// C7 : C3 acting on {0..6} by x -> x+1 and x -> 2x (mod 7).
inline GroupTable builtin_frobenius21() {
    return from_permutations({{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}});
}

// Extraspecial group of order 27 and exponent 3, via its regular
// representation: triples (a,b,c) over F_3 with
// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
inline GroupTable builtin_heisenberg27() {
    auto mulp = [](int u, int v) {
        int a1 = u / 9, b1 = (u / 3) % 3, c1 = u % 3;
        int a2 = v / 9, b2 = (v / 3) % 3, c2 = v % 3;
        return ((a1 + a2) % 3) * 9 + ((b1 + b2) % 3) * 3 + (c1 + c2 + a1 * b2) % 3;
    };
    auto left_translation = [&](int g) {
        std::vector<int> p(27);
        for (int v = 0; v < 27; ++v) p[static_cast<size_t>(v)] = mulp(g, v);
        return p;
    };
    return from_permutations({left_translation(9), left_translation(3)});  // x=(1,0,0), y=(0,1,0)
}

inline std::optional<GroupTable> builtin_group(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'c' && name.find('x') == std::string::npos) {
        int n = 0;
        for (size_t i = 1; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9') return std::nullopt;
            n = n * 10 + (name[i] - '0');
        }
        if (n >= 1 && n <= 128) return make_cyclic(n);
        return std::nullopt;
    }
    if (name == "c2xc2") return direct_product(make_cyclic(2), make_cyclic(2));
    if (name == "c2xc4") return direct_product(make_cyclic(2), make_cyclic(4));
    if (name == "c3xc3") return direct_product(make_cyclic(3), make_cyclic(3));
    if (name == "s3") return builtin_s3();
    if (name == "d4") return builtin_d4();
    if (name == "frobenius21") return builtin_frobenius21();
    if (name == "heisenberg27") return builtin_heisenberg27();
    return std::nullopt;
}

inline std::vector<std::vector<ElemId>> conjugacy_classes(const GroupTable& G) {
    std::vector<int> cls(static_cast<size_t>(G.n), -1);
    std::vector<std::vector<ElemId>> classes;
    for (ElemId g = 0; g < G.n; ++g) {
        if (cls[static_cast<size_t>(g)] != -1) continue;
        std::vector<ElemId> orbit;
        for (ElemId x = 0; x < G.n; ++x) {
            ElemId c = G.conj(x, g);
            if (cls[static_cast<size_t>(c)] == -1) {
                cls[static_cast<size_t>(c)] = static_cast<int>(classes.size());
                orbit.push_back(c);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        classes.push_back(std::move(orbit));
    }
    return classes;
}

// All normal subgroups (unions of conjugacy classes closed under the
// product), in a deterministic order.
inline std::vector<Subgroup> normal_subgroups(const GroupTable& G) {
    auto classes = conjugacy_classes(G);  // classes[0] = {e}
    size_t k = classes.size() - 1;
    if (k > 20) throw std::runtime_error("normal_subgroups: too many conjugacy classes");
    std::vector<Subgroup> out;
    for (uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        std::vector<ElemId> members = {0};
        for (size_t i = 0; i < k; ++i)
            if (mask & (1ULL << i))
                members.insert(members.end(), classes[i + 1].begin(), classes[i + 1].end());
        std::sort(members.begin(), members.end());
        if (static_cast<int>(members.size()) > G.n || G.n % static_cast<int>(members.size()) != 0)
            continue;
        Subgroup s;
        s.members = std::move(members);
        bool closed = true;
        for (ElemId a : s.members) {
            for (ElemId b : s.members)
                if (!s.contains(G.mul(a, b))) {
                    closed = false;
                    break;
                }
            if (!closed) break;
        }
        if (closed) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.members < b.members; });
    return out;
}

// Maps a cyclic group's indices to exponents of its smallest generator.
inline std::optional<std::vector<int>> cyclic_relabel(const GroupTable& Q) {
    for (ElemId h = 0; h < Q.n; ++h) {
        if (element_order(Q, h) != Q.n) continue;
        std::vector<int> expo(static_cast<size_t>(Q.n));
        ElemId cur = 0;
        for (int k = 0; k < Q.n; ++k) {
            expo[static_cast<size_t>(cur)] = k;
            cur = Q.mul(cur, h);
        }
        return expo;
    }
    return std::nullopt;
}

struct CyclicQuotient {
    Subgroup kernel;
    std::vector<ElemId> proj;  // G -> C_m (make_cyclic labeling)
    int m = 1;
};

// Normal subgroups of index m whose quotient is cyclic, with the projection
// rewritten onto make_cyclic(m).
inline std::vector<CyclicQuotient> cyclic_quotients(const GroupTable& G, int m) {
    std::vector<CyclicQuotient> out;
    if (m < 1 || G.n % m != 0) return out;
    for (const Subgroup& N : normal_subgroups(G)) {
        if (N.order() != G.n / m) continue;
        auto [Q, proj] = quotient(G, N);
        auto relabel = cyclic_relabel(Q);
        if (!relabel) continue;
        CyclicQuotient cq;
        cq.kernel = N;
        cq.m = m;
        cq.proj.resize(static_cast<size_t>(G.n));
        for (ElemId g = 0; g < G.n; ++g)
            cq.proj[static_cast<size_t>(g)] = (*relabel)[static_cast<size_t>(proj[static_cast<size_t>(g)])];
        out.push_back(std::move(cq));
    }
    return out;
}

struct Instance {
    std::string name;
    Context ctx;
    std::optional<FiberData> fiber;
};

inline Instance instance_cyclic(int n, const Phase& zeta) {
    GroupTable G = make_cyclic(n);
    Cochain3 w = cyclic_standard_cocycle(G, zeta);
    return {"cyclic:" + std::to_string(n) + " zeta:" + zeta.str(), Context{std::move(w)}, std::nullopt};
}

inline Instance instance_trivial(const std::string& gname, GroupTable G) {
    Cochain3 w(std::move(G));
    return {"trivial:" + gname, Context{std::move(w)}, std::nullopt};
}

inline Instance instance_inflated(const std::string& gname, const GroupTable& G, int m,
                                  const Phase& zeta, int which = 0) {
    auto quots = cyclic_quotients(G, m);
    if (which < 0 || which >= static_cast<int>(quots.size()))
        throw std::invalid_argument("instance_inflated: no such cyclic quotient");
    Cochain3 wq = cyclic_standard_cocycle(make_cyclic(m), zeta);
    Cochain3 w = inflate3(wq, G, quots[static_cast<size_t>(which)].proj);
    std::string name = "inflated:" + gname + ":" + std::to_string(m) + ":" + zeta.str();
    if (which > 0) name += ":q" + std::to_string(which);
    return {std::move(name), Context{std::move(w)}, std::nullopt};
}

// (C2, C3) with trivial |> and <| by inversion; builds S3.
inline MatchedPair matched_pair_s3() {
    MatchedPair mp;
    mp.F = make_cyclic(2);
    mp.Gamma = make_cyclic(3);
    mp.act_on_F.assign(static_cast<size_t>(mp.Gamma.n) * mp.F.n, 0);
    mp.act_on_Gamma.assign(static_cast<size_t>(mp.Gamma.n) * mp.F.n, 0);
    for (ElemId g = 0; g < mp.Gamma.n; ++g)
        for (ElemId x = 0; x < mp.F.n; ++x) {
            mp.act_on_F[static_cast<size_t>(g) * mp.F.n + x] = x;
            mp.act_on_Gamma[static_cast<size_t>(g) * mp.F.n + x] =
                x == 0 ? g : mp.Gamma.inverse(g);
        }
    return mp;
}

inline MatchedPair matched_pair_trivial(GroupTable F, GroupTable Gamma) {
    MatchedPair mp;
    mp.F = std::move(F);
    mp.Gamma = std::move(Gamma);
    mp.act_on_F.resize(static_cast<size_t>(mp.Gamma.n) * mp.F.n);
    mp.act_on_Gamma.resize(static_cast<size_t>(mp.Gamma.n) * mp.F.n);
    for (ElemId g = 0; g < mp.Gamma.n; ++g)
        for (ElemId x = 0; x < mp.F.n; ++x) {
            mp.act_on_F[static_cast<size_t>(g) * mp.F.n + x] = x;
            mp.act_on_Gamma[static_cast<size_t>(g) * mp.F.n + x] = g;
        }
    return mp;
}

inline Instance instance_bicrossed(const std::string& label, const MatchedPair& mp,
                                   const ExtensionDatum& datum) {
    BicrossedGroup bg = build_bicrossed(mp);
    Cochain3 w = omega_from_sigma_tau(mp, datum);
    Instance inst{"bicrossed:" + label, Context{std::move(w)},
                  FiberData{bg.F_image, bg.Gamma_image}};
    return inst;
}

struct CorpusOptions {
    uint64_t seed = 12345;
    int bicrossed_samples = 3;  // accepted non-trivial data per matched pair
};

// The desk-scale verification corpus: all cyclic twists up to order 9,
// inflated cocycles on the abelian/dihedral/Frobenius/Heisenberg groups,
// and bicrossed instances with fiber-functor data.
inline std::vector<Instance> default_corpus(const CorpusOptions& opts = {}) {
    std::vector<Instance> out;
    for (int n = 1; n <= 9; ++n)
        for (int k = 0; k < n; ++k) out.push_back(instance_cyclic(n, Phase(k, n)));

    auto add_inflations = [&out](const std::string& gname, const GroupTable& G) {
        out.push_back(instance_trivial(gname, G));
        for (int m = 2; m <= G.n; ++m) {
            if (G.n % m != 0) continue;
            auto quots = cyclic_quotients(G, m);
            for (int which = 0; which < static_cast<int>(quots.size()); ++which)
                for (int k = 1; k < m; ++k)
                    out.push_back(instance_inflated(gname, G, m, Phase(k, m), which));
        }
    };
    add_inflations("c2xc2", direct_product(make_cyclic(2), make_cyclic(2)));
    add_inflations("c2xc4", direct_product(make_cyclic(2), make_cyclic(4)));
    add_inflations("c3xc3", direct_product(make_cyclic(3), make_cyclic(3)));
    add_inflations("s3", builtin_s3());
    add_inflations("d4", builtin_d4());
    add_inflations("frobenius21", builtin_frobenius21());
    add_inflations("heisenberg27", builtin_heisenberg27());

    std::mt19937_64 rng(opts.seed);
    // Enumerate the accepted (sigma, tau) grid exhaustively at the given
    // denominators and keep seeded picks; rejection sampling misses the
    // accepted set when the actions are nontrivial.
    auto add_bicrossed = [&](const std::string& label, const MatchedPair& mp, long long den_sigma,
                             long long den_tau) {
        out.push_back(instance_bicrossed(label + ":trivial", mp, ExtensionDatum::trivial(mp)));
        std::vector<ExtensionDatum> accepted;
        for_each_datum(mp, den_sigma, den_tau, [&](const ExtensionDatum& d) {
            bool trivial_datum = true;
            for (const Phase& p : d.sigma)
                if (!p.is_zero()) trivial_datum = false;
            for (const Phase& p : d.tau)
                if (!p.is_zero()) trivial_datum = false;
            if (trivial_datum) return true;
            try {
                omega_from_sigma_tau(mp, d);
                accepted.push_back(d);
            } catch (const std::runtime_error&) {
            }
            return true;
        });
        for (int k = 0; k < opts.bicrossed_samples && !accepted.empty(); ++k) {
            size_t pick = std::uniform_int_distribution<size_t>(0, accepted.size() - 1)(rng);
            out.push_back(instance_bicrossed(label + ":sample" + std::to_string(k), mp,
                                             accepted[pick]));
            accepted.erase(accepted.begin() + static_cast<long>(pick));
        }
    };
    add_bicrossed("s3", matched_pair_s3(), 2, 3);

    // order-8 matched pairs from the exhaustive search, deduplicated by the
    // order multiset of the built group (a cheap isomorphism proxy)
    {
        auto pairs = search_matched_pairs(make_cyclic(2), make_cyclic(4));
        auto pairs2 = search_matched_pairs(make_cyclic(2),
                                           direct_product(make_cyclic(2), make_cyclic(2)));
        pairs.insert(pairs.end(), pairs2.begin(), pairs2.end());
        std::set<std::vector<long long>> seen;
        int label_idx = 0;
        for (const auto& mp : pairs) {
            BicrossedGroup bg = build_bicrossed(mp);
            std::vector<long long> sig{mp.F.n};
            for (ElemId g = 0; g < bg.G.n; ++g) sig.push_back(element_order(bg.G, g));
            std::sort(sig.begin(), sig.end());
            if (!seen.insert(sig).second) continue;
            add_bicrossed("order8p" + std::to_string(label_idx), mp, 2, 2);
            ++label_idx;
        }
    }
    return out;
}

struct D4SearchResult {
    int accepted = 0;       // distinct accepted cocycles examined
    long long best_exp = 0;
    std::string witness;    // description of a maximizing instance
};

// Exploratory search for a cocycle on a D4-type group with
// exp D^w(G) = 8 > exp G = 4: inflations on D4 itself, then bicrossed
// (sigma, tau) data over the order-8 matched pairs whose group is
// nonabelian. Absence of a witness is a finding, not a failure.
inline D4SearchResult d4_exponent_search(uint64_t seed, int random_budget = 2000) {
    D4SearchResult res;
    std::set<std::vector<Phase>> seen;
    auto consider = [&](const Cochain3& w, const std::string& label) {
        if (!seen.insert(w.values).second) return;
        ++res.accepted;
        long long e = exponent_via_pi(w);
        if (e > res.best_exp) {
            res.best_exp = e;
            res.witness = label;
        }
    };

    GroupTable d4 = builtin_d4();
    for (int m = 2; m <= 8; ++m) {
        if (8 % m != 0) continue;
        auto quots = cyclic_quotients(d4, m);
        for (int which = 0; which < static_cast<int>(quots.size()); ++which)
            for (int k = 1; k < m; ++k) {
                Cochain3 wq = cyclic_standard_cocycle(make_cyclic(m), Phase(k, m));
                consider(inflate3(wq, d4, quots[static_cast<size_t>(which)].proj),
                         "inflated:d4:" + std::to_string(m) + ":" + Phase(k, m).str() + ":q" +
                             std::to_string(which));
            }
    }

    auto pairs = search_matched_pairs(make_cyclic(2), make_cyclic(4));
    auto pairs2 = search_matched_pairs(make_cyclic(2),
                                       direct_product(make_cyclic(2), make_cyclic(2)));
    pairs.insert(pairs.end(), pairs2.begin(), pairs2.end());
    std::mt19937_64 rng(seed);
    int pair_idx = -1;
    for (const auto& mp : pairs) {
        ++pair_idx;
        BicrossedGroup bg = build_bicrossed(mp);
        bool abelian = true;
        for (ElemId a = 0; a < bg.G.n && abelian; ++a)
            for (ElemId b = 0; b < bg.G.n; ++b)
                if (bg.G.mul(a, b) != bg.G.mul(b, a)) {
                    abelian = false;
                    break;
                }
        if (abelian || group_exponent(bg.G) != 4) continue;
        auto datum_label = [&](const ExtensionDatum& d) {
            std::string s = "bicrossed:pair" + std::to_string(pair_idx) + " sigma{";
            for (ElemId x = 1; x < mp.F.n; ++x)
                for (ElemId x2 = 1; x2 < mp.F.n; ++x2)
                    for (ElemId g = 1; g < mp.Gamma.n; ++g) {
                        Phase p = d.sig(mp, x, x2, g);
                        if (!p.is_zero())
                            s += "[" + std::to_string(x) + "," + std::to_string(x2) + "," +
                                 std::to_string(g) + "]=" + p.str() + " ";
                    }
            s += "} tau{";
            for (ElemId g = 1; g < mp.Gamma.n; ++g)
                for (ElemId g2 = 1; g2 < mp.Gamma.n; ++g2)
                    for (ElemId x = 1; x < mp.F.n; ++x) {
                        Phase p = d.ta(mp, g, g2, x);
                        if (!p.is_zero())
                            s += "[" + std::to_string(g) + "," + std::to_string(g2) + "," +
                                 std::to_string(x) + "]=" + p.str() + " ";
                    }
            return s + "}";
        };
        auto try_datum = [&](const ExtensionDatum& d) {
            if (res.best_exp >= 8) return false;
            try {
                Cochain3 w = omega_from_sigma_tau(mp, d);
                consider(w, datum_label(d));
            } catch (const std::runtime_error&) {
            }
            return true;
        };
        for_each_datum(mp, 2, 2, try_datum);
        for_each_datum(mp, 4, 2, try_datum);
        for (int s = 0; s < random_budget && res.best_exp < 8; ++s) {
            ExtensionDatum d = random_datum(mp, 4, rng);
            try {
                consider(omega_from_sigma_tau(mp, d), datum_label(d));
            } catch (const std::runtime_error&) {
            }
        }
        if (res.best_exp >= 8) break;
    }
    return res;
}

}  // namespace twistd
