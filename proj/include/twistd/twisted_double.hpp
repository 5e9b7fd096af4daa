#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistd/cochain.hpp"
#include "twistd/cohomology.hpp"

namespace twistd {

// Shared immutable data for one D^w(G): the group, the 3-cocycle, and an
// optional fault injected into theta (verification test hook).
struct Context {
    Cochain3 omega;
    Phase theta_fault{};

    const GroupTable& group() const { return omega.group; }

    // theta_g(x,y) = w(g,x,y) + w(x,y,(xy)^-1 g (xy)) - w(x, x^-1 g x, y)
    Phase theta(ElemId g, ElemId x, ElemId y) const {
        const GroupTable& G = group();
        ElemId xy = G.mul(x, y);
        Phase p = omega.at(g, x, y) + omega.at(x, y, G.conj(xy, g)) - omega.at(x, G.conj(x, g), y);
        if (!theta_fault.is_zero() && x != 0 && y != 0) p += theta_fault;
        return p;
    }

    // gamma_x(s,t) = w(s,t,x) + w(x, x^-1 s x, x^-1 t x) - w(s, x, x^-1 t x)
    Phase gamma(ElemId x, ElemId s, ElemId t) const {
        const GroupTable& G = group();
        return omega.at(s, t, x) + omega.at(x, G.conj(x, s), G.conj(x, t)) -
               omega.at(s, x, G.conj(x, t));
    }
};

struct MonomialClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OrderBoundExceeded : std::runtime_error {
    long long bound;
    explicit OrderBoundExceeded(long long b)
        : std::runtime_error("monomial order exceeds bound " + std::to_string(b)), bound(b) {}
};

// An element of D^w(G)^{tensor d} with at most one basis term e_{g_1} # x_1
// (x) ... (x) e_{g_d} # x_d per grade tuple (g_1..g_d). Every element the
// construction needs (beta, u, v, phi, R, R21R, group elements, their
// products, powers and coproducts) stays inside this class; operations that
// would leave it raise MonomialClassError instead of approximating.
struct Monomial {
    const Context* ctx = nullptr;
    int degree = 1;

    struct Term {
        uint64_t part = 0;
        Phase phase;
        bool operator==(const Term&) const = default;
    };
    std::map<uint64_t, Term> terms;

    static constexpr int kMaxDegree = 4;

    uint64_t encode(const std::array<ElemId, kMaxDegree>& ids) const {
        uint64_t n = static_cast<uint64_t>(ctx->group().n), key = 0;
        for (int i = degree - 1; i >= 0; --i) key = key * n + static_cast<uint64_t>(ids[static_cast<size_t>(i)]);
        return key;
    }
    std::array<ElemId, kMaxDegree> decode(uint64_t key) const {
        uint64_t n = static_cast<uint64_t>(ctx->group().n);
        std::array<ElemId, kMaxDegree> ids{};
        for (int i = 0; i < degree; ++i) {
            ids[static_cast<size_t>(i)] = static_cast<ElemId>(key % n);
            key /= n;
        }
        return ids;
    }

    bool operator==(const Monomial& o) const {
        return degree == o.degree && terms == o.terms;
    }
};

inline Monomial identity_monomial(const Context& ctx, int degree) {
    if (degree < 1 || degree > Monomial::kMaxDegree)
        throw std::invalid_argument("identity_monomial: bad degree");
    Monomial m;
    m.ctx = &ctx;
    m.degree = degree;
    int n = ctx.group().n;
    uint64_t total = 1;
    for (int i = 0; i < degree; ++i) total *= static_cast<uint64_t>(n);
    for (uint64_t k = 0; k < total; ++k) m.terms[k] = {0, Phase{}};
    return m;
}

// Single basis term c * e_g # x (degree 1).
inline Monomial basis_element(const Context& ctx, ElemId g, ElemId x, Phase phase = {}) {
    Monomial m;
    m.ctx = &ctx;
    m.degree = 1;
    std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
    gr[0] = g;
    pt[0] = x;
    m.terms[m.encode(gr)] = {m.encode(pt), phase};
    return m;
}

inline bool is_identity(const Monomial& A) {
    int n = A.ctx->group().n;
    uint64_t total = 1;
    for (int i = 0; i < A.degree; ++i) total *= static_cast<uint64_t>(n);
    if (A.terms.size() != total) return false;
    for (const auto& [g, t] : A.terms)
        if (t.part != 0 || !t.phase.is_zero()) return false;
    return true;
}

// (e_g # x)(e_h # y) = delta_{g, x h x^-1} theta_g(x, y) e_g # xy,
// componentwise over tensor slots.
inline Monomial mono_mul(const Monomial& A, const Monomial& B) {
    if (A.ctx != B.ctx || A.degree != B.degree)
        throw std::invalid_argument("mono_mul: context/degree mismatch");
    const Context& ctx = *A.ctx;
    const GroupTable& G = ctx.group();
    Monomial out;
    out.ctx = A.ctx;
    out.degree = A.degree;
    for (const auto& [gkey, at] : A.terms) {
        auto grade = A.decode(gkey);
        auto part = A.decode(at.part);
        std::array<ElemId, Monomial::kMaxDegree> h{};
        for (int i = 0; i < A.degree; ++i)
            h[static_cast<size_t>(i)] = G.conj(part[static_cast<size_t>(i)], grade[static_cast<size_t>(i)]);
        auto it = B.terms.find(A.encode(h));
        if (it == B.terms.end()) continue;
        auto bpart = B.decode(it->second.part);
        Phase phase = at.phase + it->second.phase;
        std::array<ElemId, Monomial::kMaxDegree> newpart{};
        for (int i = 0; i < A.degree; ++i) {
            phase += ctx.theta(grade[static_cast<size_t>(i)], part[static_cast<size_t>(i)],
                               bpart[static_cast<size_t>(i)]);
            newpart[static_cast<size_t>(i)] = G.mul(part[static_cast<size_t>(i)], bpart[static_cast<size_t>(i)]);
        }
        out.terms[gkey] = {A.encode(newpart), phase};
    }
    return out;
}

inline Monomial mono_pow(const Monomial& A, long long n) {
    if (n < 0) throw std::invalid_argument("mono_pow: negative exponent");
    Monomial r = identity_monomial(*A.ctx, A.degree);
    for (long long i = 0; i < n; ++i) r = mono_mul(r, A);
    return r;
}

// Least k <= bound with A^k = 1; exceeding the bound is a theorem-violation
// event for callers that supply a bound the theory guarantees.
inline long long mono_order(const Monomial& A, long long bound) {
    Monomial p = A;
    for (long long k = 1; k <= bound; ++k) {
        if (is_identity(p)) return k;
        p = mono_mul(p, A);
    }
    throw OrderBoundExceeded(bound);
}

// Comultiplication applied to one tensor slot (1-based):
// Delta(e_g # x) = sum_{st=g} gamma_x(s,t) e_s # x (x) e_t # x.
inline Monomial delta_at(const Monomial& A, int position) {
    if (position < 1 || position > A.degree)
        throw std::invalid_argument("delta_at: bad position");
    if (A.degree + 1 > Monomial::kMaxDegree) throw std::invalid_argument("delta_at: degree cap");
    const Context& ctx = *A.ctx;
    const GroupTable& G = ctx.group();
    Monomial out;
    out.ctx = A.ctx;
    out.degree = A.degree + 1;
    int pos = position - 1;
    for (const auto& [gkey, at] : A.terms) {
        auto grade = A.decode(gkey);
        auto part = A.decode(at.part);
        ElemId g = grade[static_cast<size_t>(pos)];
        ElemId x = part[static_cast<size_t>(pos)];
        for (ElemId s = 0; s < G.n; ++s) {
            ElemId t = G.mul(G.inverse(s), g);  // st = g
            std::array<ElemId, Monomial::kMaxDegree> ng{}, np{};
            for (int i = 0, o = 0; i < A.degree; ++i, ++o) {
                if (i == pos) {
                    ng[static_cast<size_t>(o)] = s;
                    np[static_cast<size_t>(o)] = x;
                    ++o;
                    ng[static_cast<size_t>(o)] = t;
                    np[static_cast<size_t>(o)] = x;
                } else {
                    ng[static_cast<size_t>(o)] = grade[static_cast<size_t>(i)];
                    np[static_cast<size_t>(o)] = part[static_cast<size_t>(i)];
                }
            }
            out.terms[out.encode(ng)] = {out.encode(np), at.phase + ctx.gamma(x, s, t)};
        }
    }
    return out;
}

// S(e_g # x) = theta_{g^-1}(x, x^-1)^-1 gamma_x(g, g^-1)^-1 e_{x^-1 g^-1 x} # x^-1,
// applied to the given tensor slot. Grade collisions leave the monomial
// class and are an explicit error.
inline Monomial slot_antipode(const Monomial& A, int position) {
    if (position < 1 || position > A.degree)
        throw std::invalid_argument("slot_antipode: bad position");
    const Context& ctx = *A.ctx;
    const GroupTable& G = ctx.group();
    Monomial out;
    out.ctx = A.ctx;
    out.degree = A.degree;
    int pos = position - 1;
    for (const auto& [gkey, at] : A.terms) {
        auto grade = A.decode(gkey);
        auto part = A.decode(at.part);
        ElemId g = grade[static_cast<size_t>(pos)];
        ElemId x = part[static_cast<size_t>(pos)];
        ElemId gi = G.inverse(g), xi = G.inverse(x);
        Phase phase = at.phase - ctx.theta(gi, x, xi) - ctx.gamma(x, g, gi);
        grade[static_cast<size_t>(pos)] = G.conj(x, gi);
        part[static_cast<size_t>(pos)] = xi;
        auto [it, fresh] = out.terms.emplace(out.encode(grade), Monomial::Term{out.encode(part), phase});
        (void)it;
        if (!fresh) throw MonomialClassError("antipode: grade collision");
    }
    return out;
}

inline Monomial antipode(const Monomial& A) {
    if (A.degree != 1) throw std::invalid_argument("antipode: degree 1 only");
    return slot_antipode(A, 1);
}

// epsilon(e_g # x) = delta_{g,e}; returns the scalar as a phase, or nullopt
// for the zero scalar.
inline std::optional<Phase> counit(const Monomial& A) {
    if (A.degree != 1) throw std::invalid_argument("counit: degree 1 only");
    auto it = A.terms.find(0);
    if (it == A.terms.end()) return std::nullopt;
    return it->second.phase;
}

// m21(a (x) b) = b*a on a degree-2 element; collisions on an output grade
// leave the monomial class.
inline Monomial m21(const Monomial& A) {
    if (A.degree != 2) throw std::invalid_argument("m21: degree 2 only");
    const Context& ctx = *A.ctx;
    const GroupTable& G = ctx.group();
    Monomial out;
    out.ctx = A.ctx;
    out.degree = 1;
    for (const auto& [gkey, at] : A.terms) {
        auto grade = A.decode(gkey);
        auto part = A.decode(at.part);
        ElemId g1 = grade[0], g2 = grade[1], x1 = part[0], x2 = part[1];
        if (G.conj(x2, g2) != g1) continue;  // delta gate of (e_{g2}#x2)(e_{g1}#x1)
        Phase phase = at.phase + ctx.theta(g2, x2, x1);
        std::array<ElemId, Monomial::kMaxDegree> ng{}, np{};
        ng[0] = g2;
        np[0] = G.mul(x2, x1);
        auto [it, fresh] = out.terms.emplace(out.encode(ng), Monomial::Term{out.encode(np), phase});
        (void)it;
        if (!fresh) throw MonomialClassError("m21: grade collision");
    }
    return out;
}

inline Monomial mono_inverse(const Monomial& A) {
    const Context& ctx = *A.ctx;
    const GroupTable& G = ctx.group();
    Monomial out;
    out.ctx = A.ctx;
    out.degree = A.degree;
    for (const auto& [gkey, at] : A.terms) {
        auto grade = A.decode(gkey);
        auto part = A.decode(at.part);
        Phase phase = -at.phase;
        std::array<ElemId, Monomial::kMaxDegree> ng{}, np{};
        for (int i = 0; i < A.degree; ++i) {
            ElemId g = grade[static_cast<size_t>(i)], x = part[static_cast<size_t>(i)];
            phase -= ctx.theta(g, x, G.inverse(x));
            ng[static_cast<size_t>(i)] = G.conj(x, g);
            np[static_cast<size_t>(i)] = G.inverse(x);
        }
        auto [it, fresh] = out.terms.emplace(out.encode(ng), Monomial::Term{out.encode(np), phase});
        (void)it;
        if (!fresh) throw MonomialClassError("mono_inverse: grade collision");
    }
    if (!is_identity(mono_mul(A, out)) || !is_identity(mono_mul(out, A)))
        throw MonomialClassError("mono_inverse: element is not invertible");
    return out;
}

enum class Canonical { Beta, U, V, VInv, Phi, PhiInv, R, R21, R21R };

inline Monomial group_element(const Context& ctx, ElemId x) {
    const GroupTable& G = ctx.group();
    Monomial m;
    m.ctx = &ctx;
    m.degree = 1;
    for (ElemId g = 0; g < G.n; ++g) {
        std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
        gr[0] = g;
        pt[0] = x;
        m.terms[m.encode(gr)] = {m.encode(pt), Phase{}};
    }
    return m;
}

inline Monomial canonical_element(const Context& ctx, Canonical kind) {
    const GroupTable& G = ctx.group();
    const Cochain3& w = ctx.omega;
    int n = G.n;
    Monomial m;
    m.ctx = &ctx;
    auto term1 = [&](ElemId g, ElemId x, Phase p) {
        std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
        gr[0] = g;
        pt[0] = x;
        m.terms[m.encode(gr)] = {m.encode(pt), p};
    };
    switch (kind) {
        case Canonical::Beta:
            m.degree = 1;
            for (ElemId g = 0; g < n; ++g) term1(g, 0, w.at(g, G.inverse(g), g));
            return m;
        case Canonical::U:
            m.degree = 1;
            for (ElemId g = 0; g < n; ++g)
                term1(g, G.inverse(g), w.at(g, G.inverse(g), g).times(-2));
            return m;
        case Canonical::V:
            m.degree = 1;
            for (ElemId g = 0; g < n; ++g) term1(g, G.inverse(g), -w.at(g, G.inverse(g), g));
            return m;
        case Canonical::VInv:
            m.degree = 1;
            for (ElemId g = 0; g < n; ++g) term1(g, g, Phase{});
            return m;
        case Canonical::Phi:
        case Canonical::PhiInv:
            m.degree = 3;
            for (ElemId a = 0; a < n; ++a)
                for (ElemId b = 0; b < n; ++b)
                    for (ElemId c = 0; c < n; ++c) {
                        std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
                        gr[0] = a;
                        gr[1] = b;
                        gr[2] = c;
                        Phase p = w.at(a, b, c);
                        m.terms[m.encode(gr)] = {m.encode(pt),
                                                 kind == Canonical::Phi ? -p : p};
                    }
            return m;
        case Canonical::R:
            m.degree = 2;
            for (ElemId g = 0; g < n; ++g)
                for (ElemId h = 0; h < n; ++h) {
                    std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
                    gr[0] = g;
                    gr[1] = h;
                    pt[0] = 0;
                    pt[1] = g;
                    m.terms[m.encode(gr)] = {m.encode(pt), Phase{}};
                }
            return m;
        case Canonical::R21:
            m.degree = 2;
            for (ElemId h = 0; h < n; ++h)
                for (ElemId g = 0; g < n; ++g) {
                    std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
                    gr[0] = h;
                    gr[1] = g;
                    pt[0] = g;
                    pt[1] = 0;
                    m.terms[m.encode(gr)] = {m.encode(pt), Phase{}};
                }
            return m;
        case Canonical::R21R:
            // grade (h,g) carries (g, g^-1 h g); the tests assert this
            // agrees with mono_mul(R21, R)
            m.degree = 2;
            for (ElemId h = 0; h < n; ++h)
                for (ElemId g = 0; g < n; ++g) {
                    std::array<ElemId, Monomial::kMaxDegree> gr{}, pt{};
                    gr[0] = h;
                    gr[1] = g;
                    pt[0] = g;
                    pt[1] = G.conj(g, h);
                    m.terms[m.encode(gr)] = {m.encode(pt), Phase{}};
                }
            return m;
    }
    throw std::invalid_argument("canonical_element: unknown kind");
}

// String dispatcher; parametrized kinds are "group:<element index>" and
// "identity:<degree>".
inline Monomial canonical_element(const Context& ctx, const std::string& kind) {
    if (kind == "beta") return canonical_element(ctx, Canonical::Beta);
    if (kind == "u") return canonical_element(ctx, Canonical::U);
    if (kind == "v") return canonical_element(ctx, Canonical::V);
    if (kind == "v_inv") return canonical_element(ctx, Canonical::VInv);
    if (kind == "phi") return canonical_element(ctx, Canonical::Phi);
    if (kind == "phi_inv") return canonical_element(ctx, Canonical::PhiInv);
    if (kind == "R") return canonical_element(ctx, Canonical::R);
    if (kind == "R21") return canonical_element(ctx, Canonical::R21);
    if (kind == "R21R") return canonical_element(ctx, Canonical::R21R);
    if (kind.rfind("group:", 0) == 0) {
        int x = std::stoi(kind.substr(6));
        if (x < 0 || x >= ctx.group().n)
            throw std::invalid_argument("canonical_element: group element out of range");
        return group_element(ctx, x);
    }
    if (kind.rfind("identity:", 0) == 0) return identity_monomial(ctx, std::stoi(kind.substr(9)));
    throw std::invalid_argument("canonical_element: unknown kind " + kind);
}

// Group-likes of D^w(G) are exactly the f # x with gamma_x = df.
inline bool is_group_like(const Monomial& A) {
    if (A.degree != 1) throw std::invalid_argument("is_group_like: degree 1 only");
    const Context& ctx = *A.ctx;
    const GroupTable& G = ctx.group();
    if (static_cast<int>(A.terms.size()) != G.n) return false;
    ElemId x = -1;
    std::vector<Phase> f(static_cast<size_t>(G.n));
    for (const auto& [gkey, t] : A.terms) {
        auto grade = A.decode(gkey);
        auto part = A.decode(t.part);
        if (x == -1) x = part[0];
        if (part[0] != x) return false;
        f[static_cast<size_t>(grade[0])] = t.phase;
    }
    for (ElemId s = 0; s < G.n; ++s)
        for (ElemId t = 0; t < G.n; ++t) {
            Phase df = f[static_cast<size_t>(s)] + f[static_cast<size_t>(t)] -
                       f[static_cast<size_t>(G.mul(s, t))];
            if (df != ctx.gamma(x, s, t)) return false;
        }
    return true;
}

}  // namespace twistd
