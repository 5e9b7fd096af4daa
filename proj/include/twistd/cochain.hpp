#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "twistd/group.hpp"
#include "twistd/phase.hpp"

namespace twistd {

// Normalized Phase-valued function on G^K (value 0 whenever an argument
// is the identity). Stores its own copy of the group; tables are tiny.
template <int K>
struct Cochain {
    static_assert(K >= 1 && K <= 3);
    GroupTable group;
    std::vector<Phase> values;  // dense, size n^K

    Cochain() = default;
    explicit Cochain(GroupTable g) : group(std::move(g)) {
        size_t sz = 1;
        for (int i = 0; i < K; ++i) sz *= static_cast<size_t>(group.n);
        values.assign(sz, Phase{});
    }

    size_t idx(ElemId a) const { return static_cast<size_t>(a); }
    size_t idx(ElemId a, ElemId b) const { return static_cast<size_t>(a) * group.n + b; }
    size_t idx(ElemId a, ElemId b, ElemId c) const {
        return (static_cast<size_t>(a) * group.n + b) * group.n + c;
    }

    template <class... Ids>
    const Phase& at(Ids... ids) const {
        static_assert(sizeof...(Ids) == K);
        return values[idx(ids...)];
    }
    template <class... Ids>
    void set(const Phase& p, Ids... ids) {
        static_assert(sizeof...(Ids) == K);
        values[idx(ids...)] = p;
    }

    bool is_normalized() const {
        int n = group.n;
        if constexpr (K == 1) {
            return values[0].is_zero();
        } else if constexpr (K == 2) {
            for (int a = 0; a < n; ++a)
                if (!values[idx(a, 0)].is_zero() || !values[idx(0, a)].is_zero()) return false;
            return true;
        } else {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (!values[idx(0, a, b)].is_zero() || !values[idx(a, 0, b)].is_zero() ||
                        !values[idx(a, b, 0)].is_zero())
                        return false;
            return true;
        }
    }

    Cochain scaled(long long k) const {
        Cochain r = *this;
        for (auto& p : r.values) p = p.times(k);
        return r;
    }
    Cochain operator+(const Cochain& o) const {
        Cochain r = *this;
        for (size_t i = 0; i < values.size(); ++i) r.values[i] = values[i] + o.values[i];
        return r;
    }
    Cochain operator-(const Cochain& o) const {
        Cochain r = *this;
        for (size_t i = 0; i < values.size(); ++i) r.values[i] = values[i] - o.values[i];
        return r;
    }
    bool operator==(const Cochain& o) const {
        return group.same_structure(o.group) && values == o.values;
    }
};

using Cochain1 = Cochain<1>;
using Cochain2 = Cochain<2>;
using Cochain3 = Cochain<3>;

// (df)(x,y) = f(x) + f(y) - f(xy)
inline Cochain2 coboundary(const Cochain1& f) {
    const GroupTable& G = f.group;
    Cochain2 d(G);
    for (ElemId x = 0; x < G.n; ++x)
        for (ElemId y = 0; y < G.n; ++y)
            d.set(f.at(x) + f.at(y) - f.at(G.mul(x, y)), x, y);
    return d;
}

// (dt)(x,y,z) = t(y,z) - t(xy,z) + t(x,yz) - t(x,y)
inline Cochain3 coboundary(const Cochain2& t) {
    const GroupTable& G = t.group;
    Cochain3 d(G);
    for (ElemId x = 0; x < G.n; ++x)
        for (ElemId y = 0; y < G.n; ++y)
            for (ElemId z = 0; z < G.n; ++z)
                d.set(t.at(y, z) - t.at(G.mul(x, y), z) + t.at(x, G.mul(y, z)) - t.at(x, y),
                      x, y, z);
    return d;
}

// Normalized bar 3-cocycle condition:
// w(y,z,u) - w(xy,z,u) + w(x,yz,u) - w(x,y,zu) + w(x,y,z) = 0 for all x,y,z,u.
inline bool is_cocycle3(const Cochain3& w) {
    const GroupTable& G = w.group;
    if (!w.is_normalized()) return false;
    for (ElemId x = 0; x < G.n; ++x)
        for (ElemId y = 0; y < G.n; ++y)
            for (ElemId z = 0; z < G.n; ++z)
                for (ElemId u = 0; u < G.n; ++u) {
                    Phase s = w.at(y, z, u) - w.at(G.mul(x, y), z, u) +
                              w.at(x, G.mul(y, z), u) - w.at(x, y, G.mul(z, u)) + w.at(x, y, z);
                    if (!s.is_zero()) return false;
                }
    return true;
}

// w(a^i, a^j, a^l) = zeta^(l*q_ij) with q_ij = 1 iff i+j >= n. Requires the
// table produced by make_cyclic (generator at index 1).
inline Cochain3 cyclic_standard_cocycle(const GroupTable& Cn, const Phase& zeta) {
    int n = Cn.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (Cn.mul(i, j) != (i + j) % n)
                throw std::invalid_argument("cyclic_standard_cocycle: table is not make_cyclic(n)");
    if (!zeta.times(n).is_zero())
        throw std::invalid_argument("cyclic_standard_cocycle: zeta is not an n-th root");
    Cochain3 w(Cn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j >= n)
                for (int l = 0; l < n; ++l) w.set(zeta.times(l), i, j, l);
    return w;
}

inline Cochain3 restrict3(const Cochain3& w, const Subgroup& H) {
    const GroupTable& G = w.group;
    H.validate(G);
    Cochain3 r(subgroup_table(G, H));
    int m = H.order();
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                r.set(w.at(H.members[a], H.members[b], H.members[c]), a, b, c);
    return r;
}

// Pullback along a surjective homomorphism given as proj[g] = image index.
inline Cochain3 inflate3(const Cochain3& w, const GroupTable& G, const std::vector<ElemId>& proj) {
    const GroupTable& Q = w.group;
    if (static_cast<int>(proj.size()) != G.n)
        throw std::invalid_argument("inflate3: projection size mismatch");
    std::vector<char> hit(Q.n, 0);
    for (ElemId g = 0; g < G.n; ++g) {
        if (proj[g] < 0 || proj[g] >= Q.n) throw std::invalid_argument("inflate3: bad image");
        hit[proj[g]] = 1;
    }
    for (int q = 0; q < Q.n; ++q)
        if (!hit[q]) throw std::invalid_argument("inflate3: projection not surjective");
    if (proj[0] != 0) throw std::invalid_argument("inflate3: projection not a homomorphism");
    for (ElemId a = 0; a < G.n; ++a)
        for (ElemId b = 0; b < G.n; ++b)
            if (proj[G.mul(a, b)] != Q.mul(proj[a], proj[b]))
                throw std::invalid_argument("inflate3: projection not a homomorphism");
    Cochain3 r(G);
    for (ElemId a = 0; a < G.n; ++a)
        for (ElemId b = 0; b < G.n; ++b)
            for (ElemId c = 0; c < G.n; ++c)
                r.set(w.at(proj[a], proj[b], proj[c]), a, b, c);
    return r;
}

// Random normalized 2-cochain with denominators dividing 2|G|.
inline Cochain2 random_cochain2(const GroupTable& G, std::mt19937_64& rng) {
    Cochain2 t(G);
    long long d = 2LL * G.n;
    std::uniform_int_distribution<long long> pick(0, d - 1);
    for (ElemId a = 1; a < G.n; ++a)
        for (ElemId b = 1; b < G.n; ++b) t.set(Phase(pick(rng), d), a, b);
    return t;
}

}  // namespace twistd
