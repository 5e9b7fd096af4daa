#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistd {

using ElemId = int;

// A finite group materialized as a full Cayley table. The identity is
// always index 0; every constructor is expected to validate().
struct GroupTable {
    int n = 1;
    std::vector<ElemId> mult;  // row-major n*n, mult[a*n+b] = a*b
    std::vector<ElemId> inv;
    std::vector<std::string> names;

    int order() const { return n; }
    ElemId mul(ElemId a, ElemId b) const { return mult[static_cast<size_t>(a) * n + b]; }
    ElemId inverse(ElemId a) const { return inv[a]; }
    ElemId conj(ElemId x, ElemId g) const { return mul(mul(inv[x], g), x); }  // x^-1 g x

    const std::string& name(ElemId g) const { return names[g]; }

    bool same_structure(const GroupTable& o) const {
        return n == o.n && mult == o.mult;
    }

    void compute_inverses() {
        inv.assign(n, -1);
        for (ElemId a = 0; a < n; ++a) {
            for (ElemId b = 0; b < n; ++b) {
                if (mul(a, b) == 0 && mul(b, a) == 0) { inv[a] = b; break; }
            }
            if (inv[a] == -1) throw std::runtime_error("GroupTable: element without inverse");
        }
    }

    void default_names() {
        names.resize(n);
        for (int i = 0; i < n; ++i)
            if (names[i].empty()) names[i] = i == 0 ? "e" : "g" + std::to_string(i);
    }

    // Full invariant scan: identity at 0, Latin square, associativity, inverses.
    void validate(int max_order = 128) const {
        if (n < 1) throw std::runtime_error("GroupTable: empty group");
        if (n > max_order) throw std::runtime_error("GroupTable: order exceeds cap");
        if (static_cast<int>(mult.size()) != n * n) throw std::runtime_error("GroupTable: bad table size");
        for (ElemId v : mult)
            if (v < 0 || v >= n) throw std::runtime_error("GroupTable: entry out of range");
        for (ElemId a = 0; a < n; ++a)
            if (mul(0, a) != a || mul(a, 0) != a)
                throw std::runtime_error("GroupTable: index 0 is not an identity");
        std::vector<char> seen(n);
        for (ElemId a = 0; a < n; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (ElemId b = 0; b < n; ++b) seen[mul(a, b)] = 1;
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                throw std::runtime_error("GroupTable: row is not a permutation");
            std::fill(seen.begin(), seen.end(), 0);
            for (ElemId b = 0; b < n; ++b) seen[mul(b, a)] = 1;
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                throw std::runtime_error("GroupTable: column is not a permutation");
        }
        for (ElemId a = 0; a < n; ++a)
            for (ElemId b = 0; b < n; ++b)
                for (ElemId c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::runtime_error("GroupTable: not associative");
        if (static_cast<int>(inv.size()) != n) throw std::runtime_error("GroupTable: bad inverse table");
        for (ElemId a = 0; a < n; ++a)
            if (mul(a, inv[a]) != 0) throw std::runtime_error("GroupTable: wrong inverse");
    }
};

// Members are parent indices, sorted ascending; the identity (parent
// index 0) is always a member, so it is also the subgroup's index 0.
struct Subgroup {
    std::vector<ElemId> members;

    int order() const { return static_cast<int>(members.size()); }
    bool contains(ElemId g) const {
        return std::binary_search(members.begin(), members.end(), g);
    }
    int local_index(ElemId g) const {
        auto it = std::lower_bound(members.begin(), members.end(), g);
        if (it == members.end() || *it != g) throw std::runtime_error("Subgroup: not a member");
        return static_cast<int>(it - members.begin());
    }
    void validate(const GroupTable& G) const {
        if (members.empty() || members[0] != 0)
            throw std::runtime_error("Subgroup: missing identity");
        for (size_t i = 1; i < members.size(); ++i)
            if (members[i] <= members[i - 1] || members[i] >= G.n)
                throw std::runtime_error("Subgroup: members not sorted/in range");
        for (ElemId a : members)
            for (ElemId b : members)
                if (!contains(G.mul(a, b)))
                    throw std::runtime_error("Subgroup: not closed");
    }
};

inline GroupTable make_cyclic(int n) {
    if (n < 1) throw std::invalid_argument("make_cyclic: n must be >= 1");
    GroupTable t;
    t.n = n;
    t.mult.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.mult[static_cast<size_t>(i) * n + j] = (i + j) % n;
    t.compute_inverses();
    t.names.resize(n);
    for (int i = 0; i < n; ++i)
        t.names[i] = i == 0 ? "e" : (i == 1 ? "a" : "a^" + std::to_string(i));
    t.validate();
    return t;
}

inline std::string cycle_notation(const std::vector<int>& p) {
    std::string s;
    std::vector<char> done(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (done[i] || p[i] == static_cast<int>(i)) continue;
        s += "(";
        size_t j = i;
        bool first = true;
        while (!done[j]) {
            done[j] = 1;
            if (!first) s += " ";
            s += std::to_string(j);
            first = false;
            j = static_cast<size_t>(p[j]);
        }
        s += ")";
    }
    return s.empty() ? "()" : s;
}

// Enumerates the closure of the given permutations by breadth-first
// search from the identity (generator order as given), then builds the
// Cayley table. Element 0 is the identity permutation.
inline GroupTable from_permutations(const std::vector<std::vector<int>>& generators,
                                    size_t closure_cap = 100000) {
    size_t m = generators.empty() ? 1 : generators[0].size();
    for (const auto& g : generators) {
        if (g.size() != m) throw std::invalid_argument("from_permutations: mixed domain sizes");
        std::vector<char> hit(m, 0);
        for (int v : g) {
            if (v < 0 || v >= static_cast<int>(m) || hit[v])
                throw std::invalid_argument("from_permutations: not a bijection");
            hit[v] = 1;
        }
    }
    std::vector<int> identity(m);
    std::iota(identity.begin(), identity.end(), 0);

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems;
    std::queue<int> todo;
    index[identity] = 0;
    elems.push_back(identity);
    todo.push(0);
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(m);
        for (size_t i = 0; i < m; ++i) r[i] = p[static_cast<size_t>(q[i])];
        return r;
    };
    while (!todo.empty()) {
        int cur = todo.front();
        todo.pop();
        for (const auto& g : generators) {
            auto w = compose(elems[static_cast<size_t>(cur)], g);
            if (index.emplace(w, static_cast<int>(elems.size())).second) {
                elems.push_back(w);
                todo.push(static_cast<int>(elems.size()) - 1);
                if (elems.size() > closure_cap)
                    throw std::runtime_error("from_permutations: closure exceeds cap");
            }
        }
    }
    int n = static_cast<int>(elems.size());
    GroupTable t;
    t.n = n;
    t.mult.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto w = compose(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]);
            auto it = index.find(w);
            if (it == index.end()) throw std::runtime_error("from_permutations: closure not closed");
            t.mult[static_cast<size_t>(a) * n + b] = it->second;
        }
    t.compute_inverses();
    t.names.resize(n);
    for (int i = 0; i < n; ++i) t.names[i] = cycle_notation(elems[static_cast<size_t>(i)]);
    t.validate();
    return t;
}

// Componentwise product; indices are lexicographic, (a,b) -> a*|B| + b.
inline GroupTable direct_product(const GroupTable& A, const GroupTable& B) {
    int n = A.n * B.n;
    GroupTable t;
    t.n = n;
    t.mult.resize(static_cast<size_t>(n) * n);
    for (int a1 = 0; a1 < A.n; ++a1)
        for (int b1 = 0; b1 < B.n; ++b1)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2) {
                    int x = a1 * B.n + b1, y = a2 * B.n + b2;
                    t.mult[static_cast<size_t>(x) * n + y] = A.mul(a1, a2) * B.n + B.mul(b1, b2);
                }
    t.compute_inverses();
    t.names.resize(n);
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b)
            t.names[a * B.n + b] = "(" + A.names[a] + "|" + B.names[b] + ")";
    t.validate();
    return t;
}

inline Subgroup subgroup_generated(const GroupTable& G, const std::vector<ElemId>& gens) {
    std::set<ElemId> closure{0};
    for (ElemId g : gens) {
        if (g < 0 || g >= G.n) throw std::invalid_argument("subgroup_generated: bad element");
        closure.insert(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<ElemId> cur(closure.begin(), closure.end());
        for (ElemId a : cur)
            for (ElemId b : cur)
                if (closure.insert(G.mul(a, b)).second) grew = true;
    }
    Subgroup s;
    s.members.assign(closure.begin(), closure.end());
    s.validate(G);
    return s;
}

inline bool is_normal(const GroupTable& G, const Subgroup& N) {
    for (ElemId g = 0; g < G.n; ++g)
        for (ElemId x : N.members)
            if (!N.contains(G.mul(G.mul(g, x), G.inverse(g)))) return false;
    return true;
}

// Coset group plus projection map. The coset of the identity gets index 0;
// remaining cosets are ordered by their smallest member.
inline std::pair<GroupTable, std::vector<ElemId>> quotient(const GroupTable& G, const Subgroup& N) {
    N.validate(G);
    if (!is_normal(G, N)) throw std::runtime_error("quotient: subgroup is not normal");
    std::vector<int> coset_of(G.n, -1);
    std::vector<ElemId> reps;
    for (ElemId g = 0; g < G.n; ++g) {
        if (coset_of[g] != -1) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(g);
        for (ElemId x : N.members) coset_of[G.mul(g, x)] = id;
    }
    int q = static_cast<int>(reps.size());
    GroupTable t;
    t.n = q;
    t.mult.resize(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            t.mult[static_cast<size_t>(a) * q + b] = coset_of[G.mul(reps[a], reps[b])];
    t.compute_inverses();
    t.names.resize(q);
    for (int a = 0; a < q; ++a) t.names[a] = "[" + G.names[reps[a]] + "]";
    t.validate();
    return {std::move(t), std::vector<ElemId>(coset_of.begin(), coset_of.end())};
}

inline long long element_order(const GroupTable& G, ElemId g) {
    long long k = 1;
    ElemId x = g;
    while (x != 0) { x = G.mul(x, g); ++k; }
    return k;
}

inline long long group_exponent(const GroupTable& G) {
    long long e = 1;
    for (ElemId g = 0; g < G.n; ++g) e = std::lcm(e, element_order(G, g));
    return e;
}

inline std::vector<ElemId> intersect(const Subgroup& A, const Subgroup& B) {
    std::vector<ElemId> out;
    std::set_intersection(A.members.begin(), A.members.end(), B.members.begin(),
                          B.members.end(), std::back_inserter(out));
    return out;
}

inline bool is_exact_factorization(const GroupTable& G, const Subgroup& F, const Subgroup& Gamma) {
    return static_cast<long long>(F.order()) * Gamma.order() == G.n &&
           intersect(F, Gamma).size() == 1;
}

// Materialize a subgroup as a standalone group. Member order is the sorted
// parent order, so the identity stays at index 0.
inline GroupTable subgroup_table(const GroupTable& G, const Subgroup& S) {
    int m = S.order();
    GroupTable t;
    t.n = m;
    t.mult.resize(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            t.mult[static_cast<size_t>(i) * m + j] = S.local_index(G.mul(S.members[i], S.members[j]));
    t.compute_inverses();
    t.names.resize(m);
    for (int i = 0; i < m; ++i) t.names[i] = G.names[S.members[i]];
    t.validate();
    return t;
}

inline ElemId power(const GroupTable& G, ElemId g, long long k) {
    ElemId r = 0;
    long long m = element_order(G, g);
    k %= m;
    if (k < 0) k += m;
    for (long long i = 0; i < k; ++i) r = G.mul(r, g);
    return r;
}

}  // namespace twistd
