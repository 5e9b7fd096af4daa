#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twistd/cochain.hpp"
#include "twistd/snf.hpp"

namespace twistd {

template <int K>
struct CoboundaryCertificate {
    bool solvable = false;
    std::optional<Cochain<K>> witness;  // d(witness) == target, exactly
    int obstruction_row = -1;
};

namespace detail {

inline long long mpz_mod_ll(const mpz_class& c, long long m) {
    mpz_class mm = static_cast<long>(m);  // LP64: long carries the full value
    mpz_class r = c % mm;
    if (r < 0) r += mm;
    if (!r.fits_slong_p()) throw std::overflow_error("mpz_mod_ll");
    return r.get_si();
}

// w_i += c * w_j on phases, with c reduced modulo the denominator first.
inline void phase_addmul(Phase& wi, const Phase& wj, const mpz_class& c) {
    wi += wj.times(mpz_mod_ll(c, wj.den));
}

inline void replay_row_ops(const std::vector<RowOp>& ops, std::vector<Phase>& w) {
    for (const auto& op : ops) {
        switch (op.kind) {
            case RowOp::Swap: std::swap(w[op.i], w[op.j]); break;
            case RowOp::Negate: w[op.i] = -w[op.i]; break;
            case RowOp::AddMul: phase_addmul(w[op.i], w[op.j], op.c); break;
        }
    }
}

}  // namespace detail

// Exact solver for d(t) = target over normalized K-cochains, K = 1 or 2.
// The integer system A*t = w (mod 1) is reduced once per group by a
// Smith-style diagonalization; the coefficient group Q/Z is divisible, so
// a diagonal row d*y = c is always solvable and only the zero rows can
// obstruct. Reusable across targets on the same group.
template <int K>
class CoboundarySolver {
    static_assert(K == 1 || K == 2);

public:
    explicit CoboundarySolver(GroupTable g) : G_(std::move(g)) {
        const int n = G_.n;
        int m = 1, r = 1;
        for (int i = 0; i < K; ++i) m *= n - 1;
        for (int i = 0; i < K + 1; ++i) r *= n - 1;
        cols_ = m;
        rows_ = r;
        BigMat A(rows_, cols_);
        if constexpr (K == 1) {
            // row (x,y): f(x) + f(y) - f(xy)
            for (ElemId x = 1; x < n; ++x)
                for (ElemId y = 1; y < n; ++y) {
                    int row = (x - 1) * (n - 1) + (y - 1);
                    A.at(row, x - 1) += 1;
                    A.at(row, y - 1) += 1;
                    ElemId xy = G_.mul(x, y);
                    if (xy != 0) A.at(row, xy - 1) -= 1;
                }
        } else {
            // row (x,y,z): t(y,z) - t(xy,z) + t(x,yz) - t(x,y)
            auto col = [n](ElemId a, ElemId b) { return (a - 1) * (n - 1) + (b - 1); };
            for (ElemId x = 1; x < n; ++x)
                for (ElemId y = 1; y < n; ++y)
                    for (ElemId z = 1; z < n; ++z) {
                        int row = ((x - 1) * (n - 1) + (y - 1)) * (n - 1) + (z - 1);
                        A.at(row, col(y, z)) += 1;
                        ElemId xy = G_.mul(x, y);
                        if (xy != 0) A.at(row, col(xy, z)) -= 1;
                        ElemId yz = G_.mul(y, z);
                        if (yz != 0) A.at(row, col(x, yz)) += 1;
                        A.at(row, col(x, y)) -= 1;
                    }
        }
        dg_ = diagonalize(std::move(A), true);
    }

    const GroupTable& group() const { return G_; }

    CoboundaryCertificate<K> solve(const Cochain<K + 1>& target) const {
        if (!target.group.same_structure(G_))
            throw std::invalid_argument("CoboundarySolver: target group mismatch");
        if (!target.is_normalized())
            throw std::invalid_argument("CoboundarySolver: target not normalized");
        const int n = G_.n;
        std::vector<Phase> w(rows_);
        if constexpr (K == 1) {
            for (ElemId x = 1; x < n; ++x)
                for (ElemId y = 1; y < n; ++y) w[(x - 1) * (n - 1) + (y - 1)] = target.at(x, y);
        } else {
            for (ElemId x = 1; x < n; ++x)
                for (ElemId y = 1; y < n; ++y)
                    for (ElemId z = 1; z < n; ++z)
                        w[((x - 1) * (n - 1) + (y - 1)) * (n - 1) + (z - 1)] = target.at(x, y, z);
        }
        detail::replay_row_ops(dg_.row_ops, w);

        CoboundaryCertificate<K> cert;
        int rank = static_cast<int>(dg_.diag.size());
        for (int i = rank; i < rows_; ++i) {
            if (!w[i].is_zero()) {
                cert.solvable = false;
                cert.obstruction_row = i;
                return cert;
            }
        }
        std::vector<Phase> y(cols_);
        for (int i = 0; i < rank && i < cols_; ++i) {
            const mpz_class& d = dg_.diag[static_cast<size_t>(i)];
            if (!d.fits_slong_p()) throw std::overflow_error("CoboundarySolver: huge divisor");
            y[i] = w[i].divided_by(d.get_si());
        }
        Cochain<K> wit(G_);
        for (int j = 0; j < cols_; ++j) {
            Phase t;
            for (int i = 0; i < cols_; ++i) {
                if (y[i].is_zero()) continue;
                detail::phase_addmul(t, y[i], dg_.V[static_cast<size_t>(j)][static_cast<size_t>(i)]);
            }
            if constexpr (K == 1) {
                wit.set(t, j + 1);
            } else {
                wit.set(t, j / (n - 1) + 1, j % (n - 1) + 1);
            }
        }
        if (!(coboundary(wit) == target))
            throw std::logic_error("CoboundarySolver: witness re-check failed");
        cert.solvable = true;
        cert.witness = std::move(wit);
        return cert;
    }

private:
    GroupTable G_;
    int rows_ = 0, cols_ = 0;
    Diagonalization dg_;
};

namespace detail {

// One-shot sparse solve of A t = w (mod 1): row-echelon reduction with the
// right-hand side carried along. The coefficient group is divisible, so
// every pivot row back-substitutes and only empty rows can obstruct. Used
// for groups too large for the cached dense SNF route.
struct SparseSolveResult {
    bool solvable = false;
    std::vector<Phase> solution;
    int obstruction_row = -1;
};

inline SparseSolveResult sparse_solve_mod1(std::vector<SparseRow> rows, std::vector<Phase> rhs,
                                           int cols) {
    std::vector<int> active(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) active[i] = static_cast<int>(i);
    std::vector<std::pair<SparseRow, Phase>> pivot_of(static_cast<size_t>(cols));
    std::vector<char> has_pivot(static_cast<size_t>(cols), 0);

    for (int j = 0; j < cols; ++j) {
        std::vector<int> sel;
        for (int r : active)
            if (!rows[static_cast<size_t>(r)].empty() &&
                rows[static_cast<size_t>(r)].front().first == j)
                sel.push_back(r);
        if (sel.empty()) continue;
        while (sel.size() > 1) {
            size_t best = 0;
            for (size_t i = 1; i < sel.size(); ++i) {
                long long a = rows[static_cast<size_t>(sel[i])].front().second;
                long long b = rows[static_cast<size_t>(sel[best])].front().second;
                if (std::llabs(a) < std::llabs(b)) best = i;
            }
            std::swap(sel[0], sel[best]);
            const SparseRow& prow = rows[static_cast<size_t>(sel[0])];
            long long pv = prow.front().second;
            std::vector<int> keep{sel[0]};
            for (size_t i = 1; i < sel.size(); ++i) {
                int r = sel[i];
                long long q = snf_detail::floordiv(rows[static_cast<size_t>(r)].front().second, pv);
                snf_detail::row_addmul(rows[static_cast<size_t>(r)], prow, -q);
                rhs[static_cast<size_t>(r)] += rhs[static_cast<size_t>(sel[0])].times(-q);
                if (!rows[static_cast<size_t>(r)].empty() &&
                    rows[static_cast<size_t>(r)].front().first == j)
                    keep.push_back(r);
            }
            sel = std::move(keep);
        }
        int p = sel[0];
        has_pivot[static_cast<size_t>(j)] = 1;
        pivot_of[static_cast<size_t>(j)] = {std::move(rows[static_cast<size_t>(p)]),
                                            rhs[static_cast<size_t>(p)]};
        rows[static_cast<size_t>(p)].clear();
        active.erase(std::find(active.begin(), active.end(), p));
    }

    SparseSolveResult res;
    for (int r : active) {
        if (!rows[static_cast<size_t>(r)].empty())
            throw std::logic_error("sparse_solve_mod1: unprocessed row");
        if (!rhs[static_cast<size_t>(r)].is_zero()) {
            res.solvable = false;
            res.obstruction_row = r;
            return res;
        }
    }
    res.solution.assign(static_cast<size_t>(cols), Phase{});
    for (int j = cols - 1; j >= 0; --j) {
        if (!has_pivot[static_cast<size_t>(j)]) continue;
        const auto& [prow, pw] = pivot_of[static_cast<size_t>(j)];
        Phase s = pw;
        for (size_t i = 1; i < prow.size(); ++i) {
            const Phase& tk = res.solution[static_cast<size_t>(prow[i].first)];
            if (tk.is_zero()) continue;
            s -= tk.times(prow[i].second);
        }
        long long d = prow.front().second;
        if (d < 0) {
            s = -s;
            d = -d;
        }
        res.solution[static_cast<size_t>(j)] = s.divided_by(d);
    }
    res.solvable = true;
    return res;
}

template <int K>
CoboundaryCertificate<K> sparse_coboundary_solve(const Cochain<K + 1>& target) {
    const GroupTable& G = target.group;
    const int n = G.n;
    auto pack = [](std::vector<std::pair<int, long long>> entries) {
        std::sort(entries.begin(), entries.end());
        SparseRow row;
        for (auto& [c, v] : entries) {
            if (!row.empty() && row.back().first == c)
                row.back().second += v;
            else
                row.push_back({c, v});
        }
        row.erase(std::remove_if(row.begin(), row.end(), [](auto& e) { return e.second == 0; }),
                  row.end());
        return row;
    };
    std::vector<SparseRow> rows;
    std::vector<Phase> rhs;
    int cols;
    if constexpr (K == 1) {
        cols = n - 1;
        for (ElemId x = 1; x < n; ++x)
            for (ElemId y = 1; y < n; ++y) {
                std::vector<std::pair<int, long long>> e{{x - 1, 1}, {y - 1, 1}};
                ElemId xy = G.mul(x, y);
                if (xy != 0) e.push_back({xy - 1, -1});
                rows.push_back(pack(std::move(e)));
                rhs.push_back(target.at(x, y));
            }
    } else {
        cols = (n - 1) * (n - 1);
        auto col = [n](ElemId a, ElemId b) { return (a - 1) * (n - 1) + (b - 1); };
        for (ElemId x = 1; x < n; ++x)
            for (ElemId y = 1; y < n; ++y)
                for (ElemId z = 1; z < n; ++z) {
                    std::vector<std::pair<int, long long>> e{{col(y, z), 1}, {col(x, y), -1}};
                    ElemId xy = G.mul(x, y);
                    if (xy != 0) e.push_back({col(xy, z), -1});
                    ElemId yz = G.mul(y, z);
                    if (yz != 0) e.push_back({col(x, yz), 1});
                    rows.push_back(pack(std::move(e)));
                    rhs.push_back(target.at(x, y, z));
                }
    }
    auto sol = sparse_solve_mod1(std::move(rows), std::move(rhs), cols);
    CoboundaryCertificate<K> cert;
    if (!sol.solvable) {
        cert.obstruction_row = sol.obstruction_row;
        return cert;
    }
    Cochain<K> wit(G);
    for (int j = 0; j < cols; ++j) {
        if constexpr (K == 1)
            wit.set(sol.solution[static_cast<size_t>(j)], j + 1);
        else
            wit.set(sol.solution[static_cast<size_t>(j)], j / (n - 1) + 1, j % (n - 1) + 1);
    }
    if (!(coboundary(wit) == target))
        throw std::logic_error("sparse_coboundary_solve: witness re-check failed");
    cert.solvable = true;
    cert.witness = std::move(wit);
    return cert;
}

}  // namespace detail

// Dispatch: the cached dense SNF route for small groups (reused across
// targets), the sparse one-shot echelon route above the threshold.
template <int K>
CoboundaryCertificate<K - 1> solve_coboundary(const Cochain<K>& target) {
    static_assert(K == 2 || K == 3);
    if (target.group.n <= 14) {
        CoboundarySolver<K - 1> solver(target.group);
        return solver.solve(target);
    }
    return detail::sparse_coboundary_solve<K - 1>(target);
}

inline CoboundaryCertificate<1> solve_coboundary2(const Cochain2& target) {
    return solve_coboundary<2>(target);
}
inline CoboundaryCertificate<2> solve_coboundary3(const Cochain3& target) {
    return solve_coboundary<3>(target);
}

inline std::vector<long long> divisors_of(long long n) {
    std::vector<long long> d;
    for (long long k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

// Cohomological order e(w): least k with k*w a coboundary. The class order
// divides |G| because |G| annihilates H^3, so scanning divisors is exact.
inline long long class_order(const Cochain3& w, const CoboundarySolver<2>* solver = nullptr) {
    std::unique_ptr<CoboundarySolver<2>> own;
    if (!solver) {
        own = std::make_unique<CoboundarySolver<2>>(w.group);
        solver = own.get();
    }
    for (long long k : divisors_of(w.group.n))
        if (solver->solve(w.scaled(k)).solvable) return k;
    throw std::logic_error("class_order: no divisor of |G| works (solver bug)");
}

// e(w_g) via the telescoping invariant: the order of sum_{j=1}^{|g|-1}
// w(g, g^j, g), which classifies H^3 of the cyclic subgroup <g> completely.
inline long long cyclic_class_order(const Cochain3& w, ElemId g) {
    const GroupTable& G = w.group;
    long long m = element_order(G, g);
    Phase s;
    ElemId gj = g;
    for (long long j = 1; j < m; ++j) {
        s += w.at(g, gj, g);
        gj = G.mul(gj, g);
    }
    return phase_order(s);
}

struct NormalizationResult {
    Cochain3 normalized;
    Cochain2 correction;  // normalized = input - d(correction)
};

// Produces a cohomologous cocycle with N * w~(g, g^-1, g) = 0 for all g,
// N = exp G: per cyclic subgroup solve N*w|_C = d(f), assemble the global
// 2-cochain f(g,h) = f^<g>(g,h) for h in <g>, and subtract d(f / N).
inline NormalizationResult normalize_cocycle_full(const Cochain3& w, int max_cyclic_order = 24) {
    const GroupTable& G = w.group;
    long long N = group_exponent(G);
    std::map<std::vector<ElemId>, Cochain2> witness_by_subgroup;
    std::map<ElemId, const Cochain2*> witness_of;
    std::map<ElemId, Subgroup> subgroup_of;
    for (ElemId g = 1; g < G.n; ++g) {
        Subgroup C = subgroup_generated(G, {g});
        if (C.order() > max_cyclic_order)
            throw std::runtime_error("normalize_cocycle: cyclic subgroup exceeds cap");
        auto it = witness_by_subgroup.find(C.members);
        if (it == witness_by_subgroup.end()) {
            Cochain3 restricted = restrict3(w, C).scaled(N);
            auto cert = solve_coboundary3(restricted);
            if (!cert.solvable)
                throw std::logic_error("normalize_cocycle: cyclic solve failed (exponent annihilation violated)");
            it = witness_by_subgroup.emplace(C.members, std::move(*cert.witness)).first;
        }
        witness_of[g] = &it->second;
        subgroup_of.emplace(g, std::move(C));
    }
    Cochain2 f(G);
    for (ElemId g = 1; g < G.n; ++g) {
        const Subgroup& C = subgroup_of.at(g);
        const Cochain2& fg = *witness_of.at(g);
        int lg = C.local_index(g);
        for (ElemId h = 1; h < G.n; ++h)
            if (C.contains(h)) f.set(fg.at(lg, C.local_index(h)), g, h);
    }
    Cochain2 fN(G);
    for (size_t i = 0; i < f.values.size(); ++i) fN.values[i] = f.values[i].divided_by(N);
    NormalizationResult res{w - coboundary(fN), std::move(fN)};
    return res;
}

inline Cochain3 normalize_cocycle(const Cochain3& w, int max_cyclic_order = 24) {
    return normalize_cocycle_full(w, max_cyclic_order).normalized;
}

// |H^3(G, k^x)| via integral homology of the normalized bar complex:
// with divisible coefficients H^3(G, k^x) is dual to H_3(G, Z), whose
// order is the product of the nonzero diagonal entries of boundary_4.
inline long long h3_order(const GroupTable& G, int cap = 8) {
    if (G.n > cap) throw std::runtime_error("h3_order: order exceeds cap");
    const int n = G.n;
    const int m = n - 1;
    if (m == 0) return 1;
    auto idx3 = [m](ElemId a, ElemId b, ElemId c) {
        return ((a - 1) * m + (b - 1)) * m + (c - 1);
    };
    int rows = m * m * m, cols = m * m * m * m;
    BigMat B(rows, cols);
    int colk = 0;
    for (ElemId g1 = 1; g1 < n; ++g1)
        for (ElemId g2 = 1; g2 < n; ++g2)
            for (ElemId g3 = 1; g3 < n; ++g3)
                for (ElemId g4 = 1; g4 < n; ++g4, ++colk) {
                    B.at(idx3(g2, g3, g4), colk) += 1;
                    ElemId a = G.mul(g1, g2);
                    if (a != 0) B.at(idx3(a, g3, g4), colk) -= 1;
                    ElemId b = G.mul(g2, g3);
                    if (b != 0) B.at(idx3(g1, b, g4), colk) += 1;
                    ElemId c = G.mul(g3, g4);
                    if (c != 0) B.at(idx3(g1, g2, c), colk) -= 1;
                    B.at(idx3(g1, g2, g3), colk) += 1;
                }
    auto dg = diagonalize(std::move(B), false);
    mpz_class prod = 1;
    for (const auto& d : dg.diag) prod *= d;
    if (!prod.fits_slong_p()) throw std::overflow_error("h3_order: result too large");
    return prod.get_si();
}

}  // namespace twistd
