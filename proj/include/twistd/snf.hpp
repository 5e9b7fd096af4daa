#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace twistd {

// Dense integer matrix with exact entries.
struct BigMat {
    int rows = 0, cols = 0;
    std::vector<mpz_class> a;

    BigMat() = default;
    BigMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

struct RowOp {
    enum Kind { Swap, Negate, AddMul } kind;
    int i = 0, j = 0;
    mpz_class c;  // AddMul: row_i += c * row_j
};

// Diagonal form S = U*A*V by unimodular row/column operations. Replaying
// row_ops on a right-hand side w computes U*w; V maps reduced unknowns
// back via t = V*y. The diagonal is not forced into a divisor chain;
// solvability and group orders only need a diagonal form.
struct Diagonalization {
    int rows = 0, cols = 0;
    std::vector<mpz_class> diag;            // positive entries d_0..d_{r-1}
    std::vector<RowOp> row_ops;
    std::vector<std::vector<mpz_class>> V;  // cols x cols; empty if not tracked
};

inline Diagonalization diagonalize(BigMat A, bool track_ops = true) {
    Diagonalization out;
    out.rows = A.rows;
    out.cols = A.cols;
    if (track_ops) {
        out.V.assign(static_cast<size_t>(A.cols), std::vector<mpz_class>(A.cols, 0));
        for (int i = 0; i < A.cols; ++i) out.V[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    }

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < A.cols; ++k) std::swap(A.at(i, k), A.at(j, k));
        if (track_ops) out.row_ops.push_back({RowOp::Swap, i, j, 0});
    };
    auto negate_row = [&](int i) {
        for (int k = 0; k < A.cols; ++k) A.at(i, k) = -A.at(i, k);
        if (track_ops) out.row_ops.push_back({RowOp::Negate, i, 0, 0});
    };
    auto addmul_row = [&](int i, int j, const mpz_class& c) {
        if (c == 0) return;
        for (int k = 0; k < A.cols; ++k) A.at(i, k) += c * A.at(j, k);
        if (track_ops) out.row_ops.push_back({RowOp::AddMul, i, j, c});
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < A.rows; ++k) std::swap(A.at(k, i), A.at(k, j));
        if (track_ops)
            for (auto& row : out.V) std::swap(row[static_cast<size_t>(i)], row[static_cast<size_t>(j)]);
    };
    auto addmul_col = [&](int i, int j, const mpz_class& c) {
        if (c == 0) return;
        for (int k = 0; k < A.rows; ++k) A.at(k, i) += c * A.at(k, j);
        if (track_ops)
            for (auto& row : out.V)
                row[static_cast<size_t>(i)] += c * row[static_cast<size_t>(j)];
    };

    int limit = std::min(A.rows, A.cols);
    for (int k = 0; k < limit; ++k) {
        int pi = -1, pj = -1;
        for (int i = k; i < A.rows && pi < 0; ++i)
            for (int j = k; j < A.cols; ++j)
                if (mpz_cmpabs_ui(A.at(i, j).get_mpz_t(), 1) == 0) { pi = i; pj = j; break; }
        if (pi < 0) {
            for (int i = k; i < A.rows; ++i)
                for (int j = k; j < A.cols; ++j) {
                    const mpz_class& v = A.at(i, j);
                    if (v == 0) continue;
                    if (pi < 0 || mpz_cmpabs(v.get_mpz_t(), A.at(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
        }
        if (pi < 0) break;
        swap_rows(k, pi);
        swap_cols(k, pj);
        if (A.at(k, k) < 0) negate_row(k);

        // Floor division keeps remainders in [0, pivot), so a promoted
        // remainder is again a positive, strictly smaller pivot.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = k + 1; i < A.rows; ++i) {
                if (A.at(i, k) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A.at(i, k).get_mpz_t(), A.at(k, k).get_mpz_t());
                addmul_row(i, k, -q);
                if (A.at(i, k) != 0) {
                    swap_rows(k, i);
                    dirty = true;
                }
            }
            for (int j = k + 1; j < A.cols; ++j) {
                if (A.at(k, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A.at(k, j).get_mpz_t(), A.at(k, k).get_mpz_t());
                addmul_col(j, k, -q);
                if (A.at(k, j) != 0) {
                    swap_cols(k, j);
                    dirty = true;
                }
            }
        }
        out.diag.push_back(A.at(k, k));
    }
    return out;
}

// Sparse integer row: sorted (column, coefficient) pairs.
using SparseRow = std::vector<std::pair<int, long long>>;

namespace snf_detail {

inline void row_addmul(SparseRow& r, const SparseRow& p, long long q) {
    // r += q * p, keeping columns sorted and dropping zeros
    SparseRow out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            __int128 v = static_cast<__int128>(q) * p[j].second;
            if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("row_addmul");
            if (v != 0) out.push_back({p[j].first, static_cast<long long>(v)});
            ++j;
        } else {
            __int128 v = static_cast<__int128>(r[i].second) + static_cast<__int128>(q) * p[j].second;
            if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("row_addmul");
            if (v != 0) out.push_back({r[i].first, static_cast<long long>(v)});
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

inline long long floordiv(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

}  // namespace snf_detail

}  // namespace twistd
