#pragma once

#include <vector>

#include "wittlift/error.hpp"

// Diagonalization over a local principal ideal ring with uniformizer p and
// nilpotency degree d (p^d = 0): U*A*V = diag(p^(v_1),...), v_i ascending.
// Pivots are chosen by minimal valuation with lowest (row, col) index, so the
// transforms are reproducible. The traits object supplies the ring:
//   Elem, zero(), one(), is_zero(e), val(e) in [0,d] (d for zero),
//   add/sub/mul/neg, unit_inv(e) for val(e)==0, pshift(v) = p^v,
//   div_pow(e, v) with e = p^v * result (any canonical choice), nilpotency().

namespace wittlift {

template <class Ring>
struct SmithMat {
    int rows = 0, cols = 0;
    std::vector<typename Ring::Elem> a;

    static SmithMat zeros(const Ring& R, int r, int c) {
        SmithMat m;
        m.rows = r;
        m.cols = c;
        m.a.assign(size_t(r) * size_t(c), R.zero());
        return m;
    }
    static SmithMat identity(const Ring& R, int n) {
        SmithMat m = zeros(R, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = R.one();
        return m;
    }
    typename Ring::Elem& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
    const typename Ring::Elem& at(int i, int j) const {
        return a[size_t(i) * size_t(cols) + size_t(j)];
    }
};

template <class Ring>
struct SmithResult {
    SmithMat<Ring> D, U, Uinv, V, Vinv;
    std::vector<int> val; // length min(rows, cols); nilpotency() encodes zero
};

namespace smith_detail {

template <class Ring>
void row_swap(SmithMat<Ring>& M, int i, int j) {
    for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
}
template <class Ring>
void col_swap(SmithMat<Ring>& M, int i, int j) {
    for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
}
// row_i += s * row_j
template <class Ring>
void row_addmul(const Ring& R, SmithMat<Ring>& M, int i, int j, const typename Ring::Elem& s) {
    for (int c = 0; c < M.cols; ++c) M.at(i, c) = R.add(M.at(i, c), R.mul(s, M.at(j, c)));
}
// col_i += s * col_j
template <class Ring>
void col_addmul(const Ring& R, SmithMat<Ring>& M, int i, int j, const typename Ring::Elem& s) {
    for (int r = 0; r < M.rows; ++r) M.at(r, i) = R.add(M.at(r, i), R.mul(s, M.at(r, j)));
}
template <class Ring>
void row_scale(const Ring& R, SmithMat<Ring>& M, int i, const typename Ring::Elem& s) {
    for (int c = 0; c < M.cols; ++c) M.at(i, c) = R.mul(s, M.at(i, c));
}
template <class Ring>
void col_scale(const Ring& R, SmithMat<Ring>& M, int i, const typename Ring::Elem& s) {
    for (int r = 0; r < M.rows; ++r) M.at(r, i) = R.mul(s, M.at(r, i));
}

} // namespace smith_detail

template <class Ring>
SmithResult<Ring> smith_normal_form(const Ring& R, const SmithMat<Ring>& A) {
    using namespace smith_detail;
    const int d = R.nilpotency();
    SmithResult<Ring> res;
    res.D = A;
    res.U = SmithMat<Ring>::identity(R, A.rows);
    res.Uinv = res.U;
    res.V = SmithMat<Ring>::identity(R, A.cols);
    res.Vinv = res.V;
    auto& D = res.D;

    int nsteps = std::min(A.rows, A.cols);
    res.val.assign(size_t(nsteps), d);
    for (int k = 0; k < nsteps; ++k) {
        // minimal-valuation pivot, lowest (row, col) on ties
        int bi = -1, bj = -1, bv = d;
        for (int i = k; i < A.rows; ++i)
            for (int j = k; j < A.cols; ++j) {
                int v = R.val(D.at(i, j));
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break; // the rest is zero; vals stay at d
        res.val[size_t(k)] = bv;
        if (bi != k) {
            row_swap(D, k, bi);
            row_swap(res.U, k, bi);
            col_swap(res.Uinv, k, bi);
        }
        if (bj != k) {
            col_swap(D, k, bj);
            col_swap(res.V, k, bj);
            row_swap(res.Vinv, k, bj);
        }
        // normalize the pivot to exactly p^v
        typename Ring::Elem u = R.div_pow(D.at(k, k), bv); // unit part
        typename Ring::Elem uinv = R.unit_inv(u);
        row_scale(R, D, k, uinv);
        row_scale(R, res.U, k, uinv);
        col_scale(R, res.Uinv, k, u);
        D.at(k, k) = R.pshift(bv); // exact representative

        for (int i = k + 1; i < A.rows; ++i) {
            if (R.is_zero(D.at(i, k))) continue;
            typename Ring::Elem q = R.neg(R.div_pow(D.at(i, k), bv));
            row_addmul(R, D, i, k, q);
            row_addmul(R, res.U, i, k, q);
            col_addmul(R, res.Uinv, k, i, R.neg(q));
            D.at(i, k) = R.zero();
        }
        for (int j = k + 1; j < A.cols; ++j) {
            if (R.is_zero(D.at(k, j))) continue;
            typename Ring::Elem q = R.neg(R.div_pow(D.at(k, j), bv));
            col_addmul(R, D, j, k, q);
            col_addmul(R, res.V, j, k, q);
            row_addmul(R, res.Vinv, k, j, R.neg(q));
            D.at(k, j) = R.zero();
        }
    }
    return res;
}

// Particular solution of A x = b through a precomputed normal form.
// Returns false when the system is unsolvable.
template <class Ring>
bool smith_solve(const Ring& R, const SmithResult<Ring>& nf, int rows, int cols,
                 const std::vector<typename Ring::Elem>& b,
                 std::vector<typename Ring::Elem>& x) {
    const int d = R.nilpotency();
    // y = D^+ (U b), x = V y
    std::vector<typename Ring::Elem> ub(size_t(rows), R.zero());
    for (int i = 0; i < rows; ++i) {
        typename Ring::Elem acc = R.zero();
        for (int j = 0; j < rows; ++j) acc = R.add(acc, R.mul(nf.U.at(i, j), b[size_t(j)]));
        ub[size_t(i)] = acc;
    }
    std::vector<typename Ring::Elem> y(size_t(cols), R.zero());
    int nsteps = std::min(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (i >= nsteps || nf.val[size_t(i)] == d) {
            if (i < cols) y[size_t(i)] = R.zero();
            if (!R.is_zero(ub[size_t(i)])) return false;
            continue;
        }
        int v = nf.val[size_t(i)];
        if (R.val(ub[size_t(i)]) < v) return false;
        y[size_t(i)] = R.div_pow(ub[size_t(i)], v);
    }
    x.assign(size_t(cols), R.zero());
    for (int i = 0; i < cols; ++i) {
        typename Ring::Elem acc = R.zero();
        for (int j = 0; j < cols; ++j) acc = R.add(acc, R.mul(nf.V.at(i, j), y[size_t(j)]));
        x[size_t(i)] = acc;
    }
    return true;
}

// Generators of ker(A) as columns: V * (p^(d-v_i) e_i for 0 < v_i < d,
// e_i for zero diagonals and pivot-free columns).
template <class Ring>
SmithMat<Ring> smith_kernel(const Ring& R, const SmithResult<Ring>& nf, int rows, int cols) {
    const int d = R.nilpotency();
    std::vector<std::pair<int, int>> gens; // (column index, power)
    int nsteps = std::min(rows, cols);
    for (int i = 0; i < cols; ++i) {
        int v = i < nsteps ? nf.val[size_t(i)] : d;
        if (v == 0) continue;
        gens.emplace_back(i, d - v);
    }
    SmithMat<Ring> K = SmithMat<Ring>::zeros(R, cols, int(gens.size()));
    for (int g = 0; g < int(gens.size()); ++g) {
        auto [i, pw] = gens[size_t(g)];
        typename Ring::Elem s = R.pshift(pw);
        for (int r = 0; r < cols; ++r) K.at(r, g) = R.mul(nf.V.at(r, i), s);
    }
    return K;
}

} // namespace wittlift
