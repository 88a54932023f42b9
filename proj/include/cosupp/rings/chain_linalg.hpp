#pragma once

#include <vector>

#include "cosupp/rings/chain_ring.hpp"

namespace cosupp {

// Linear algebra over a chain ring A = R/pi^N. Every ideal is pi^k A, so a
// pivot of minimal valuation divides its whole row and column.

template <class CR>
struct ChainSnf {
    std::vector<int> diag_val;  // valuations of the nonzero pivots
    Matrix<typename CR::Elem> V;
};

template <class CR>
ChainSnf<CR> chain_snf(const CR& R, Matrix<typename CR::Elem> M, bool want_V = true) {
    const size_t m = M.rows(), n = M.cols();
    const int N = R.stage();
    ChainSnf<CR> out;
    if (want_V) out.V = Matrix<typename CR::Elem>::identity(n, R.zero(), R.one());
    const size_t lim = std::min(m, n);
    for (size_t t = 0; t < lim; ++t) {
        int best = N;
        size_t pi = t, pj = t;
        for (size_t i = t; i < m && best > 0; ++i)
            for (size_t j = t; j < n; ++j) {
                if (R.is_zero(M(i, j))) continue;
                int v = R.val(M(i, j));
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (v == 0) break;
                }
            }
        if (best >= N) break;
        M.swap_rows(t, pi);
        M.swap_cols(t, pj);
        if (want_V) out.V.swap_cols(t, pj);
        const int v = best;
        auto uinv = R.unit_inv(R.div_pi(M(t, t), v));
        for (size_t j = t; j < n; ++j) M(t, j) = R.mul(M(t, j), uinv);
        for (size_t i = t + 1; i < m; ++i) {
            if (R.is_zero(M(i, t))) continue;
            auto q = R.div_pi(M(i, t), v);
            for (size_t j = t; j < n; ++j)
                if (!R.is_zero(M(t, j))) M(i, j) = R.sub(M(i, j), R.mul(q, M(t, j)));
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (R.is_zero(M(t, j))) continue;
            auto q = R.div_pi(M(t, j), v);
            M(t, j) = R.zero();
            if (want_V)
                for (size_t i = 0; i < n; ++i)
                    if (!R.is_zero(out.V(i, t))) out.V(i, j) = R.sub(out.V(i, j), R.mul(q, out.V(i, t)));
        }
        out.diag_val.push_back(v);
    }
    return out;
}

// Generators of {x : M x = 0}, as columns.
template <class CR>
Matrix<typename CR::Elem> chain_kernel(const CR& R, const Matrix<typename CR::Elem>& M) {
    const size_t n = M.cols();
    const int N = R.stage();
    auto s = chain_snf(R, M, true);
    std::vector<size_t> cols;
    std::vector<int> shifts;
    for (size_t t = 0; t < n; ++t) {
        if (t < s.diag_val.size()) {
            int e = s.diag_val[t];
            if (e == 0) continue;
            cols.push_back(t);
            shifts.push_back(N - e);
        } else {
            cols.push_back(t);
            shifts.push_back(0);
        }
    }
    Matrix<typename CR::Elem> K(n, cols.size(), R.zero());
    for (size_t k = 0; k < cols.size(); ++k) {
        auto f = R.pi_pow(shifts[k]);
        for (size_t i = 0; i < n; ++i) K(i, k) = R.mul(s.V(i, cols[k]), f);
    }
    return K;
}

// Lengths of the cyclic summands of (span G + span B) / span B, where G and
// B are column generators in A^n.
template <class CR>
std::vector<int> chain_quotient_invariants(const CR& R, const Matrix<typename CR::Elem>& G,
                                           const Matrix<typename CR::Elem>& B) {
    const size_t z = G.cols();
    if (z == 0) return {};
    const int N = R.stage();
    auto K = chain_kernel(R, Matrix<typename CR::Elem>::hcat(G, B));
    Matrix<typename CR::Elem> Rel = K.row_range(0, z);
    auto s = chain_snf(R, Rel, false);
    std::vector<int> inv;
    for (size_t k = 0; k < z; ++k) {
        int e = k < s.diag_val.size() ? s.diag_val[k] : N;
        if (e > 0) inv.push_back(e);
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

} // namespace cosupp
