#pragma once

#include <utility>
#include <vector>

#include "cosupp/rings/matrix.hpp"
#include "cosupp/rings/poly.hpp"

namespace cosupp {

// Euclidean-domain hooks used by the Smith normal form.
template <class D>
struct Euclid;

template <>
struct Euclid<Integer> {
    static bool smaller(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
    static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) {
        Integer q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return {q, r};
    }
    // unit u such that a*u is the canonical associate
    static Integer normal_unit(const Integer& a) { return sgn(a) < 0 ? Integer(-1) : Integer(1); }
    static Integer unit_inverse(const Integer& u) { return u; }
    static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
};

template <class F>
struct Euclid<Poly<F>> {
    static bool smaller(const Poly<F>& a, const Poly<F>& b) { return a.degree() < b.degree(); }
    static std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) { return Poly<F>::divmod(a, b); }
    static Poly<F> normal_unit(const Poly<F>& a) {
        return a.is_zero() ? a.one() : Poly<F>::constant(inverse(a.lead()));
    }
    static Poly<F> unit_inverse(const Poly<F>& u) { return Poly<F>::constant(inverse(u.lead())); }
    static bool is_unit(const Poly<F>& a) { return a.degree() == 0; }
};

template <class D>
struct SnfResult {
    Matrix<D> diag;          // U * A * V
    Matrix<D> U, Uinv, V;
    std::vector<D> invariants;  // min(rows, cols) entries, divisibility chain
    size_t rank = 0;
};

// Smith normal form over a Euclidean domain with both transforms and U^{-1}.
template <class D>
SnfResult<D> smith_normal_form(const Matrix<D>& A, const D& zero, const D& one) {
    using E = Euclid<D>;
    const size_t m = A.rows(), n = A.cols();
    SnfResult<D> s;
    Matrix<D> M = A;
    Matrix<D> U = Matrix<D>::identity(m, zero, one), Ui = U, V = Matrix<D>::identity(n, zero, one);

    auto row_sub = [&](size_t i, size_t t, const D& q) {  // row_i -= q row_t
        for (size_t j = 0; j < n; ++j) M(i, j) = M(i, j) - q * M(t, j);
        for (size_t j = 0; j < m; ++j) U(i, j) = U(i, j) - q * U(t, j);
        for (size_t k = 0; k < m; ++k) Ui(k, t) = Ui(k, t) + q * Ui(k, i);
    };
    auto row_swap = [&](size_t a, size_t b) {
        M.swap_rows(a, b);
        U.swap_rows(a, b);
        Ui.swap_cols(a, b);
    };
    auto col_sub = [&](size_t j, size_t t, const D& q) {  // col_j -= q col_t
        for (size_t i = 0; i < m; ++i) M(i, j) = M(i, j) - q * M(i, t);
        for (size_t i = 0; i < n; ++i) V(i, j) = V(i, j) - q * V(i, t);
    };
    auto col_swap = [&](size_t a, size_t b) {
        M.swap_cols(a, b);
        V.swap_cols(a, b);
    };

    const size_t lim = std::min(m, n);
    size_t t = 0;
    for (; t < lim; ++t) {
        // smallest nonzero entry of the trailing block
        bool found = false;
        size_t pi = t, pj = t;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j)
                if (!is_zero(M(i, j)) && (!found || E::smaller(M(i, j), M(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            bool dirty = false;
            for (size_t i = t + 1; i < m && !dirty; ++i) {
                if (is_zero(M(i, t))) continue;
                auto [q, r] = E::divmod(M(i, t), M(t, t));
                row_sub(i, t, q);
                if (!is_zero(r)) {
                    row_swap(i, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (size_t j = t + 1; j < n && !dirty; ++j) {
                if (is_zero(M(t, j))) continue;
                auto [q, r] = E::divmod(M(t, j), M(t, t));
                col_sub(j, t, q);
                if (!is_zero(r)) {
                    col_swap(j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility of the remaining block by the pivot
            for (size_t i = t + 1; i < m && !dirty; ++i)
                for (size_t j = t + 1; j < n && !dirty; ++j)
                    if (!is_zero(E::divmod(M(i, j), M(t, t)).second)) {
                        row_sub(t, i, -one);  // row_t += row_i
                        dirty = true;
                    }
            if (!dirty) break;
        }
        D u = E::normal_unit(M(t, t)), ui = E::unit_inverse(u);
        for (size_t j = 0; j < n; ++j) M(t, j) = M(t, j) * u;
        for (size_t j = 0; j < m; ++j) U(t, j) = U(t, j) * u;
        for (size_t k = 0; k < m; ++k) Ui(k, t) = Ui(k, t) * ui;
    }
    s.rank = t;
    for (size_t k = 0; k < lim; ++k) s.invariants.push_back(M(k, k));
    s.diag = std::move(M);
    s.U = std::move(U);
    s.Uinv = std::move(Ui);
    s.V = std::move(V);
    return s;
}

// Basis of the right kernel, as columns.
template <class D>
Matrix<D> kernel_basis(const Matrix<D>& A, const D& zero, const D& one) {
    auto s = smith_normal_form(A, zero, one);
    size_t n = A.cols();
    Matrix<D> K(n, n - s.rank, zero);
    for (size_t j = s.rank; j < n; ++j)
        for (size_t i = 0; i < n; ++i) K(i, j - s.rank) = s.V(i, j);
    return K;
}

} // namespace cosupp
