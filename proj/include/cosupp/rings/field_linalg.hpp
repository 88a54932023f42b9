#pragma once

#include "cosupp/rings/matrix.hpp"

namespace cosupp {

// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<size_t> rref(Matrix<F>& M) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        size_t p = r;
        while (p < M.rows() && is_zero(M(p, c))) ++p;
        if (p == M.rows()) continue;
        M.swap_rows(r, p);
        F inv = inverse(M(r, c));
        for (size_t j = c; j < M.cols(); ++j) M(r, j) = M(r, j) * inv;
        for (size_t i = 0; i < M.rows(); ++i) {
            if (i == r || is_zero(M(i, c))) continue;
            F f = M(i, c);
            for (size_t j = c; j < M.cols(); ++j) M(i, j) = M(i, j) - f * M(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
size_t field_rank(Matrix<F> M) { return rref(M).size(); }

} // namespace cosupp
