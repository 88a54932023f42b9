#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cosupp/rings/errors.hpp"

namespace cosupp {

// Row-major dense matrix. The zero element is stored so that entries of
// context-carrying types (F_p, polynomials) can be created on demand.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t r, size_t c, const T& zero) : r_(r), c_(c), zero_(zero), d_(r * c, zero) {}

    static Matrix identity(size_t n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    const T& zero() const { return zero_; }
    T& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < r_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    Matrix transposed() const {
        Matrix t(c_, r_, zero_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Columns [c0, c1) as a new matrix.
    Matrix col_range(size_t c0, size_t c1) const {
        Matrix m(r_, c1 - c0, zero_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = c0; j < c1; ++j) m(i, j - c0) = (*this)(i, j);
        return m;
    }
    Matrix row_range(size_t r0, size_t r1) const {
        Matrix m(r1 - r0, c_, zero_);
        for (size_t i = r0; i < r1; ++i)
            for (size_t j = 0; j < c_; ++j) m(i - r0, j) = (*this)(i, j);
        return m;
    }

    // Copies b into the block starting at (r0, c0).
    void paste(size_t r0, size_t c0, const Matrix& b) {
        for (size_t i = 0; i < b.r_; ++i)
            for (size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    // [A | B]
    static Matrix hcat(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_) fail(ErrorKind::PreconditionViolation, "hcat: row mismatch");
        Matrix m(a.r_, a.c_ + b.c_, a.zero_);
        for (size_t i = 0; i < a.r_; ++i) {
            for (size_t j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
            for (size_t j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
        }
        return m;
    }

private:
    size_t r_ = 0, c_ = 0;
    T zero_{};
    std::vector<T> d_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::PreconditionViolation, "matrix product: shape mismatch");
    Matrix<T> m(a.rows(), b.cols(), a.zero());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const T& x = a(i, k);
            if (is_zero(x)) continue;
            for (size_t j = 0; j < b.cols(); ++j) m(i, j) = m(i, j) + x * b(k, j);
        }
    return m;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::PreconditionViolation, "matrix sum: shape mismatch");
    Matrix<T> m = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
    return m;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& a) {
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!is_zero(a(i, j))) return false;
    return true;
}

template <class T>
bool operator==(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

} // namespace cosupp
