#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sl3trace/matrix3.hpp"
#include "sl3trace/scalar.hpp"

namespace sl3trace {

// Dynamic dense matrix for Jacobians and span bookkeeping. Deliberately
// minimal; 3x3 work lives in Matrix3.
template <ScalarField S>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<S>::zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    bool operator==(const DenseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    DenseMatrix submatrix(std::size_t row0, std::size_t col0,
                          std::size_t nrows, std::size_t ncols) const {
        DenseMatrix out(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

inline Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& m) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

// Fraction-free Bareiss elimination; every division is exact, so over the
// rationals the result is the exact determinant. Floats go through Eigen's
// fully pivoted LU instead.
template <ScalarField S>
S determinant(DenseMatrix<S> m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return ScalarTraits<S>::one();

    if constexpr (!ScalarTraits<S>::exact) {
        if (n == 1) return m(0, 0);
        return to_eigen(m).fullPivLu().determinant();
    } else {
        S prev = ScalarTraits<S>::one();
        int sign = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            std::size_t pivot = k;
            while (pivot < n && ScalarTraits<S>::is_zero(m(pivot, k))) ++pivot;
            if (pivot == n) return ScalarTraits<S>::zero();
            if (pivot != k) {
                m.swap_rows(pivot, k);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j)
                    m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
                m(i, k) = ScalarTraits<S>::zero();
            }
            prev = m(k, k);
        }
        S det = m(n - 1, n - 1);
        if (sign < 0) det = -det;
        return det;
    }
}

// Matrix rank: exact Gaussian elimination over the rationals,
// singular-value thresholding at 1e-8 of the largest over floats.
template <ScalarField S>
std::size_t matrix_rank(DenseMatrix<S> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    if constexpr (!ScalarTraits<S>::exact) {
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
        const auto& sv = svd.singularValues();
        if (sv.size() == 0 || sv(0) == 0.0) return 0;
        const double cutoff = 1e-8 * sv(0);
        std::size_t rank = 0;
        for (Eigen::Index t = 0; t < sv.size(); ++t)
            if (sv(t) > cutoff) ++rank;
        return rank;
    } else {
        std::size_t rank = 0;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols && row < rows; ++col) {
            std::size_t pivot = row;
            while (pivot < rows && ScalarTraits<S>::is_zero(m(pivot, col))) ++pivot;
            if (pivot == rows) continue;
            m.swap_rows(pivot, row);
            for (std::size_t i = row + 1; i < rows; ++i) {
                if (ScalarTraits<S>::is_zero(m(i, col))) continue;
                const S factor = m(i, col) / m(row, col);
                for (std::size_t j = col; j < cols; ++j)
                    m(i, j) = m(i, j) - factor * m(row, j);
            }
            ++row;
            ++rank;
        }
        return rank;
    }
}

// Hadamard bound: product of row 2-norms. Used as the geometric scale for
// float-mode determinant significance tests (|det| <= bound always).
inline double hadamard_bound(const DenseMatrix<Complex>& m) {
    double bound = 1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) norm2 += std::norm(m(i, j));
        bound *= std::sqrt(norm2);
    }
    return bound;
}

// Growing subspace of the 9-dimensional matrix space, fed one vectorized
// matrix at a time. Exact mode keeps an echelon basis; float mode does
// modified Gram-Schmidt with a 1e-8 relative residual cutoff.
template <ScalarField S>
class IncrementalSpan {
public:
    std::size_t dimension() const { return basis_.size(); }

    // Returns true when the vector enlarged the span.
    bool add(std::array<S, 9> v) {
        if constexpr (ScalarTraits<S>::exact) {
            for (std::size_t b = 0; b < basis_.size(); ++b) {
                const S& lead = v[pivots_[b]];
                if (ScalarTraits<S>::is_zero(lead)) continue;
                const S factor = lead / basis_[b][pivots_[b]];
                for (std::size_t t = 0; t < 9; ++t) v[t] = v[t] - factor * basis_[b][t];
            }
            for (std::size_t t = 0; t < 9; ++t) {
                if (!ScalarTraits<S>::is_zero(v[t])) {
                    pivots_.push_back(t);
                    basis_.push_back(v);
                    return true;
                }
            }
            return false;
        } else {
            double norm_in = 0.0;
            for (const S& x : v) norm_in += std::norm(x);
            norm_in = std::sqrt(norm_in);
            if (norm_in == 0.0) return false;
            for (const auto& q : basis_) {
                S proj = ScalarTraits<S>::zero();
                for (std::size_t t = 0; t < 9; ++t) proj += std::conj(q[t]) * v[t];
                for (std::size_t t = 0; t < 9; ++t) v[t] -= proj * q[t];
            }
            double norm_res = 0.0;
            for (const S& x : v) norm_res += std::norm(x);
            norm_res = std::sqrt(norm_res);
            if (norm_res <= 1e-8 * norm_in) return false;
            for (S& x : v) x /= norm_res;
            pivots_.push_back(0);
            basis_.push_back(v);
            return true;
        }
    }

private:
    std::vector<std::array<S, 9>> basis_;
    std::vector<std::size_t> pivots_;
};

} // namespace sl3trace
