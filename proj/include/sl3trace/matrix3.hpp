#pragma once

#include <algorithm>
#include <array>
#include <initializer_list>

#include "sl3trace/errors.hpp"
#include "sl3trace/scalar.hpp"

namespace sl3trace {

// Dense 3x3 matrix over one of the two scalar fields. Immutable in spirit:
// all operations return fresh values. Indices are 0-based here; the 1-based
// convention of variable coordinates lives in calculus.hpp.
template <ScalarField S>
class Matrix3 {
public:
    using Traits = ScalarTraits<S>;

    Matrix3() { e_.fill(Traits::zero()); }

    explicit Matrix3(std::array<S, 9> entries) : e_(std::move(entries)) {}

    // Row-major: {{a,b,c},{d,e,f},{g,h,i}} written flat.
    Matrix3(std::initializer_list<S> entries) {
        if (entries.size() != 9) throw Error("Matrix3 needs exactly 9 entries");
        std::copy(entries.begin(), entries.end(), e_.begin());
    }

    static Matrix3 identity() {
        Matrix3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = Traits::one();
        return m;
    }

    static Matrix3 zero() { return Matrix3(); }

    S& operator()(int i, int j) { return e_[static_cast<std::size_t>(3 * i + j)]; }
    const S& operator()(int i, int j) const { return e_[static_cast<std::size_t>(3 * i + j)]; }

    const std::array<S, 9>& entries() const { return e_; }

    S trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }

    S det() const {
        const Matrix3& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
             - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
             + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    double max_abs() const {
        double best = 0.0;
        for (const S& v : e_) best = std::max(best, Traits::magnitude(v));
        return best;
    }

    Matrix3 adjugate() const {
        const Matrix3& m = *this;
        Matrix3 a;
        a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
        a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
        a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
        a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
        a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
        a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
        a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        return a;
    }

    // Adjugate-over-determinant inverse in both modes, so exact and float
    // paths compute the same formula. Unimodular matrices invert without any
    // division by non-units.
    Matrix3 inverse() const {
        const S d = det();
        if (Traits::is_zero(d)) throw SingularMatrixError("matrix has zero determinant");
        if constexpr (!Traits::exact) {
            const double scale = max_abs();
            if (Traits::magnitude(d) < 1e-12 * scale * scale * scale)
                warnings::emit("near-singular inverse: |det| below 1e-12 * (max entry)^3");
        }
        Matrix3 a = adjugate();
        for (S& v : a.e_) v = v / d;
        return a;
    }

    Matrix3 operator*(const Matrix3& o) const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
        return r;
    }

    Matrix3 operator+(const Matrix3& o) const {
        Matrix3 r;
        for (std::size_t t = 0; t < 9; ++t) r.e_[t] = e_[t] + o.e_[t];
        return r;
    }

    Matrix3 operator-(const Matrix3& o) const {
        Matrix3 r;
        for (std::size_t t = 0; t < 9; ++t) r.e_[t] = e_[t] - o.e_[t];
        return r;
    }

    Matrix3 operator-() const {
        Matrix3 r;
        for (std::size_t t = 0; t < 9; ++t) r.e_[t] = -e_[t];
        return r;
    }

    friend Matrix3 operator*(const S& c, const Matrix3& m) {
        Matrix3 r;
        for (std::size_t t = 0; t < 9; ++t) r.e_[t] = c * m.e_[t];
        return r;
    }

    bool operator==(const Matrix3& o) const { return e_ == o.e_; }

    bool is_diagonal() const {
        const Matrix3& m = *this;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && !Traits::is_zero(m(i, j))) return false;
        return true;
    }

private:
    std::array<S, 9> e_;
};

} // namespace sl3trace
