#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "sl3trace/errors.hpp"
#include "sl3trace/matrix3.hpp"
#include "sl3trace/word.hpp"

namespace sl3trace {

enum class MatrixConstraint { SpecialLinear, GeneralLinear };

inline const char* constraint_name(MatrixConstraint c) {
    return c == MatrixConstraint::SpecialLinear ? "sl" : "gl";
}

inline MatrixConstraint constraint_from_name(const std::string& name) {
    if (name == "sl") return MatrixConstraint::SpecialLinear;
    if (name == "gl") return MatrixConstraint::GeneralLinear;
    throw ParseError("unknown constraint '" + name + "'");
}

// An r-tuple of 3x3 matrices: a point of the representation variety. In
// SpecialLinear mode every determinant is 1 (exactly over the rationals,
// within 1e-9 relative over floats); the constructor enforces it.
template <ScalarField S>
class MatrixTuple {
public:
    // Empty placeholder, e.g. a certificate before its sample is attached.
    MatrixTuple() = default;

    MatrixTuple(std::vector<Matrix3<S>> matrices, MatrixConstraint constraint)
        : mats_(std::move(matrices)), constraint_(constraint) {
        if (mats_.empty()) throw Error("tuple must contain at least one matrix");
        if (constraint_ == MatrixConstraint::SpecialLinear) {
            for (std::size_t k = 0; k < mats_.size(); ++k) {
                const S d = mats_[k].det();
                if constexpr (ScalarTraits<S>::exact) {
                    if (d != ScalarTraits<S>::one())
                        throw Error("matrix " + std::to_string(k + 1) +
                                    " violates det=1 in SpecialLinear mode");
                } else {
                    const double err = std::abs(d - ScalarTraits<S>::one());
                    if (err > 1e-9 * std::max(1.0, std::abs(d)))
                        throw Error("matrix " + std::to_string(k + 1) +
                                    " violates det=1 in SpecialLinear mode");
                }
            }
        }
    }

    int rank() const { return static_cast<int>(mats_.size()); }
    MatrixConstraint constraint() const { return constraint_; }

    // 1-based, matching generator indices in words.
    const Matrix3<S>& matrix(int k) const {
        if (k < 1 || k > rank())
            throw RankMismatchError("matrix index " + std::to_string(k) +
                                    " out of range for rank " + std::to_string(rank()));
        return mats_[static_cast<std::size_t>(k - 1)];
    }

    const std::vector<Matrix3<S>>& matrices() const { return mats_; }

    bool operator==(const MatrixTuple& o) const {
        return constraint_ == o.constraint_ && mats_ == o.mats_;
    }

private:
    std::vector<Matrix3<S>> mats_;
    MatrixConstraint constraint_ = MatrixConstraint::SpecialLinear;
};

// Product of matrices and inverses in word order; the empty word gives the
// identity. Inverses are adjugate-over-determinant, so negative exponents
// fail only on a genuinely singular matrix.
template <ScalarField S>
Matrix3<S> word_eval(const GroupWord& word, const MatrixTuple<S>& tuple) {
    Matrix3<S> acc = Matrix3<S>::identity();
    for (const Letter& l : word.letters()) {
        if (l.gen > tuple.rank())
            throw RankMismatchError("word uses generator " + std::to_string(l.gen) +
                                    " but tuple has rank " + std::to_string(tuple.rank()));
        const Matrix3<S>& base = tuple.matrix(l.gen);
        const Matrix3<S> factor = l.exp > 0 ? base : base.inverse();
        for (int t = 0; t < std::abs(l.exp); ++t) acc = acc * factor;
    }
    return acc;
}

// (g X1 g^-1, ..., g Xr g^-1); preserves determinants, hence the
// SpecialLinear constraint.
template <ScalarField S>
MatrixTuple<S> conjugate_tuple(const Matrix3<S>& g, const MatrixTuple<S>& tuple) {
    if (ScalarTraits<S>::is_zero(g.det()))
        throw SingularMatrixError("conjugating matrix is singular");
    const Matrix3<S> ginv = g.inverse();
    std::vector<Matrix3<S>> out;
    out.reserve(tuple.matrices().size());
    for (const Matrix3<S>& m : tuple.matrices()) out.push_back(g * m * ginv);
    return MatrixTuple<S>(std::move(out), tuple.constraint());
}

} // namespace sl3trace
