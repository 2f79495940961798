#pragma once

#include <cstdint>
#include <vector>

#include "sl3trace/rng.hpp"
#include "sl3trace/tuple.hpp"

namespace sl3trace {

// Fixed enumeration of the six off-diagonal positions.
inline constexpr int kTransvectionRows[6] = {0, 0, 1, 1, 2, 2};
inline constexpr int kTransvectionCols[6] = {1, 2, 0, 2, 0, 1};

// Elementary transvection E_ij(num/den): identity plus one off-diagonal
// entry. Determinant is 1 in both scalar modes. Indices are 1-based.
template <ScalarField S>
Matrix3<S> transvection(int i, int j, long long num, long long den) {
    if (i == j || i < 1 || i > 3 || j < 1 || j > 3)
        throw Error("transvection needs distinct row/column in 1..3");
    Matrix3<S> m = Matrix3<S>::identity();
    m(i - 1, j - 1) = ScalarTraits<S>::from_fraction(num, den);
    return m;
}

// Product of `count` transvections with entries lambda = +-p/q, p,q in
// [1, height], drawn from the stream. count = 0 gives the identity.
template <ScalarField S>
Matrix3<S> transvection_product(SplitMix64& stream, int count, unsigned height) {
    if (height < 1) throw Error("transvection height must be >= 1");
    Matrix3<S> acc = Matrix3<S>::identity();
    for (int t = 0; t < count; ++t) {
        const auto pos = static_cast<std::size_t>(stream.next_below(6));
        const long long num = stream.next_signed_nonzero(height);
        const long long den = 1 + static_cast<long long>(stream.next_below(height));
        acc = acc * transvection<S>(kTransvectionRows[pos] + 1, kTransvectionCols[pos] + 1, num, den);
    }
    return acc;
}

// Random unimodular matrix: a product of 6..12 transvections. det = 1 by
// construction, deterministically reproducible from the seed. Exact and
// float mode draw the same rationals for the same seed.
template <ScalarField S>
Matrix3<S> sample_sl3(std::uint64_t seed, unsigned height) {
    SplitMix64 stream(seed);
    const int count = 6 + static_cast<int>(stream.next_below(7));
    return transvection_product<S>(stream, count, height);
}

// r independent unimodular samples, one derived substream per slot.
template <ScalarField S>
MatrixTuple<S> sample_sl3_tuple(std::uint64_t seed, int rank, unsigned height) {
    if (rank < 1) throw Error("tuple rank must be >= 1");
    std::vector<Matrix3<S>> mats;
    mats.reserve(static_cast<std::size_t>(rank));
    for (int k = 1; k <= rank; ++k)
        mats.push_back(sample_sl3<S>(derive_seed(seed, static_cast<std::uint64_t>(k)), height));
    return MatrixTuple<S>(std::move(mats), MatrixConstraint::SpecialLinear);
}

} // namespace sl3trace
