#pragma once

#include <array>
#include <string>
#include <vector>

#include "sl3trace/calculus.hpp"
#include "sl3trace/certify.hpp"
#include "sl3trace/invariants.hpp"
#include "sl3trace/linalg.hpp"
#include "sl3trace/tuple.hpp"

namespace sl3trace {

// An ordered list of trace invariants, viewed as a map from tuples to
// affine space.
struct MagnusMap {
    std::vector<TraceInvariant> invariants;

    std::size_t size() const { return invariants.size(); }
};

template <ScalarField S>
std::vector<S> magnus_eval(const MagnusMap& map, const MatrixTuple<S>& tuple) {
    std::vector<S> out;
    out.reserve(map.invariants.size());
    for (const TraceInvariant& inv : map.invariants) out.push_back(eval_trace(inv, tuple));
    return out;
}

// Rank of the Jacobian of the map in the given coordinates; full rank at a
// single point witnesses generic submersivity.
template <ScalarField S>
int submersivity_rank(const MagnusMap& map, const MatrixTuple<S>& tuple,
                      const VariableSet& vars) {
    const JacobianMatrix<S> jac = jacobian<S>(map.invariants, vars.vars, tuple);
    return static_cast<int>(matrix_rank(jac.entries));
}

template <ScalarField S>
int submersivity_rank(const MagnusMap& map, const MatrixTuple<S>& tuple) {
    return submersivity_rank(map, tuple, variable_set(tuple.rank()));
}

namespace detail {

template <ScalarField S>
std::array<S, 9> flatten(const Matrix3<S>& m) {
    std::array<S, 9> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(3 * i + j)] = m(i, j);
    return out;
}

} // namespace detail

// Burnside criterion: the tuple generates the full 3x3 matrix algebra iff
// the span of products of length <= 6 (with the identity) has dimension 9.
// Only matrices that enlarged the span are extended by another factor; that
// loses nothing, since span products of spanning sets span the products. An
// empty level means the span has stabilized for good.
template <ScalarField S>
bool is_irreducible(const MatrixTuple<S>& tuple) {
    if (tuple.constraint() != MatrixConstraint::SpecialLinear)
        throw Error("is_irreducible requires a SpecialLinear tuple");
    constexpr int kMaxLength = 6;
    constexpr std::size_t kFullDimension = 9;

    IncrementalSpan<S> span;
    span.add(detail::flatten(Matrix3<S>::identity()));
    std::vector<Matrix3<S>> fresh{Matrix3<S>::identity()};
    for (int length = 1; length <= kMaxLength && !fresh.empty(); ++length) {
        std::vector<Matrix3<S>> next;
        for (const Matrix3<S>& p : fresh) {
            for (int k = 1; k <= tuple.rank(); ++k) {
                Matrix3<S> extended = p * tuple.matrix(k);
                if (span.add(detail::flatten(extended))) {
                    if (span.dimension() == kFullDimension) return true;
                    next.push_back(std::move(extended));
                }
            }
        }
        fresh = std::move(next);
    }
    return span.dimension() == kFullDimension;
}

// dim of the character variety: 8r-8 once there are two generators; the
// r = 1 variety is the affine plane of the two independent traces.
inline int krull_dim(int r) {
    if (r < 1) throw RankTooSmallError("krull_dim requires rank >= 1");
    return r == 1 ? 2 : 8 * r - 8;
}

} // namespace sl3trace
