#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sl3trace/invariants.hpp"
#include "sl3trace/linalg.hpp"
#include "sl3trace/tuple.hpp"

namespace sl3trace {

// Coordinate x^k_{ij} of the ambient polynomial ring: entry (i,j) of the
// k-th generic matrix. All 1-based.
struct VariableIndex {
    int k;
    int i;
    int j;

    friend bool operator==(const VariableIndex&, const VariableIndex&) = default;

    std::string to_string() const {
        return std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j);
    }
};

// Gradient of tr(W) with respect to every matrix entry at once: result[k-1]
// holds d tr(W) / d x^k_{ij} at slot (i,j). For each occurrence of X_k with
// exponent +1, split W = A X_k B and add (BA)^T; for an occurrence of
// X_k^-1, add -(X_k^-1 B A X_k^-1)^T. Higher exponents are expanded to unit
// letters first. Derivatives are ambient: the perturbation ignores det = 1.
template <ScalarField S>
std::vector<Matrix3<S>> trace_gradient(const GroupWord& word, const MatrixTuple<S>& tuple) {
    const std::vector<Letter> units = word.units();
    const std::size_t n = units.size();

    std::vector<Matrix3<S>> factors;
    factors.reserve(n);
    std::vector<Matrix3<S>> inverses(static_cast<std::size_t>(tuple.rank()));
    std::vector<bool> have_inverse(static_cast<std::size_t>(tuple.rank()), false);
    for (const Letter& l : units) {
        if (l.gen > tuple.rank())
            throw RankMismatchError("word uses generator " + std::to_string(l.gen) +
                                    " but tuple has rank " + std::to_string(tuple.rank()));
        if (l.exp > 0) {
            factors.push_back(tuple.matrix(l.gen));
        } else {
            auto idx = static_cast<std::size_t>(l.gen - 1);
            if (!have_inverse[idx]) {
                inverses[idx] = tuple.matrix(l.gen).inverse();
                have_inverse[idx] = true;
            }
            factors.push_back(inverses[idx]);
        }
    }

    // prefix[t] = L_1 ... L_t, suffix[t] = L_{t+1} ... L_n
    std::vector<Matrix3<S>> prefix(n + 1), suffix(n + 1);
    prefix[0] = Matrix3<S>::identity();
    for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = prefix[t] * factors[t];
    suffix[n] = Matrix3<S>::identity();
    for (std::size_t t = n; t-- > 0;) suffix[t] = factors[t] * suffix[t + 1];

    std::vector<Matrix3<S>> grad(static_cast<std::size_t>(tuple.rank()));
    for (std::size_t t = 0; t < n; ++t) {
        const Letter& l = units[t];
        const Matrix3<S> around = suffix[t + 1] * prefix[t]; // B A
        Matrix3<S> contrib;
        if (l.exp > 0) {
            contrib = around;
        } else {
            const Matrix3<S>& inv = factors[t];
            contrib = -(inv * around * inv);
        }
        Matrix3<S>& g = grad[static_cast<std::size_t>(l.gen - 1)];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g(i, j) = g(i, j) + contrib(j, i);
    }
    return grad;
}

// Analytic partial derivative of a trace invariant in one ambient variable.
template <ScalarField S>
S d_trace(const TraceInvariant& inv, const VariableIndex& var, const MatrixTuple<S>& tuple) {
    if (var.k < 1 || var.k > tuple.rank())
        throw RankMismatchError("variable generator " + std::to_string(var.k) +
                                " out of range for rank " + std::to_string(tuple.rank()));
    if (!inv.word().mentions(var.k)) return ScalarTraits<S>::zero();
    const std::vector<Matrix3<S>> grad = trace_gradient(inv.word(), tuple);
    return grad[static_cast<std::size_t>(var.k - 1)](var.i - 1, var.j - 1);
}

template <ScalarField S>
struct JacobianMatrix {
    std::vector<TraceInvariant> rows;
    std::vector<VariableIndex> cols;
    DenseMatrix<S> entries; // entries(a,b) = d rows[a] / d cols[b]
};

template <ScalarField S>
JacobianMatrix<S> jacobian(std::span<const TraceInvariant> funcs,
                           std::span<const VariableIndex> vars,
                           const MatrixTuple<S>& tuple) {
    JacobianMatrix<S> jac;
    jac.rows.assign(funcs.begin(), funcs.end());
    jac.cols.assign(vars.begin(), vars.end());
    jac.entries = DenseMatrix<S>(funcs.size(), vars.size());
    for (std::size_t a = 0; a < funcs.size(); ++a) {
        const std::vector<Matrix3<S>> grad = trace_gradient(funcs[a].word(), tuple);
        for (std::size_t b = 0; b < vars.size(); ++b) {
            const VariableIndex& v = vars[b];
            if (v.k < 1 || v.k > tuple.rank())
                throw RankMismatchError("variable generator " + std::to_string(v.k) +
                                        " out of range");
            jac.entries(a, b) = grad[static_cast<std::size_t>(v.k - 1)](v.i - 1, v.j - 1);
        }
    }
    return jac;
}

// Central-difference oracle for d_trace, float mode only. The perturbed
// tuples intentionally leave the det = 1 locus: the differentiated object is
// the ambient function of the matrix entries, exactly like trace_gradient.
inline Complex fd_trace(const TraceInvariant& inv, const VariableIndex& var,
                        const MatrixTuple<Complex>& tuple, double step = 1e-5) {
    if (step <= 0.0) throw Error("finite-difference step must be positive");
    if (var.k < 1 || var.k > tuple.rank())
        throw RankMismatchError("variable generator " + std::to_string(var.k) +
                                " out of range for rank " + std::to_string(tuple.rank()));
    auto perturbed = [&](double h) {
        std::vector<Matrix3<Complex>> mats = tuple.matrices();
        auto& entry = mats[static_cast<std::size_t>(var.k - 1)];
        entry(var.i - 1, var.j - 1) += Complex{h, 0.0};
        return MatrixTuple<Complex>(std::move(mats), MatrixConstraint::GeneralLinear);
    };
    const Complex plus = eval_trace(inv, perturbed(step));
    const Complex minus = eval_trace(inv, perturbed(-step));
    return (plus - minus) / Complex{2.0 * step, 0.0};
}

} // namespace sl3trace
