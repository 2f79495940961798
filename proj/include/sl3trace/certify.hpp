#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sl3trace/calculus.hpp"
#include "sl3trace/cubic.hpp"
#include "sl3trace/invariants.hpp"
#include "sl3trace/linalg.hpp"
#include "sl3trace/sample.hpp"
#include "sl3trace/tuple.hpp"

namespace sl3trace {

// The five alternatives for the third word triple per generator, plus the
// gl(3) lift that trades inverses for squares and appends cubes.
enum class Variant { C1, C2, C3, C4, C5, GL3Lift };

inline std::string variant_name(Variant v) {
    switch (v) {
        case Variant::C1: return "C1";
        case Variant::C2: return "C2";
        case Variant::C3: return "C3";
        case Variant::C4: return "C4";
        case Variant::C5: return "C5";
        case Variant::GL3Lift: return "GL3Lift";
    }
    throw Error("unknown variant");
}

inline Variant variant_from_name(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "c1") return Variant::C1;
    if (name == "c2") return Variant::C2;
    if (name == "c3") return Variant::C3;
    if (name == "c4") return Variant::C4;
    if (name == "c5") return Variant::C5;
    if (name == "gl3" || name == "gl3lift") return Variant::GL3Lift;
    throw ParseError("unknown variant '" + name + "' (expected c1..c5 or gl3)");
}

constexpr std::array<Variant, 5> kSpecialLinearVariants{Variant::C1, Variant::C2, Variant::C3,
                                                        Variant::C4, Variant::C5};

struct ParameterSet {
    int rank = 0;
    Variant variant = Variant::C1;
    std::vector<TraceInvariant> invariants;

    std::size_t size() const { return invariants.size(); }
};

struct VariableSet {
    int rank = 0;
    std::vector<VariableIndex> vars;

    std::size_t size() const { return vars.size(); }
};

// The proof's 8r-8 coordinates: two diagonal entries of X_1, six entries of
// X_2, and all entries but (3,1) of each X_k for k >= 3.
inline VariableSet variable_set(int r) {
    if (r < 2) throw RankTooSmallError("variable_set requires rank >= 2");
    VariableSet out;
    out.rank = r;
    out.vars = {{1, 1, 1}, {1, 2, 2},
                {2, 1, 1}, {2, 2, 1}, {2, 1, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}};
    for (int k = 3; k <= r; ++k)
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (!(i == 3 && j == 1)) out.vars.push_back({k, i, j});
    return out;
}

// Jacobian columns for a variant. The gl(3) lift drops the det = 1 relation,
// so each generator regains its (3,1) entry; appending it to the generator's
// own group keeps the matrix block-triangular. Sizes: 8r-8 and 9r-8.
inline VariableSet certification_variables(int r, Variant variant) {
    if (variant != Variant::GL3Lift) return variable_set(r);
    if (r < 2) throw RankTooSmallError("certification_variables requires rank >= 2");
    VariableSet out;
    out.rank = r;
    out.vars = {{1, 1, 1}, {1, 2, 2}, {1, 3, 1},
                {2, 1, 1}, {2, 2, 1}, {2, 1, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {2, 3, 1}};
    for (int k = 3; k <= r; ++k) {
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (!(i == 3 && j == 1)) out.vars.push_back({k, i, j});
        out.vars.push_back({k, 3, 1});
    }
    return out;
}

namespace detail {

inline TraceInvariant word1(int a, int ea) {
    return TraceInvariant(GroupWord({Letter{a, ea}}));
}

inline TraceInvariant word2(int a, int ea, int b, int eb) {
    return TraceInvariant(GroupWord({Letter{a, ea}, Letter{b, eb}}));
}

inline std::vector<TraceInvariant> third_triple(Variant v, int k) {
    switch (v) {
        case Variant::C1:
            return {word2(1, -1, k, -1), word2(1, -1, k, 1), word2(2, -1, k, -1)};
        case Variant::C2:
            return {word2(1, -1, k, -1), word2(1, -1, k, 1), word2(2, -1, k, 1)};
        case Variant::C3:
            return {word2(1, -1, k, -1), word2(1, -1, k, 1), word2(2, 1, k, -1)};
        case Variant::C4:
            return {word2(1, -1, k, 1), word2(2, -1, k, 1), word2(2, 1, k, -1)};
        case Variant::C5:
            return {word2(1, -1, k, -1), word2(2, 1, k, -1), word2(2, -1, k, -1)};
        case Variant::GL3Lift:
            break;
    }
    throw Error("third_triple: not a special-linear variant");
}

} // namespace detail

inline ParameterSet parameter_set(int r, Variant variant) {
    if (r < 1) throw RankTooSmallError("parameter_set requires rank >= 1");
    using detail::word1;
    using detail::word2;
    ParameterSet out;
    out.rank = r;
    out.variant = variant;

    if (variant == Variant::GL3Lift) {
        if (r == 1) {
            out.invariants = {word1(1, 1), word1(1, 2), word1(1, 3)};
            return out;
        }
        out.invariants = {word1(1, 1), word1(2, 1), word1(1, 2), word1(2, 2),
                          word1(1, 3), word1(2, 3), word2(1, 1, 2, 1),
                          word2(1, 2, 2, 1), word2(2, 2, 1, 1), word2(1, 2, 2, 2)};
        for (int k = 3; k <= r; ++k) {
            out.invariants.push_back(word1(k, 1));
            out.invariants.push_back(word1(k, 2));
            out.invariants.push_back(word1(k, 3));
            out.invariants.push_back(word2(1, 1, k, 1));
            out.invariants.push_back(word2(2, 1, k, 1));
            out.invariants.push_back(word2(1, 1, k, 2));
            out.invariants.push_back(word2(1, 2, k, 2));
            out.invariants.push_back(word2(1, 2, k, 1));
            out.invariants.push_back(word2(2, 2, k, 2));
        }
        return out;
    }

    if (r == 1) {
        out.invariants = {word1(1, 1), word1(1, -1)};
        return out;
    }
    // The pair block, then one five-word and one three-word block per extra
    // generator.
    out.invariants = {word1(1, 1),      word1(2, 1),        word1(1, -1),
                      word1(2, -1),     word2(1, 1, 2, 1),  word2(1, -1, 2, 1),
                      word2(2, -1, 1, 1), word2(1, -1, 2, -1)};
    for (int k = 3; k <= r; ++k) {
        out.invariants.push_back(word1(k, 1));
        out.invariants.push_back(word1(k, -1));
        out.invariants.push_back(word2(1, 1, k, 1));
        out.invariants.push_back(word2(2, 1, k, 1));
        out.invariants.push_back(word2(1, 1, k, -1));
        for (TraceInvariant& w : detail::third_triple(variant, k))
            out.invariants.push_back(std::move(w));
    }
    return out;
}

namespace detail {

template <ScalarField S>
void require_distinct_eigenvalues(const std::array<S, 3>& lambda) {
    if constexpr (ScalarTraits<S>::exact) {
        if (lambda[0] == lambda[1] || lambda[0] == lambda[2] || lambda[1] == lambda[2])
            throw RepeatedEigenvaluesError("eigenvalues are not distinct");
    } else {
        double scale = 1.0;
        for (const S& l : lambda) scale = std::max(scale, std::abs(l));
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (std::abs(lambda[static_cast<std::size_t>(a)] -
                             lambda[static_cast<std::size_t>(b)]) <= 1e-9 * scale)
                    throw RepeatedEigenvaluesError("eigenvalues are not distinct");
    }
}

// Descending (re, im) lexicographic order; pinned by the cyclic-permutation
// example, whose normal form starts with eigenvalue 1.
inline bool eigen_order_after(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

inline Matrix3<Complex> eigenbasis(const Matrix3<Complex>& m, std::array<Complex, 3>& lambda) {
    Eigen::Matrix3cd em;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) em(i, j) = m(i, j);
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(em, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return eigen_order_after(solver.eigenvalues()(a), solver.eigenvalues()(b));
    });
    Matrix3<Complex> p;
    for (int c = 0; c < 3; ++c) {
        lambda[static_cast<std::size_t>(c)] = solver.eigenvalues()(order[static_cast<std::size_t>(c)]);
        for (int i = 0; i < 3; ++i)
            p(i, c) = solver.eigenvectors()(i, order[static_cast<std::size_t>(c)]);
    }
    return p;
}

inline Matrix3<Rational> eigenbasis(const Matrix3<Rational>& m, std::array<Rational, 3>& lambda) {
    std::array<Rational, 3> roots = rational_eigenvalues(m); // ascending
    std::reverse(roots.begin(), roots.end());
    Matrix3<Rational> p;
    for (int c = 0; c < 3; ++c) {
        lambda[static_cast<std::size_t>(c)] = roots[static_cast<std::size_t>(c)];
        Matrix3<Rational> shifted = m;
        for (int d = 0; d < 3; ++d)
            shifted(d, d) -= roots[static_cast<std::size_t>(c)];
        const std::array<Rational, 3> v = kernel_vector(shifted);
        for (int i = 0; i < 3; ++i) p(i, c) = v[static_cast<std::size_t>(i)];
    }
    return p;
}

} // namespace detail

// Conjugate the tuple so that X_1 is diagonal (eigenvalues in descending
// (re, im) order) and X_2 has ones on its lower diagonal, via the diagonal
// gauge D = diag(1, x^2_21, x^2_21 * x^2_32). A tuple whose X_1 is already
// diagonal keeps its eigenvalue order. Trace invariants are untouched by
// construction. Exact mode insists on rational eigenvalues.
template <ScalarField S>
MatrixTuple<S> normalize_pair(const MatrixTuple<S>& tuple) {
    if (tuple.rank() < 2) throw RankTooSmallError("normalize_pair requires rank >= 2");

    MatrixTuple<S> work = tuple;
    const Matrix3<S>& x1 = tuple.matrix(1);
    if (x1.is_diagonal()) {
        detail::require_distinct_eigenvalues<S>({x1(0, 0), x1(1, 1), x1(2, 2)});
    } else {
        std::array<S, 3> lambda;
        const Matrix3<S> p = detail::eigenbasis(x1, lambda);
        detail::require_distinct_eigenvalues<S>(lambda);
        work = conjugate_tuple(p.inverse(), tuple);
    }

    const Matrix3<S>& x2 = work.matrix(2);
    const S a = x2(1, 0); // (2,1)
    const S b = x2(2, 1); // (3,2)
    if (ScalarTraits<S>::is_zero(a) || ScalarTraits<S>::is_zero(b))
        throw ZeroLowerDiagonalError("X2 lower diagonal vanishes after diagonalization");
    Matrix3<S> d = Matrix3<S>::zero();
    d(0, 0) = ScalarTraits<S>::one();
    d(1, 1) = a;
    d(2, 2) = a * b;
    return conjugate_tuple(d.inverse(), work);
}

enum class Verdict { Independent, NotCertified };

inline std::string verdict_name(Verdict v) {
    return v == Verdict::Independent ? "Independent" : "NotCertified";
}

template <ScalarField S>
struct IndependenceCertificate {
    ParameterSet parameter_set;
    VariableSet variable_set;
    MatrixTuple<S> sample;
    S determinant = ScalarTraits<S>::zero();
    ScalarMode mode = ScalarTraits<S>::mode;
    Verdict verdict = Verdict::NotCertified;
    std::uint64_t seed = 0;
    int height = 0;
    int sample_index = -1;  // index of the reported sample
    int samples_tried = 0;
};

struct CertifyOptions {
    int num_samples = 5;
    std::uint64_t seed = 0;
    int height = 10;
};

// Relative floor under which a float determinant is treated as vanishing;
// scaled by the Hadamard bound of the Jacobian, the natural geometric size
// of its determinant.
inline constexpr double kFloatDetThreshold = 1e-8;

namespace detail {

template <ScalarField S>
bool determinant_is_nonzero(const S& det, const DenseMatrix<S>& jac) {
    if constexpr (ScalarTraits<S>::exact) {
        (void)jac;
        return !det.is_zero();
    } else {
        return std::abs(det) > kFloatDetThreshold * hadamard_bound(jac);
    }
}

} // namespace detail

// Evaluate the square Jacobian of an explicit parameter/variable pairing at
// up to num_samples random unimodular tuples; the first exactly-nonzero
// determinant (or float determinant above threshold) certifies independence.
// One nonzero exact evaluation is a proof; NotCertified proves nothing.
template <ScalarField S>
IndependenceCertificate<S> certify_independence(const ParameterSet& params,
                                                const VariableSet& vars,
                                                const CertifyOptions& options = {}) {
    if (params.rank < 2) throw RankTooSmallError("certification requires rank >= 2");
    if (params.size() != vars.size())
        throw Error("certification needs a square Jacobian: " + std::to_string(params.size()) +
                    " functions vs " + std::to_string(vars.size()) + " variables");
    if (options.num_samples < 1) throw Error("num_samples must be positive");

    IndependenceCertificate<S> cert;
    cert.parameter_set = params;
    cert.variable_set = vars;
    cert.seed = options.seed;
    cert.height = options.height;

    for (int n = 0; n < options.num_samples; ++n) {
        MatrixTuple<S> sample =
            sample_sl3_tuple<S>(derive_seed(options.seed, static_cast<std::uint64_t>(n)),
                                params.rank, options.height);
        const JacobianMatrix<S> jac =
            jacobian<S>(params.invariants, vars.vars, sample);
        S det = determinant(jac.entries);
        cert.samples_tried = n + 1;
        const bool nonzero = detail::determinant_is_nonzero(det, jac.entries);
        cert.sample = std::move(sample);
        cert.determinant = std::move(det);
        cert.sample_index = n;
        if (nonzero) {
            cert.verdict = Verdict::Independent;
            return cert;
        }
    }
    cert.verdict = Verdict::NotCertified;
    return cert;
}

template <ScalarField S>
IndependenceCertificate<S> certify_independence(int r, Variant variant,
                                                const CertifyOptions& options = {}) {
    if (r < 2) throw RankTooSmallError("certify_independence requires rank >= 2");
    return certify_independence<S>(parameter_set(r, variant), certification_variables(r, variant),
                                   options);
}

// --- block structure of the Jacobian ---------------------------------------

template <ScalarField S>
struct BlockStructureReport {
    bool zero_block_is_zero = false;     // rows constant in X_r have zero derivative there
    bool blocks_match_relabeled = false; // N_k at (X1,X2,Xk) equals the rank-3 block
    bool determinant_factors = false;    // det(full) = det(M) * prod det(N_k)
    S full_determinant = ScalarTraits<S>::zero();
    S head_determinant = ScalarTraits<S>::zero();
    std::vector<S> block_determinants;
};

namespace detail {

inline bool mentions_generator_at_least(const TraceInvariant& inv, int k) {
    return inv.word().max_generator() >= k;
}

template <ScalarField S>
bool scalars_close(const S& a, const S& b) {
    if constexpr (ScalarTraits<S>::exact) {
        return a == b;
    } else {
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        return std::abs(a - b) <= 1e-9 * scale;
    }
}

} // namespace detail

// Checks the three structural facts behind the induction step: the zero
// block over the last generator's variables, the label-equivalence of the
// per-generator diagonal blocks with the rank-3 block, and the factorization
// of the full determinant through the diagonal blocks.
template <ScalarField S>
BlockStructureReport<S> block_structure_check(int r, Variant variant,
                                              const MatrixTuple<S>& tuple) {
    if (r < 3) throw RankTooSmallError("block_structure_check requires rank >= 3");
    if (tuple.rank() != r)
        throw RankMismatchError("tuple rank " + std::to_string(tuple.rank()) +
                                " does not match requested rank " + std::to_string(r));

    const ParameterSet params = parameter_set(r, variant);
    const VariableSet vars = certification_variables(r, variant);

    BlockStructureReport<S> report;

    // (i) Every function not involving X_r is constant in all nine of its
    // entries, not merely the selected columns.
    report.zero_block_is_zero = true;
    for (const TraceInvariant& inv : params.invariants) {
        if (detail::mentions_generator_at_least(inv, r)) continue;
        const std::vector<Matrix3<S>> grad = trace_gradient(inv.word(), tuple);
        const Matrix3<S>& gr = grad[static_cast<std::size_t>(r - 1)];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!ScalarTraits<S>::is_zero(gr(i, j))) report.zero_block_is_zero = false;
    }

    // Slice the function list and the variable list by generator block.
    const std::size_t head_rows =
        static_cast<std::size_t>(std::count_if(params.invariants.begin(), params.invariants.end(),
                                               [](const TraceInvariant& inv) {
                                                   return !detail::mentions_generator_at_least(inv, 3);
                                               }));
    const std::size_t block_rows = (params.size() - head_rows) / static_cast<std::size_t>(r - 2);

    std::size_t head_cols = 0;
    while (head_cols < vars.size() && vars.vars[head_cols].k <= 2) ++head_cols;
    const std::size_t block_cols = (vars.size() - head_cols) / static_cast<std::size_t>(r - 2);
    if (block_rows != block_cols)
        throw Error("block_structure_check: non-square generator blocks");

    // (ii) Each diagonal block, evaluated with X_k moved into slot 3 of a
    // rank-3 tuple, must reproduce the rank-3 block entry for entry.
    const ParameterSet params3 = parameter_set(3, variant);
    const VariableSet vars3 = certification_variables(3, variant);
    report.blocks_match_relabeled = true;
    for (int k = 3; k <= r; ++k) {
        const std::size_t row_off = head_rows + block_rows * static_cast<std::size_t>(k - 3);
        const std::size_t col_off = head_cols + block_cols * static_cast<std::size_t>(k - 3);

        std::vector<Matrix3<S>> small{tuple.matrix(1), tuple.matrix(2), tuple.matrix(k)};
        const MatrixTuple<S> relabeled(std::move(small), tuple.constraint());

        for (std::size_t a = 0; a < block_rows; ++a) {
            const std::vector<Matrix3<S>> grad_full =
                trace_gradient(params.invariants[row_off + a].word(), tuple);
            const std::vector<Matrix3<S>> grad_small =
                trace_gradient(params3.invariants[head_rows + a].word(), relabeled);
            for (std::size_t b = 0; b < block_cols; ++b) {
                const VariableIndex& vk = vars.vars[col_off + b];
                const VariableIndex& v3 = vars3.vars[head_cols + b];
                const S full = grad_full[static_cast<std::size_t>(vk.k - 1)](vk.i - 1, vk.j - 1);
                const S small_entry =
                    grad_small[static_cast<std::size_t>(v3.k - 1)](v3.i - 1, v3.j - 1);
                if (!detail::scalars_close(full, small_entry))
                    report.blocks_match_relabeled = false;
            }
        }
    }

    // (iii) Determinant factorization across the block-triangular layout.
    const JacobianMatrix<S> jac = jacobian<S>(params.invariants, vars.vars, tuple);
    report.full_determinant = determinant(jac.entries);
    report.head_determinant = determinant(jac.entries.submatrix(0, 0, head_rows, head_cols));
    S product = report.head_determinant;
    for (int k = 3; k <= r; ++k) {
        const std::size_t row_off = head_rows + block_rows * static_cast<std::size_t>(k - 3);
        const std::size_t col_off = head_cols + block_cols * static_cast<std::size_t>(k - 3);
        S block_det =
            determinant(jac.entries.submatrix(row_off, col_off, block_rows, block_cols));
        product = product * block_det;
        report.block_determinants.push_back(std::move(block_det));
    }
    report.determinant_factors = detail::scalars_close(report.full_determinant, product);
    return report;
}

} // namespace sl3trace
