#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sl3trace/invariants.hpp"
#include "sl3trace/matrix3.hpp"
#include "sl3trace/rational.hpp"

namespace sl3trace {

// Dense univariate polynomial over the rationals, coefficient of x^i at
// index i. Only what the eigenvalue routine needs: this is not a general
// polynomial arithmetic layer.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RationalPoly cubic(const Rational& a3, const Rational& a2, const Rational& a1,
                              const Rational& a0) {
        return RationalPoly({a0, a1, a2, a3});
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const Rational& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const {
        Rational acc{0};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    RationalPoly derivative() const {
        if (c_.size() <= 1) return RationalPoly{};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * Rational(static_cast<long long>(i));
        return RationalPoly(std::move(d));
    }

    RationalPoly monic() const {
        if (is_zero()) return {};
        std::vector<Rational> m(c_);
        const Rational lead = c_.back();
        for (Rational& x : m) x /= lead;
        return RationalPoly(std::move(m));
    }

    RationalPoly negated() const {
        std::vector<Rational> m(c_);
        for (Rational& x : m) x = -x;
        return RationalPoly(std::move(m));
    }

    // Euclidean remainder; divisor must be nonzero.
    RationalPoly remainder(const RationalPoly& divisor) const {
        if (divisor.is_zero()) throw Error("polynomial remainder by zero");
        std::vector<Rational> r(c_);
        const int dd = divisor.degree();
        while (static_cast<int>(r.size()) - 1 >= dd) {
            while (!r.empty() && r.back().is_zero()) r.pop_back();
            if (static_cast<int>(r.size()) - 1 < dd) break;
            const Rational q = r.back() / divisor.leading();
            const std::size_t shift = r.size() - 1 - static_cast<std::size_t>(dd);
            for (int i = 0; i <= dd; ++i)
                r[shift + static_cast<std::size_t>(i)] -=
                    q * divisor.coeff(i);
            r.pop_back(); // leading term cancels exactly
        }
        return RationalPoly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    while (!b.is_zero()) {
        RationalPoly r = a.remainder(b).monic(); // monic keeps coefficients small
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail {

inline std::vector<RationalPoly> sturm_chain(const RationalPoly& f) {
    std::vector<RationalPoly> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero()) {
        RationalPoly next = chain[chain.size() - 2].remainder(chain.back()).negated();
        if (next.is_zero()) break;
        chain.push_back(std::move(next));
    }
    return chain;
}

inline int sign_variations(const std::vector<RationalPoly>& chain, const Rational& x) {
    int variations = 0;
    int prev = 0;
    for (const RationalPoly& p : chain) {
        const int s = p.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

// Number of distinct real roots of the (squarefree) chain head in (a, b].
inline int roots_in(const std::vector<RationalPoly>& chain, const Rational& a,
                    const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

inline mpz_class round_nearest(const Rational& x) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    if (mpz_class(2 * r) >= x.den()) q += 1;
    return q;
}

} // namespace detail

// Characteristic polynomial of a 3x3 matrix: t^3 - tr(M) t^2 + c2(M) t - det(M).
inline RationalPoly char_poly(const Matrix3<Rational>& m) {
    return RationalPoly::cubic(Rational(1), -m.trace(), second_coefficient(m), -m.det());
}

// The three eigenvalues of m, sorted ascending, when they are distinct and
// rational. RepeatedEigenvaluesError when the characteristic polynomial is
// not squarefree; IrrationalEigenvaluesError when a root is irrational or
// non-real. Exact throughout: Sturm isolation narrows each root to an
// interval containing at most one fraction with denominator dividing the
// cleared leading coefficient, and that candidate is verified by evaluation.
inline std::array<Rational, 3> rational_eigenvalues(const Matrix3<Rational>& m) {
    const RationalPoly f = char_poly(m);
    if (poly_gcd(f, f.derivative()).degree() > 0)
        throw RepeatedEigenvaluesError("matrix has repeated eigenvalues");

    // Rational root theorem: after clearing denominators the leading integer
    // coefficient is L, so every rational root is n/L for integral n.
    mpz_class L = 1;
    for (int i = 0; i < 3; ++i) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), L.get_mpz_t(), f.coeff(i).den().get_mpz_t());
        L = l;
    }
    const Rational resolution(mpq_class(mpz_class(1), mpz_class(2) * L)); // 1/(2L)

    // Cauchy bound: every root lies strictly inside (-B, B).
    Rational bound{1};
    for (int i = 0; i < 3; ++i) bound += abs(f.coeff(i));

    const std::vector<RationalPoly> chain = detail::sturm_chain(f);
    if (detail::roots_in(chain, -bound, bound) != 3)
        throw IrrationalEigenvaluesError("matrix has non-real eigenvalues");

    std::vector<std::pair<Rational, Rational>> pending{{-bound, bound}};
    std::array<Rational, 3> roots;
    std::size_t found = 0;
    while (!pending.empty()) {
        auto [a, b] = pending.back();
        pending.pop_back();
        const int count = detail::roots_in(chain, a, b);
        if (count == 0) continue;
        if (count == 1 && b - a < resolution) {
            const Rational mid = (a + b) / Rational(2);
            const mpz_class n = detail::round_nearest(Rational(mpq_class(mid.raw() * L)));
            const Rational candidate(mpq_class(n, L));
            // The candidate must both vanish and sit in this interval; a
            // rational root of an adjacent interval can round into view when
            // this interval's root is irrational.
            if (!f.eval(candidate).is_zero() || !(a < candidate && candidate <= b))
                throw IrrationalEigenvaluesError("matrix has irrational eigenvalues");
            if (found >= 3) throw Error("rational_eigenvalues: root bookkeeping overflow");
            roots[found++] = candidate;
            continue;
        }
        const Rational mid = (a + b) / Rational(2);
        pending.emplace_back(a, mid);
        pending.emplace_back(mid, b);
    }
    if (found != 3) throw IrrationalEigenvaluesError("matrix has irrational eigenvalues");

    std::sort(roots.begin(), roots.end());
    return roots;
}

// A nonzero kernel vector of a singular matrix, exact. Used to assemble the
// eigenbasis; the caller guarantees rank 2 (simple eigenvalue), but any
// singular input yields some nonzero kernel element.
inline std::array<Rational, 3> kernel_vector(const Matrix3<Rational>& m) {
    // Row echelon by exact elimination.
    std::array<std::array<Rational, 3>, 3> rows;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);

    std::array<int, 3> pivot_col{-1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int pivot = -1;
        for (int row = rank; row < 3; ++row)
            if (!rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        const auto& prow = rows[static_cast<std::size_t>(rank)];
        for (int row = rank + 1; row < 3; ++row) {
            auto& target = rows[static_cast<std::size_t>(row)];
            if (target[static_cast<std::size_t>(col)].is_zero()) continue;
            const Rational factor = target[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
            for (int j = col; j < 3; ++j)
                target[static_cast<std::size_t>(j)] -= factor * prow[static_cast<std::size_t>(j)];
        }
        pivot_col[static_cast<std::size_t>(rank)] = col;
        ++rank;
    }
    if (rank == 3) throw Error("kernel_vector: matrix is invertible");

    // Free variable: first column that is not a pivot; set it to 1 and
    // back-substitute.
    std::array<bool, 3> is_pivot{false, false, false};
    for (int r = 0; r < rank; ++r) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
    int free_col = 0;
    while (is_pivot[static_cast<std::size_t>(free_col)]) ++free_col;

    std::array<Rational, 3> v{Rational(0), Rational(0), Rational(0)};
    v[static_cast<std::size_t>(free_col)] = Rational(1);
    for (int r = rank - 1; r >= 0; --r) {
        const int pc = pivot_col[static_cast<std::size_t>(r)];
        Rational s{0};
        for (int j = pc + 1; j < 3; ++j)
            s += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
        v[static_cast<std::size_t>(pc)] = -s / rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(pc)];
    }
    return v;
}

} // namespace sl3trace
