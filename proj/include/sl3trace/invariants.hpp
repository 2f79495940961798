#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sl3trace/errors.hpp"
#include "sl3trace/tuple.hpp"

namespace sl3trace {

// Degree of nilpotency d(m): the word-length bound for trace generators of
// m x m matrix invariants. Known values only.
inline int nilpotency_degree(int m) {
    switch (m) {
        case 2: return 3;
        case 3: return 6;
        case 4: return 10;
        default: throw Error("nilpotency degree known only for m = 2, 3, 4");
    }
}

// tr(W) as a function on matrix tuples. Stored in cyclic normal form, so two
// invariants compare equal exactly when they agree on every tuple by cyclic
// rotation of the word.
class TraceInvariant {
public:
    explicit TraceInvariant(const GroupWord& word) : word_(word.cyclic_normal_form()) {}

    static TraceInvariant parse(const std::string& text) {
        return TraceInvariant(GroupWord::parse(text));
    }

    const GroupWord& word() const { return word_; }

    std::string display() const { return "tr(" + word_.display() + ")"; }
    std::string to_string() const { return word_.to_string(); }

    friend bool operator==(const TraceInvariant&, const TraceInvariant&) = default;
    friend bool operator<(const TraceInvariant& a, const TraceInvariant& b) {
        return a.word_ < b.word_;
    }

private:
    GroupWord word_;
};

template <ScalarField S>
S eval_trace(const TraceInvariant& inv, const MatrixTuple<S>& tuple) {
    return word_eval(inv.word(), tuple).trace();
}

// Second coefficient of the characteristic polynomial,
// c2(X) = (tr(X)^2 - tr(X^2)) / 2 = tr(adj X). Equals tr(X^-1) when det = 1.
template <ScalarField S>
S second_coefficient(const Matrix3<S>& x) {
    const S t = x.trace();
    const S t2 = (x * x).trace();
    return (t * t - t2) / ScalarTraits<S>::from_int(2);
}

inline mpz_class binomial_mpz(unsigned n, unsigned k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
    const mpz_class b = binomial_mpz(n, k);
    if (!b.fits_ulong_p()) throw Error("binomial overflows 64 bits");
    return static_cast<std::uint64_t>(b.get_ui());
}

// Closed-form count of minimal generators,
// N_r = (r/240) (396 + 65 r^2 - 5 r^3 + 19 r^4 + 5 r^5),
// evaluated with exact integer arithmetic.
inline std::uint64_t count_generators(unsigned r) {
    if (r < 1) throw Error("rank must be >= 1");
    const mpz_class n(static_cast<unsigned long>(r));
    const mpz_class poly = 396 + 65 * n * n - 5 * n * n * n + 19 * n * n * n * n +
                           5 * n * n * n * n * n;
    const mpz_class numerator = n * poly;
    mpz_class q, rem;
    mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), numerator.get_mpz_t(), 240);
    if (rem != 0) throw NonIntegralError("generator-count formula did not yield an integer");
    if (!q.fits_ulong_p()) throw Error("generator count overflows 64 bits");
    return static_cast<std::uint64_t>(q.get_ui());
}

// One word shape from the minimal-generator table: a pattern over distinct
// symbols (1-based symbol slots with exponents), the number of generators of
// that shape per subset, and the subset size it ranges over.
struct CatalogForm {
    std::string shape;                 // e.g. "tr(XYZ^-1)"
    std::vector<Letter> pattern;       // gen field = symbol slot 1..subset_size
    int multiplicity;
    unsigned subset_size;
};

// The 19 shapes, in table order. Every pattern stays within word length 6,
// the degree of nilpotency for 3x3 matrices.
inline const std::array<CatalogForm, 19>& catalog_forms() {
    static const std::array<CatalogForm, 19> forms = {{
        {"tr(X)", {{1, 1}}, 1, 1},
        {"tr(X^-1)", {{1, -1}}, 1, 1},
        {"tr(XY)", {{1, 1}, {2, 1}}, 1, 2},
        {"tr(XY^-1)", {{1, 1}, {2, -1}}, 2, 2},
        {"tr(X^-1Y^-1)", {{1, -1}, {2, -1}}, 1, 2},
        {"tr(XYX^-1Y^-1)", {{1, 1}, {2, 1}, {1, -1}, {2, -1}}, 1, 2},
        {"tr(XYZ)", {{1, 1}, {2, 1}, {3, 1}}, 2, 3},
        {"tr(XYZ^-1)", {{1, 1}, {2, 1}, {3, -1}}, 6, 3},
        {"tr(XYZY^-1)", {{1, 1}, {2, 1}, {3, 1}, {2, -1}}, 3, 3},
        {"tr(XY^-1Z^-1)", {{1, 1}, {2, -1}, {3, -1}}, 6, 3},
        {"tr(XYZ^-1Y^-1)", {{1, 1}, {2, 1}, {3, -1}, {2, -1}}, 6, 3},
        {"tr(X^-1Y^-1Z^-1)", {{1, -1}, {2, -1}, {3, -1}}, 1, 3},
        {"tr(WXYZ)", {{1, 1}, {2, 1}, {3, 1}, {4, 1}}, 5, 4},
        {"tr(WXYZ^-1)", {{1, 1}, {2, 1}, {3, 1}, {4, -1}}, 20, 4},
        {"tr(WXY^-1Z^-1)", {{1, 1}, {2, 1}, {3, -1}, {4, -1}}, 18, 4},
        {"tr(WXYZY^-1)", {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {3, -1}}, 8, 4},
        {"tr(UVWXY)", {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}}, 12, 5},
        {"tr(VWXYZ^-1)", {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, -1}}, 35, 5},
        {"tr(UVWXYZ)", {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}}, 15, 6},
    }};
    return forms;
}

struct GeneratorCatalog {
    struct Row {
        std::string shape;
        int multiplicity;
        unsigned subset_size;
        std::uint64_t count; // multiplicity * C(rank, subset_size)
    };

    unsigned rank = 0;
    std::vector<Row> rows; // all 19, table order
    std::uint64_t total = 0;
};

// Shape table instantiated at rank r. total always agrees with
// count_generators(r); that identity is a test, not an assumption.
inline GeneratorCatalog generator_catalog(unsigned r) {
    if (r < 1) throw Error("rank must be >= 1");
    GeneratorCatalog cat;
    cat.rank = r;
    for (const CatalogForm& f : catalog_forms()) {
        const std::uint64_t count =
            static_cast<std::uint64_t>(f.multiplicity) * binomial(r, f.subset_size);
        cat.rows.push_back({f.shape, f.multiplicity, f.subset_size, count});
        cat.total += count;
    }
    return cat;
}

namespace detail {

// All cyclic-equivalence classes obtained by assigning the generators in
// `subset` (ascending) to the pattern's symbol slots, sorted by normal form.
inline std::vector<GroupWord> shape_classes(const CatalogForm& form,
                                            const std::vector<int>& subset) {
    std::vector<int> perm = subset; // ascending start for next_permutation
    std::set<GroupWord> classes;
    do {
        std::vector<Letter> letters;
        letters.reserve(form.pattern.size());
        for (const Letter& slot : form.pattern)
            letters.push_back(Letter{perm[static_cast<std::size_t>(slot.gen - 1)], slot.exp});
        classes.insert(GroupWord(std::move(letters)).cyclic_normal_form());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {classes.begin(), classes.end()};
}

inline void for_each_subset(unsigned r, unsigned size,
                            const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> subset(size);
    std::iota(subset.begin(), subset.end(), 1);
    if (size > r) return;
    while (true) {
        fn(subset);
        int i = static_cast<int>(size) - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] ==
                             static_cast<int>(r - size) + i + 1)
            --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (auto j = static_cast<std::size_t>(i) + 1; j < size; ++j)
            subset[j] = subset[j - 1] + 1;
    }
}

} // namespace detail

// Representative words for one form: for each size-k subset of generators,
// the first `multiplicity` cyclic classes in lexicographic order. This
// selection is a fixed convention; the table's multiplicities are what the
// theory certifies, not this particular choice of class representatives.
inline std::vector<TraceInvariant> representative_words(const CatalogForm& form, unsigned r) {
    std::vector<TraceInvariant> out;
    detail::for_each_subset(r, form.subset_size, [&](const std::vector<int>& subset) {
        const std::vector<GroupWord> classes = detail::shape_classes(form, subset);
        if (classes.size() < static_cast<std::size_t>(form.multiplicity))
            throw Error("shape " + form.shape + " has fewer cyclic classes than its multiplicity");
        for (int t = 0; t < form.multiplicity; ++t)
            out.push_back(TraceInvariant(classes[static_cast<std::size_t>(t)]));
    });
    return out;
}

inline std::vector<TraceInvariant> catalog_representatives(unsigned r) {
    std::vector<TraceInvariant> out;
    for (const CatalogForm& f : catalog_forms()) {
        std::vector<TraceInvariant> words = representative_words(f, r);
        out.insert(out.end(), words.begin(), words.end());
    }
    return out;
}

} // namespace sl3trace
