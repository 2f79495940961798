#include <catch2/catch_amalgamated.hpp>

#include "sl3trace/matrix3.hpp"
#include "sl3trace/rational.hpp"
#include "sl3trace/rng.hpp"
#include "sl3trace/sample.hpp"
#include "sl3trace/tuple.hpp"
#include "sl3trace/word.hpp"

using namespace sl3trace;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

// Small random rationals for property tests, never zero-denominator.
Rational random_rational(SplitMix64& rng) {
    const long long num = rng.next_signed_nonzero(50);
    const long long den = 1 + static_cast<long long>(rng.next_below(50));
    return Rational(num, den);
}

Matrix3<Rational> diag(const Rational& a, const Rational& b, const Rational& c) {
    Matrix3<Rational> m = Matrix3<Rational>::zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

} // namespace

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    CHECK(rng.next() == 0xF88BB8A8724C81ECULL);

    SplitMix64 rng42(42);
    CHECK(rng42.next() == 0xBDD732262FEB6E95ULL);
    CHECK(rng42.next() == 0x28EFE333B266F103ULL);
}

TEST_CASE("derive_seed matches counter-based definition") {
    CHECK(derive_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    CHECK(derive_seed(0, 1) == 0x06C45D188009454FULL);
    CHECK(derive_seed(42, 7) == 0xAA47E31C02E78EDCULL);
    // Distinct labels give distinct streams.
    CHECK(derive_seed(7, 0) != derive_seed(7, 1));
}

TEST_CASE("next_below stays in range and covers values") {
    SplitMix64 rng(123);
    bool seen[6] = {};
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t v = rng.next_below(6);
        REQUIRE(v < 6);
        seen[v] = true;
    }
    for (bool s : seen) CHECK(s);
}

TEST_CASE("rational canonical form and text round-trip") {
    CHECK(rat(2, 4).to_string() == "1/2");
    CHECK(rat(-2, -4).to_string() == "1/2");
    CHECK(rat(2, -4).to_string() == "-1/2");
    CHECK(rat(0, 17).to_string() == "0");
    CHECK(rat(5).to_string() == "5");
    CHECK(Rational::from_string("6/8") == rat(3, 4));
    CHECK(Rational::from_string("-14") == rat(-14));
    CHECK(Rational::from_string(rat(-355, 113).to_string()) == rat(-355, 113));

    CHECK_THROWS_AS(Rational::from_string(""), ParseError);
    CHECK_THROWS_AS(Rational::from_string("x"), ParseError);
    CHECK_THROWS_AS(Rational::from_string("1/0"), ParseError);
    CHECK_THROWS_AS(Rational(1, 0), ParseError);
}

TEST_CASE("rational field arithmetic properties") {
    SplitMix64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        const Rational a = random_rational(rng);
        const Rational b = random_rational(rng);
        const Rational c = random_rational(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == rat(0));
        CHECK(a / a == rat(1));
        CHECK(a * b / b == a);
    }
    CHECK_THROWS_AS(rat(1) / rat(0), Error);
}

TEST_CASE("rational ordering") {
    CHECK(rat(1, 3) < rat(1, 2));
    CHECK(rat(-1, 2) < rat(1, 3));
    CHECK(abs(rat(-7, 3)) == rat(7, 3));
    CHECK(rat(1, 2).sign() == 1);
    CHECK(rat(-1, 2).sign() == -1);
    CHECK(rat(0).sign() == 0);
}

TEST_CASE("matrix basics: trace, det, identity") {
    const auto id = Matrix3<Rational>::identity();
    CHECK(id.trace() == rat(3));
    CHECK(id.det() == rat(1));
    CHECK(id * id == id);

    const auto d = diag(rat(1), rat(2), rat(1, 2));
    CHECK(d.trace() == rat(7, 2));
    CHECK(d.det() == rat(1));
    CHECK(d.is_diagonal());
    CHECK_FALSE(transvection<Rational>(1, 2, 1, 1).is_diagonal());
}

TEST_CASE("inverse agrees with adjugate over det") {
    SplitMix64 seeds(5);
    for (int t = 0; t < 50; ++t) {
        const auto m = sample_sl3<Rational>(seeds.next(), 10);
        const auto inv = m.inverse();
        CHECK(m * inv == Matrix3<Rational>::identity());
        CHECK(inv * m == Matrix3<Rational>::identity());
        // det = 1 makes the inverse equal to the adjugate.
        CHECK(inv == m.adjugate());
    }
}

TEST_CASE("singular matrix has no inverse") {
    auto m = Matrix3<Rational>::zero();
    m(0, 0) = rat(1);
    CHECK_THROWS_AS(m.inverse(), SingularMatrixError);
}

TEST_CASE("det is multiplicative") {
    SplitMix64 seeds(6);
    for (int t = 0; t < 20; ++t) {
        SplitMix64 ra(seeds.next()), rb(seeds.next());
        Matrix3<Rational> a = transvection_product<Rational>(ra, 4, 5);
        Matrix3<Rational> b = transvection_product<Rational>(rb, 4, 5);
        a(0, 1) += rat(3, 7); // leave the unimodular locus
        CHECK((a * b).det() == a.det() * b.det());
    }
}

TEST_CASE("word parsing and free reduction") {
    CHECK(GroupWord::parse("1 -1").empty());
    CHECK(GroupWord::parse("").empty());
    CHECK(GroupWord::parse("1 1") == GroupWord({{1, 2}}));
    CHECK(GroupWord::parse("1 2 -2 -1").empty());
    CHECK(GroupWord::parse("1 2 -1").length() == 3);
    CHECK(GroupWord::parse("3 3 3").letters().size() == 1);
    CHECK(GroupWord::parse("1 2").max_generator() == 2);
    CHECK(GroupWord::parse("1 2").mentions(2));
    CHECK_FALSE(GroupWord::parse("1 2").mentions(3));

    CHECK_THROWS_WITH(GroupWord::parse("1 x 2"), Catch::Matchers::ContainsSubstring("'x'") &&
                                                     Catch::Matchers::ContainsSubstring("2"));
    CHECK_THROWS_AS(GroupWord::parse("0"), ParseError);
    CHECK_THROWS_AS(GroupWord::parse("1.5"), ParseError);
}

TEST_CASE("word inverse and concatenation") {
    const GroupWord w = GroupWord::parse("1 1 -2 3");
    CHECK((w * w.inverse()).empty());
    CHECK((w.inverse() * w).empty());
    CHECK(w.inverse() == GroupWord::parse("-3 2 -1 -1"));
}

TEST_CASE("cyclic normal form identifies rotations and conjugates") {
    const GroupWord w = GroupWord::parse("1 2 -3");
    CHECK(GroupWord::parse("2 -3 1").cyclic_normal_form() == w.cyclic_normal_form());
    CHECK(GroupWord::parse("-3 1 2").cyclic_normal_form() == w.cyclic_normal_form());
    // Conjugation by any word preserves the class.
    const GroupWord g = GroupWord::parse("2 -1");
    CHECK((g * w * g.inverse()).cyclic_normal_form() == w.cyclic_normal_form());
    // But the inverse word is a different class here.
    CHECK(w.inverse().cyclic_normal_form() != w.cyclic_normal_form());
}

TEST_CASE("word display and token round-trip") {
    const GroupWord w = GroupWord::parse("1 1 -2");
    CHECK(w.display() == "X1^2 X2^-1");
    CHECK(GroupWord().display() == "1");
    CHECK(GroupWord::parse(w.to_string()) == w);
}

TEST_CASE("transvection product example") {
    const auto a = transvection<Rational>(1, 2, 1, 1);
    const auto b = transvection<Rational>(2, 1, 1, 1);
    const auto p = a * b;
    Matrix3<Rational> expected = Matrix3<Rational>::identity();
    expected(0, 0) = rat(2);
    expected(0, 1) = rat(1);
    expected(1, 0) = rat(1);
    CHECK(p == expected);
    CHECK(p.det() == rat(1));
}

TEST_CASE("sampled matrices are unimodular for many seeds") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto m = sample_sl3<Rational>(seed, 10);
        REQUIRE(m.det() == rat(1));
    }
}

TEST_CASE("sampling is deterministic and split by label") {
    const auto a = sample_sl3<Rational>(99, 10);
    const auto b = sample_sl3<Rational>(99, 10);
    CHECK(a == b);

    const auto t = sample_sl3_tuple<Rational>(7, 3, 10);
    CHECK(t.rank() == 3);
    CHECK(t.matrix(1) == sample_sl3<Rational>(derive_seed(7, 1), 10));
    CHECK(t.matrix(3) == sample_sl3<Rational>(derive_seed(7, 3), 10));
    CHECK_FALSE(t.matrix(1) == t.matrix(2));
}

TEST_CASE("float sampling draws the same rationals as exact") {
    const auto exact = sample_sl3<Rational>(31, 8);
    const auto fl = sample_sl3<Complex>(31, 8);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(fl(i, j).imag() == 0.0);
            CHECK_THAT(fl(i, j).real(),
                       Catch::Matchers::WithinRel(exact(i, j).to_double(), 1e-12) ||
                           Catch::Matchers::WithinAbs(exact(i, j).to_double(), 1e-12));
        }
}

TEST_CASE("tuple constructor enforces the unimodular constraint") {
    auto good = Matrix3<Rational>::identity();
    CHECK_NOTHROW(MatrixTuple<Rational>({good}, MatrixConstraint::SpecialLinear));

    auto bad = Matrix3<Rational>::identity();
    bad(0, 0) = rat(2);
    CHECK_THROWS_AS(MatrixTuple<Rational>({bad}, MatrixConstraint::SpecialLinear), Error);
    CHECK_NOTHROW(MatrixTuple<Rational>({bad}, MatrixConstraint::GeneralLinear));
}

TEST_CASE("word evaluation on tuples") {
    const auto t = sample_sl3_tuple<Rational>(11, 2, 6);
    CHECK(word_eval(GroupWord(), t) == Matrix3<Rational>::identity());
    CHECK(word_eval(GroupWord::parse("1 -1"), t) == Matrix3<Rational>::identity());
    CHECK(word_eval(GroupWord::parse("1 2"), t) == t.matrix(1) * t.matrix(2));
    CHECK(word_eval(GroupWord::parse("-2"), t) == t.matrix(2).inverse());
    CHECK_THROWS_AS(word_eval(GroupWord::parse("3"), t), RankMismatchError);
}

TEST_CASE("conjugation preserves traces of all words") {
    SplitMix64 seeds(17);
    const auto t = sample_sl3_tuple<Rational>(13, 2, 6);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = sample_sl3<Rational>(seeds.next(), 6);
        const auto ct = conjugate_tuple(g, t);
        for (const char* wtext : {"1", "2", "1 2", "1 -2", "1 2 -1 -2"}) {
            const GroupWord w = GroupWord::parse(wtext);
            CHECK(word_eval(w, ct).trace() == word_eval(w, t).trace());
        }
    }
}
