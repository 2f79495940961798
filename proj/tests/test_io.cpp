#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include "sl3trace/io.hpp"
#include "sl3trace/sample.hpp"

using namespace sl3trace;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("exact tuples round-trip bit for bit") {
    for (std::uint64_t seed : {0ull, 1ull, 9ull, 1234ull}) {
        const auto t = sample_sl3_tuple<Rational>(seed, 3, 12);
        const std::string text = write_tuple(t);
        const auto back = parse_tuple<Rational>(text);
        CHECK(back == t);
        CHECK(write_tuple(back) == text);
    }
}

TEST_CASE("float tuples round-trip through text") {
    const auto t = sample_sl3_tuple<Complex>(77, 2, 10);
    const auto back = parse_tuple<Complex>(write_tuple(t));
    REQUIRE(back.rank() == 2);
    for (int k = 1; k <= 2; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(back.matrix(k)(i, j) == t.matrix(k)(i, j));
}

TEST_CASE("tuple text records mode, constraint, and rank") {
    const auto t = sample_sl3_tuple<Rational>(3, 2, 5);
    const std::string text = write_tuple(t);
    CHECK_THAT(text, ContainsSubstring("sl3trace tuple v1\n"));
    CHECK_THAT(text, ContainsSubstring("mode exact\n"));
    CHECK_THAT(text, ContainsSubstring("constraint sl\n"));
    CHECK_THAT(text, ContainsSubstring("rank 2\n"));
    CHECK(peek_mode(text) == ScalarMode::ExactRational);
    CHECK(peek_mode(write_tuple(sample_sl3_tuple<Complex>(3, 2, 5))) == ScalarMode::ComplexFloat);
}

TEST_CASE("tuple parse errors carry positions and tokens") {
    const auto t = sample_sl3_tuple<Rational>(4, 2, 5);
    const std::string good = write_tuple(t);

    CHECK_THROWS_MATCHES(parse_tuple<Rational>("nonsense\n" + good.substr(good.find('\n') + 1)),
                         ParseError, Catch::Matchers::MessageMatches(ContainsSubstring("header")));

    // Exact file read in float mode and vice versa.
    CHECK_THROWS_AS(parse_tuple<Complex>(good), ParseError);
    CHECK_THROWS_AS(parse_tuple<Rational>(write_tuple(sample_sl3_tuple<Complex>(4, 2, 5))),
                    ParseError);

    std::string bad_rank = good;
    bad_rank.replace(bad_rank.find("rank 2"), 6, "rank x");
    CHECK_THROWS_MATCHES(parse_tuple<Rational>(bad_rank), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("'x'")));

    // Truncate the final row: the row count comes up short.
    std::string truncated = good;
    truncated.erase(truncated.rfind('\n', truncated.size() - 2) + 1);
    CHECK_THROWS_AS(parse_tuple<Rational>(truncated), ParseError);

    // Remove one entry from a row.
    const auto pos = good.find("matrix 1\n") + 9;
    const auto row_end = good.find('\n', pos);
    std::string short_row = good.substr(0, good.rfind(' ', row_end)) + good.substr(row_end);
    CHECK_THROWS_MATCHES(parse_tuple<Rational>(short_row), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("3 entries")));
}

TEST_CASE("certificates round-trip through text") {
    const auto cert = certify_independence<Rational>(2, Variant::C1,
                                                     {.num_samples = 5, .seed = 42, .height = 10});
    REQUIRE(cert.verdict == Verdict::Independent);
    const std::string text = write_certificate(cert);
    const auto back = parse_certificate<Rational>(text);

    CHECK(back.parameter_set.rank == cert.parameter_set.rank);
    CHECK(back.parameter_set.variant == cert.parameter_set.variant);
    CHECK(back.parameter_set.invariants == cert.parameter_set.invariants);
    CHECK(back.variable_set.vars == cert.variable_set.vars);
    CHECK(back.sample == cert.sample);
    CHECK(back.determinant == cert.determinant);
    CHECK(back.verdict == cert.verdict);
    CHECK(back.seed == cert.seed);
    CHECK(back.height == cert.height);
    CHECK(back.sample_index == cert.sample_index);
    CHECK(back.samples_tried == cert.samples_tried);
}

TEST_CASE("certificate text is canonical apart from the timestamp") {
    const auto cert = certify_independence<Rational>(2, Variant::C3,
                                                     {.num_samples = 5, .seed = 11, .height = 10});
    const std::string a = write_certificate(cert);
    const std::string b = write_certificate(cert);
    CHECK_THAT(a, ContainsSubstring("timestamp "));
    CHECK(canonical_certificate(a) == canonical_certificate(b));
    CHECK(canonical_certificate(a).find("timestamp") == std::string::npos);
}

TEST_CASE("a certificate replays to the same determinant") {
    const auto cert = certify_independence<Rational>(3, Variant::C2,
                                                     {.num_samples = 5, .seed = 42, .height = 10});
    REQUIRE(cert.verdict == Verdict::Independent);
    const auto parsed = parse_certificate<Rational>(write_certificate(cert));

    // Re-run the search exactly as recorded.
    const auto replay = certify_independence<Rational>(
        parsed.parameter_set.rank, parsed.parameter_set.variant,
        {.num_samples = parsed.samples_tried, .seed = parsed.seed, .height = parsed.height});
    CHECK(replay.determinant == parsed.determinant);
    CHECK(replay.sample == parsed.sample);

    // The recorded sample itself reproduces the determinant.
    const JacobianMatrix<Rational> jac = jacobian<Rational>(
        parsed.parameter_set.invariants, parsed.variable_set.vars, parsed.sample);
    CHECK(determinant(jac.entries) == parsed.determinant);
}

TEST_CASE("float certificates parse back") {
    const auto cert = certify_independence<Complex>(2, Variant::C1,
                                                    {.num_samples = 5, .seed = 42, .height = 10});
    REQUIRE(cert.verdict == Verdict::Independent);
    const auto back = parse_certificate<Complex>(write_certificate(cert));
    CHECK(back.determinant == cert.determinant);
    CHECK(back.sample == cert.sample);
    CHECK_THROWS_AS(parse_certificate<Rational>(write_certificate(cert)), ParseError);
}

TEST_CASE("certificate parse errors") {
    const auto cert = certify_independence<Rational>(2, Variant::C1, {.seed = 42});
    const std::string good = write_certificate(cert);

    CHECK_THROWS_AS(parse_certificate<Rational>(write_tuple(cert.sample)), ParseError);

    std::string bad_variant = good;
    bad_variant.replace(bad_variant.find("variant C1"), 10, "variant zz");
    CHECK_THROWS_AS(parse_certificate<Rational>(bad_variant), ParseError);

    std::string bad_var = good;
    const auto vpos = bad_var.find("variables ");
    bad_var.replace(vpos, std::string("variables 1,1,1").size(), "variables 1,1,9");
    CHECK_THROWS_MATCHES(parse_certificate<Rational>(bad_var), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("1,1,9")));

    std::string no_tuple = good.substr(0, good.find("tuple\n"));
    CHECK_THROWS_AS(parse_certificate<Rational>(no_tuple), ParseError);
}

TEST_CASE("text files round-trip") {
    const std::string path = "io_test_scratch.txt";
    const std::string content = "line one\nline two\n";
    write_text_file(path, content);
    CHECK(read_text_file(path) == content);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("definitely/not/a/file"), Error);
}
