#pragma once

#include <cstddef>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sl3trace/certify.hpp"
#include "sl3trace/tuple.hpp"
#include "sl3trace/version.hpp"

// Line-oriented text formats for tuples and certificates. Exact entries are
// canonical "p/q" strings so certificates carry no rounding; float entries
// are "[re,im]" pairs printed with round-trip precision. In exact mode
// parse(write(x)) reproduces x bit for bit.

namespace sl3trace {

inline constexpr const char* kTupleHeader = "sl3trace tuple v1";
inline constexpr const char* kCertificateHeader = "sl3trace certificate v1";

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

// "key value..." accessor over a line cursor with positioned errors.
class LineReader {
public:
    explicit LineReader(const std::string& text) : lines_(split_lines(text)) {}

    bool done() const { return pos_ >= lines_.size(); }

    const std::string& peek() const {
        if (done()) throw ParseError("unexpected end of input at line " + std::to_string(pos_ + 1));
        return lines_[pos_];
    }

    std::string next() {
        std::string line = peek();
        ++pos_;
        return line;
    }

    // Consumes a line of the form "<key> <rest>", returning <rest>.
    std::string expect_key(const std::string& key) {
        const std::string line = next();
        if (line.size() < key.size() || line.compare(0, key.size(), key) != 0)
            throw ParseError("expected '" + key + "' at line " + std::to_string(pos_) +
                             ", found '" + line + "'");
        std::string rest = line.substr(key.size());
        if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
        else if (!rest.empty())
            throw ParseError("expected '" + key + "' at line " + std::to_string(pos_) +
                             ", found '" + line + "'");
        return rest;
    }

    std::size_t line_number() const { return pos_; }

private:
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
};

inline int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return value;
    } catch (const std::exception&) {
        throw ParseError("bad " + what + " '" + text + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return value;
    } catch (const std::exception&) {
        throw ParseError("bad " + what + " '" + text + "'");
    }
}

inline VariableIndex parse_variable(const std::string& token) {
    const auto c1 = token.find(',');
    const auto c2 = token.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("bad variable token '" + token + "' (expected k,i,j)");
    VariableIndex v;
    v.k = parse_int(token.substr(0, c1), "variable index");
    v.i = parse_int(token.substr(c1 + 1, c2 - c1 - 1), "variable index");
    v.j = parse_int(token.substr(c2 + 1), "variable index");
    if (v.i < 1 || v.i > 3 || v.j < 1 || v.j > 3 || v.k < 1)
        throw ParseError("variable token '" + token + "' out of range");
    return v;
}

template <ScalarField S>
void write_tuple_body(std::ostream& os, const MatrixTuple<S>& tuple) {
    os << "mode " << mode_name(ScalarTraits<S>::mode) << '\n';
    os << "constraint " << constraint_name(tuple.constraint()) << '\n';
    os << "rank " << tuple.rank() << '\n';
    for (int k = 1; k <= tuple.rank(); ++k) {
        os << "matrix " << k << '\n';
        const Matrix3<S>& m = tuple.matrix(k);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (j) os << ' ';
                os << ScalarTraits<S>::to_string(m(i, j));
            }
            os << '\n';
        }
    }
}

template <ScalarField S>
MatrixTuple<S> parse_tuple_body(LineReader& reader) {
    const std::string mode = reader.expect_key("mode");
    if (mode_from_name(mode) != ScalarTraits<S>::mode)
        throw ParseError("tuple mode '" + mode + "' does not match requested scalar mode '" +
                         mode_name(ScalarTraits<S>::mode) + "'");
    const MatrixConstraint constraint = constraint_from_name(reader.expect_key("constraint"));
    const int rank = parse_int(reader.expect_key("rank"), "rank");
    if (rank < 1) throw ParseError("tuple rank must be positive");

    std::vector<Matrix3<S>> mats;
    mats.reserve(static_cast<std::size_t>(rank));
    for (int k = 1; k <= rank; ++k) {
        const std::string label = reader.expect_key("matrix");
        if (parse_int(label, "matrix label") != k)
            throw ParseError("matrix blocks out of order at line " +
                             std::to_string(reader.line_number()));
        Matrix3<S> m;
        for (int i = 0; i < 3; ++i) {
            const std::vector<std::string> tokens = split_tokens(reader.next());
            if (tokens.size() != 3)
                throw ParseError("matrix row needs 3 entries at line " +
                                 std::to_string(reader.line_number()));
            for (int j = 0; j < 3; ++j)
                m(i, j) = ScalarTraits<S>::parse(tokens[static_cast<std::size_t>(j)]);
        }
        mats.push_back(m);
    }
    return MatrixTuple<S>(std::move(mats), constraint);
}

} // namespace detail

template <ScalarField S>
std::string write_tuple(const MatrixTuple<S>& tuple) {
    std::ostringstream os;
    os << kTupleHeader << '\n';
    detail::write_tuple_body(os, tuple);
    return os.str();
}

// Scalar mode recorded in a tuple or certificate file, for dispatch before
// choosing the scalar type.
inline ScalarMode peek_mode(const std::string& text) {
    for (const std::string& line : detail::split_lines(text)) {
        if (line.rfind("mode ", 0) == 0) return mode_from_name(line.substr(5));
    }
    throw ParseError("no mode line found");
}

template <ScalarField S>
MatrixTuple<S> parse_tuple(const std::string& text) {
    detail::LineReader reader(text);
    if (reader.next() != kTupleHeader) throw ParseError("not a tuple file (bad header)");
    return detail::parse_tuple_body<S>(reader);
}

inline std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <ScalarField S>
std::string write_certificate(const IndependenceCertificate<S>& cert) {
    std::ostringstream os;
    os << kCertificateHeader << '\n';
    os << "tool-version " << kVersion << '\n';
    os << "timestamp " << iso8601_utc_now() << '\n';
    os << "mode " << mode_name(cert.mode) << '\n';
    os << "rank " << cert.parameter_set.rank << '\n';
    os << "variant " << variant_name(cert.parameter_set.variant) << '\n';
    os << "seed " << cert.seed << '\n';
    os << "height " << cert.height << '\n';
    os << "samples-tried " << cert.samples_tried << '\n';
    os << "sample-index " << cert.sample_index << '\n';
    os << "verdict " << verdict_name(cert.verdict) << '\n';
    os << "determinant " << ScalarTraits<S>::to_string(cert.determinant) << '\n';
    os << "variables";
    for (const VariableIndex& v : cert.variable_set.vars) os << ' ' << v.to_string();
    os << '\n';
    for (const TraceInvariant& inv : cert.parameter_set.invariants)
        os << "invariant " << inv.word().to_string() << '\n';
    os << "tuple" << '\n';
    detail::write_tuple_body(os, cert.sample);
    return os.str();
}

template <ScalarField S>
IndependenceCertificate<S> parse_certificate(const std::string& text) {
    detail::LineReader reader(text);
    if (reader.next() != kCertificateHeader)
        throw ParseError("not a certificate file (bad header)");

    IndependenceCertificate<S> cert;
    reader.expect_key("tool-version");
    reader.expect_key("timestamp");
    const std::string mode = reader.expect_key("mode");
    if (mode_from_name(mode) != ScalarTraits<S>::mode)
        throw ParseError("certificate mode '" + mode + "' does not match requested scalar mode");
    cert.mode = ScalarTraits<S>::mode;
    cert.parameter_set.rank = detail::parse_int(reader.expect_key("rank"), "rank");
    cert.parameter_set.variant = variant_from_name(reader.expect_key("variant"));
    cert.seed = detail::parse_u64(reader.expect_key("seed"), "seed");
    cert.height = detail::parse_int(reader.expect_key("height"), "height");
    cert.samples_tried = detail::parse_int(reader.expect_key("samples-tried"), "samples-tried");
    cert.sample_index = detail::parse_int(reader.expect_key("sample-index"), "sample-index");
    const std::string verdict = reader.expect_key("verdict");
    if (verdict == "Independent") cert.verdict = Verdict::Independent;
    else if (verdict == "NotCertified") cert.verdict = Verdict::NotCertified;
    else throw ParseError("unknown verdict '" + verdict + "'");
    cert.determinant = ScalarTraits<S>::parse(reader.expect_key("determinant"));

    cert.variable_set.rank = cert.parameter_set.rank;
    for (const std::string& tok : detail::split_tokens(reader.expect_key("variables")))
        cert.variable_set.vars.push_back(detail::parse_variable(tok));

    while (!reader.done() && reader.peek().rfind("invariant", 0) == 0)
        cert.parameter_set.invariants.emplace_back(GroupWord::parse(reader.expect_key("invariant")));

    if (reader.next() != "tuple") throw ParseError("certificate missing embedded tuple");
    cert.sample = detail::parse_tuple_body<S>(reader);
    return cert;
}

// Certificates are byte-identical across reruns except for the timestamp;
// comparisons go through this canonical form.
inline std::string canonical_certificate(const std::string& text) {
    std::string out;
    for (const std::string& line : detail::split_lines(text)) {
        if (line.rfind("timestamp ", 0) == 0) continue;
        out += line;
        out += '\n';
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

} // namespace sl3trace
