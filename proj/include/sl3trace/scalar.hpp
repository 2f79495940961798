#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "sl3trace/errors.hpp"
#include "sl3trace/rational.hpp"

namespace sl3trace {

enum class ScalarMode { ExactRational, ComplexFloat };

using Complex = std::complex<double>;

inline const char* mode_name(ScalarMode m) {
    return m == ScalarMode::ExactRational ? "exact" : "float";
}

inline ScalarMode mode_from_name(const std::string& name) {
    if (name == "exact") return ScalarMode::ExactRational;
    if (name == "float") return ScalarMode::ComplexFloat;
    throw ParseError("unknown scalar mode '" + name + "'");
}

namespace warnings {

using Handler = std::function<void(const std::string&)>;

inline Handler& handler() {
    static Handler h;
    return h;
}

inline void set_handler(Handler h) { handler() = std::move(h); }

inline void emit(const std::string& message) {
    if (handler())
        handler()(message);
    else
        std::cerr << "sl3trace: warning: " << message << '\n';
}

} // namespace warnings

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr ScalarMode mode = ScalarMode::ExactRational;
    static constexpr bool exact = true;

    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long long n) { return Rational(n); }
    static Rational from_fraction(long long num, long long den) { return Rational(num, den); }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static double magnitude(const Rational& v) { return std::fabs(v.to_double()); }
    static std::string to_string(const Rational& v) { return v.to_string(); }
    static Rational parse(const std::string& text) { return Rational::from_string(text); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr ScalarMode mode = ScalarMode::ComplexFloat;
    static constexpr bool exact = false;

    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long long n) { return {static_cast<double>(n), 0.0}; }
    static Complex from_fraction(long long num, long long den) {
        return {static_cast<double>(num) / static_cast<double>(den), 0.0};
    }
    static bool is_zero(const Complex& v) { return v == Complex{0.0, 0.0}; }
    static double magnitude(const Complex& v) { return std::abs(v); }

    // "[re,im]" with round-trip precision.
    static std::string to_string(const Complex& v) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", v.real(), v.imag());
        return buf;
    }

    static Complex parse(const std::string& text) {
        const char* p = text.c_str();
        if (*p != '[') throw ParseError("bad complex literal '" + text + "'");
        char* end = nullptr;
        const double re = std::strtod(p + 1, &end);
        if (end == p + 1 || *end != ',') throw ParseError("bad complex literal '" + text + "'");
        const char* q = end + 1;
        const double im = std::strtod(q, &end);
        if (end == q || *end != ']' || *(end + 1) != '\0')
            throw ParseError("bad complex literal '" + text + "'");
        return {re, im};
    }
};

template <class S>
concept ScalarField = requires { ScalarTraits<S>::mode; };

} // namespace sl3trace
