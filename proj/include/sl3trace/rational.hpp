#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "sl3trace/errors.hpp"

namespace sl3trace {

// Exact rational scalar. Thin value wrapper around GMP's mpq_class that
// guarantees canonical form (lowest terms, positive denominator) after every
// operation and pins the "p/q" text format used in tuple and certificate
// files.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}                 // NOLINT: implicit by design
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long long n) : v_(int64_as_mpz(n)) {}

    Rational(long long num, long long den) : v_(int64_as_mpz(num), int64_as_mpz(den)) {
        if (den == 0) throw ParseError("rational with zero denominator");
        v_.canonicalize();
    }

    explicit Rational(const mpq_class& q) : v_(q) {
        v_.canonicalize();
    }

    // Accepts "p" or "p/q" with optional sign, arbitrary precision.
    static Rational from_string(const std::string& text) {
        if (text.empty()) throw ParseError("empty rational literal");
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw ParseError("bad rational literal '" + text + "'");
        if (q.get_den() == 0) throw ParseError("rational with zero denominator: '" + text + "'");
        q.canonicalize();
        return Rational(q, already_canonical{});
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    // "p" when the denominator is 1, else "p/q"; always canonical.
    std::string to_string() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}

    // mpq_class has no long long constructor on LP64-less platforms; go via mpz.
    static mpz_class int64_as_mpz(long long n) {
        mpz_class z;
        if (n >= 0) {
            z = static_cast<unsigned long>(n);
        } else {
            z = static_cast<unsigned long>(-(n + 1));
            z += 1;
            z = -z;
        }
        return z;
    }

    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace sl3trace
