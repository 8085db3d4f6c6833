#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "skv/errors.hpp"

namespace skv {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Backed by GMP's mpq_class; the canonical zero is 0/1. The string form is
/// "num/den" with a leading '-' for negatives and the denominator omitted
/// when it is 1.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(n) {}   // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw DivisionByZero();
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rational parse(std::string_view text) {
        std::string s(text);
        if (!s.empty() && s.front() == '+') s.erase(0, 1);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                if (s.empty()) throw InvalidArgument("empty rational");
                return Rational(Integer(s, 10));
            }
            Integer num(s.substr(0, slash), 10);
            Integer den(s.substr(slash + 1), 10);
            if (den <= 0) throw InvalidArgument("rational denominator must be positive: " + s);
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw InvalidArgument("malformed rational: " + std::string(text));
        }
    }

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// True when the denominator is prime to `p`.
    bool is_p_integral(const Integer& p) const {
        Integer g;
        mpz_gcd(g.get_mpz_t(), q_.get_den_mpz_t(), p.get_mpz_t());
        return g == 1;
    }

    Rational inverse() const {
        if (is_zero()) throw DivisionByZero();
        return Rational(mpq_class(1) / q_);
    }

    Rational pow(unsigned e) const {
        Integer n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
        return Rational(n, d);
    }

    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Integer ipow(const Integer& base, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer igcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace skv
