// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace slc {

// Exact rational arithmetic for probabilities and beliefs.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);  // "3", "-1/2", "0.25", "1e-6"
std::string to_string(const Rational& q);

// Currency amount. Exact, so payout clauses balance to the last unit.
class Money {
public:
    Money() = default;
    Money(long v) : q_(v) {}
    explicit Money(const Rational& q) : q_(q) { q_.canonicalize(); }

    static Money parse(std::string_view text) { return Money(parse_rational(text)); }

    const Rational& value() const { return q_; }

    Money& operator+=(const Money& o) { q_ += o.q_; return *this; }
    Money& operator-=(const Money& o) { q_ -= o.q_; return *this; }
    friend Money operator+(Money a, const Money& b) { return a += b; }
    friend Money operator-(Money a, const Money& b) { return a -= b; }
    friend Money operator-(const Money& a) { return Money(Rational(-a.q_)); }
    friend Money operator*(const Money& a, const Rational& s) { return Money(Rational(a.q_ * s)); }
    friend Money operator*(const Rational& s, const Money& a) { return a * s; }
    friend Money operator*(const Money& a, long s) { return Money(Rational(a.q_ * s)); }
    friend Money operator*(long s, const Money& a) { return a * s; }
    friend Money operator/(const Money& a, long s) { return Money(Rational(a.q_ / s)); }
    friend Money operator/(const Money& a, const Rational& s) { return Money(Rational(a.q_ / s)); }

    friend bool operator==(const Money& a, const Money& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Money& a, const Money& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    bool is_negative() const { return sgn(q_) < 0; }
    bool is_zero() const { return sgn(q_) == 0; }
    double to_double() const { return q_.get_d(); }
    std::string str() const { return to_string(q_); }

private:
    Rational q_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Money& m) { return os << m.str(); }

}  // namespace slc
