#pragma once

#include <compare>
#include <cstdlib>
#include <numeric>
#include <string>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"

namespace adelic {

// Exact rational on 64-bit words. All intermediates go through 128 bits and
// overflow past 64 bits after reduction throws, so results are never silently
// wrong. Ample for the desk-scale inputs this library targets.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 n) : num_(n), den_(1) {}  // implicit: integers convert
    Rational(i64 n, i64 d) { assign(n, d); }

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                       static_cast<i128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) fail("DivisionByZero", "rational division by zero");
        return from128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const i128 lhs = static_cast<i128>(a.num_) * b.den_;
        const i128 rhs = static_cast<i128>(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
                         : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Accepts "n" or "n/d" with optional sign.
    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            size_t used = 0;
            if (slash == std::string::npos) {
                const i64 n = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                return Rational(n);
            }
            const i64 n = std::stoll(text.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(text);
            const std::string dpart = text.substr(slash + 1);
            const i64 d = std::stoll(dpart, &used);
            if (used != dpart.size()) throw std::invalid_argument(text);
            return Rational(n, d);
        } catch (const std::logic_error&) {
            fail("InvalidRational", "cannot parse rational from '" + text + "'");
        }
    }

private:
    static Rational from128(i128 n, i128 d) {
        if (d == 0) fail("DivisionByZero", "zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        n /= g;
        d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) fail("Overflow", "rational out of 64-bit range");
        Rational r;
        r.num_ = static_cast<i64>(n);
        r.den_ = static_cast<i64>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { a %= b; std::swap(a, b); }
        return a;
    }

    void assign(i64 n, i64 d) {
        *this = from128(n, d);
    }

    i64 num_;
    i64 den_;  // > 0, coprime to num_
};

// p-adic valuation of a nonzero rational.
inline int padic_valuation(const Rational& r, i64 p) {
    if (r.is_zero()) fail("InvalidArgument", "valuation of zero is undefined");
    return padic_valuation(r.num(), p) - padic_valuation(r.den(), p);
}

// Residue of a rational with nonnegative p-adic valuation in Z/m, m a power of p
// (more generally: any m coprime to the reduced denominator).
inline i64 rational_mod(const Rational& r, i64 m) {
    i64 n = r.num() % m;
    if (n < 0) n += m;
    return mulmod(n, modinv(r.den() % m, m), m);
}

}  // namespace adelic
