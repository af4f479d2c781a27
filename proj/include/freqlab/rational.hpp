#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace freqlab {

// Exact rational arithmetic on 64-bit numerator/denominator with 128-bit
// intermediates. Support tests and density reconstructions must not wobble,
// so measures and finite-frequency identities are carried as rationals.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}

    Rational(std::int64_t numerator, std::int64_t denominator) {
        if (denominator == 0) throw std::domain_error("Rational: zero denominator");
        if (denominator < 0) {
            numerator = -numerator;
            denominator = -denominator;
        }
        const std::int64_t g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
        num_ = g ? numerator / g : numerator;
        den_ = g ? denominator / g : denominator;
    }

    // NOLINTNEXTLINE: implicit construction from integers is intended
    Rational(std::int64_t n) : num_(n), den_(1) {}

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool positive() const { return num_ > 0; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Exact conversion: every finite double is an integer scaled by a power of two.
    static Rational from_double_exact(double v);

    // Parses "3/16", "7", "0.25" (decimal digits are taken exactly).
    static Rational parse(const std::string& text);

private:
    using i128 = __int128;

    static Rational reduce(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow after reduction");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational Rational::from_double_exact(double v) {
    if (v == 0.0) return Rational(0);
    bool neg = v < 0;
    if (neg) v = -v;
    // Scale into an integer mantissa; doubles have at most 53 significant bits.
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, m in [0.5, 1)
    std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    if (neg) mant = -mant;
    if (exp >= 0) {
        if (exp > 10) throw std::overflow_error("Rational: double too large for exact conversion");
        return Rational(mant << exp, 1);
    }
    if (exp < -62) {
        // Strip trailing zero bits of the mantissa first.
        while ((mant & 1) == 0 && exp < 0) {
            mant >>= 1;
            ++exp;
        }
        if (exp < -62) throw std::overflow_error("Rational: double too small for exact conversion");
    }
    return Rational(mant, std::int64_t(1) << (-exp));
}

inline Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_digits = text.size() - dot - 1;
        if (frac_digits > 18) throw std::overflow_error("Rational: too many decimal digits");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
        return Rational(std::stoll(digits), den);
    }
    return Rational(std::stoll(text), 1);
}

}  // namespace freqlab
