#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "mkg/errors.hpp"

namespace mkg {

/// Exact rational arithmetic on int64 (checked via 128-bit intermediates).
/// The rule engine decides equalities like b = 1/2, which floating point
/// cannot, so all exponent bookkeeping runs on this type.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long num, long long den = 1) { assign(num, den); }

    long long num() const { return n_; }
    long long den() const { return d_; }

    static Rational parse(const std::string& text);
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make128(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make128(i128(a.n_) * b.d_ - i128(b.n_) * a.d_, i128(a.d_) * b.d_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make128(i128(a.n_) * b.n_, i128(a.d_) * b.d_);
    }
    Rational operator-() const { return Rational(-n_, d_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.n_) * b.d_ < i128(b.n_) * a.d_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    double to_double() const { return double(n_) / double(d_); }

private:
    using i128 = __int128;
    long long n_ = 0;
    long long d_ = 1;

    void assign(long long num, long long den) {
        if (den == 0) throw ConfigError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        n_ = g ? num / g : 0;
        d_ = g ? den / g : 1;
    }

    static Rational make128(i128 num, i128 den) {
        if (den < 0) { num = -num; den = -den; }
        i128 a = num < 0 ? -num : num, b = den;
        while (b) { const i128 t = a % b; a = b; b = t; }
        if (a) { num /= a; den /= a; }
        constexpr i128 lim = 0x7fffffffffffffffLL;
        if (num > lim || num < -lim || den > lim)
            throw ConfigError("rational overflow");
        Rational r;
        r.n_ = (long long)num;
        r.d_ = (long long)den;
        return r;
    }
};

inline Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse rational '" + text + "'");
    }
}

inline std::string Rational::str() const {
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

} // namespace mkg
