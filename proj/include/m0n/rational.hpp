#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace m0n {

/// Exact rational over 64-bit integers. Always normalized: den > 0, gcd(num, den) = 1.
/// Intermediate products go through 128-bit; a result that no longer fits in 64 bits
/// throws std::overflow_error. Values in this project stay tiny, so that is a hard
/// failure rather than a silent wrap.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    Rational operator-() const { return Rational(-num_, den_, normalized_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = i128(a.num_) * b.den_;
        __int128 rhs = i128(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
             : lhs > rhs ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
    }

    /// Serialized form is always "p/q" with q > 0 and gcd(p, q) = 1.
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "p" or "p/q"; throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view s);

private:
    struct normalized_tag {};
    Rational(long long n, long long d, normalized_tag) : num_(n), den_(d) {}

    static __int128 i128(long long v) { return static_cast<__int128>(v); }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        return Rational(static_cast<long long>(n), static_cast<long long>(d), normalized_tag{});
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline Rational Rational::parse(std::string_view s) {
    auto parse_ll = [](std::string_view t) -> long long {
        if (t.empty()) throw std::invalid_argument("Rational: empty number");
        size_t pos = 0;
        bool neg = false;
        if (t[0] == '+' || t[0] == '-') { neg = t[0] == '-'; pos = 1; }
        if (pos == t.size()) throw std::invalid_argument("Rational: sign without digits");
        long long v = 0;
        for (; pos < t.size(); ++pos) {
            if (t[pos] < '0' || t[pos] > '9')
                throw std::invalid_argument("Rational: bad character in '" + std::string(t) + "'");
            if (v > (INT64_MAX - 9) / 10) throw std::overflow_error("Rational: literal too large");
            v = v * 10 + (t[pos] - '0');
        }
        return neg ? -v : v;
    };
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_ll(s));
    return Rational(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
}

/// ℚ ∪ {+∞}. +∞ encodes the valuation of the zero coefficient (and the value
/// of an empty polynomial).
class CoefficientVal {
public:
    CoefficientVal(Rational v) : finite_(true), v_(v) {}
    CoefficientVal(long long v) : finite_(true), v_(v) {}
    static CoefficientVal infinity() { return CoefficientVal(); }

    bool is_infinite() const { return !finite_; }
    const Rational& value() const {
        if (!finite_) throw std::domain_error("CoefficientVal: +inf has no finite value");
        return v_;
    }

    friend bool operator==(const CoefficientVal& a, const CoefficientVal& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator<(const CoefficientVal& a, const CoefficientVal& b) {
        if (!b.finite_) return a.finite_;
        if (!a.finite_) return false;
        return a.v_ < b.v_;
    }

    friend CoefficientVal operator+(const CoefficientVal& a, const CoefficientVal& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return CoefficientVal(a.v_ + b.v_);
    }

    std::string str() const { return finite_ ? v_.str() : "inf"; }

private:
    CoefficientVal() : finite_(false) {}
    bool finite_;
    Rational v_;
};

} // namespace m0n
