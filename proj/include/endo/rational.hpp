#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace endo {

/// Element of (1/2)Z together with +infinity, stored as twice its value.
/// Valuations on Q_p(pi) and the slope cut nu live here.
struct HalfInt {
    long twice = 0;
    bool infinite = false;

    static HalfInt make_twice(long t) { return HalfInt{t, false}; }
    static HalfInt whole(long n) { return HalfInt{2 * n, false}; }
    static HalfInt infinity() { return HalfInt{0, true}; }

    bool is_integer() const { return infinite || twice % 2 == 0; }

    friend bool operator==(const HalfInt& a, const HalfInt& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.twice == b.twice;
    }
    friend bool operator!=(const HalfInt& a, const HalfInt& b) { return !(a == b); }
    friend bool operator<(const HalfInt& a, const HalfInt& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.twice < b.twice;
    }
    friend bool operator<=(const HalfInt& a, const HalfInt& b) { return a < b || a == b; }
    friend bool operator>(const HalfInt& a, const HalfInt& b) { return b < a; }
    friend bool operator>=(const HalfInt& a, const HalfInt& b) { return b <= a; }

    friend HalfInt operator+(const HalfInt& a, const HalfInt& b) {
        if (a.infinite || b.infinite) return infinity();
        return make_twice(a.twice + b.twice);
    }

    std::string str() const {
        if (infinite) return "inf";
        if (twice % 2 == 0) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

/// Reduced fraction used for Newton polygon slopes, which may have
/// denominators other than 1 or 2.
struct Rational {
    long num = 0;
    long den = 1;  // > 0

    Rational() = default;
    Rational(long n, long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    static Rational whole(long n) { return Rational(n, 1); }
    static Rational half(long twice) { return Rational(twice, 2); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    bool is_half_integral() const { return den <= 2; }
    HalfInt as_half_int() const {
        if (!is_half_integral()) throw std::invalid_argument("slope is not half-integral");
        return HalfInt::make_twice(den == 1 ? 2 * num : num);
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Parses "3", "-1/2", "5/2" into a half-integer; used for --nu and
/// valuation-valued CLI flags.
HalfInt parse_half_int(const std::string& text);

}  // namespace endo
