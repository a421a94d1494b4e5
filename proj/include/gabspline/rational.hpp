#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic and the small numeric helpers shared by
 * every other header: nearest-integer rounding, signed fractional part,
 * roots of unity and reduction of a lattice product ab to lowest terms.
 *
 * Rational wraps an arbitrary-precision fraction. Values are always kept
 * in lowest terms with a positive denominator; zero is 0/1.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace gabspline {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

class Rational {
    using value_type = boost::multiprecision::cpp_rational;
    value_type v_;

    explicit Rational(value_type v) : v_(std::move(v)) {}

public:
    Rational() = default;
    Rational(int n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n) : v_(n) {}  // NOLINT
    Rational(long long n) : v_(n) {}  // NOLINT
    Rational(const BigInt& n) : v_(n) {}  // NOLINT

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = den < 0 ? value_type(BigInt(-num), BigInt(-den)) : value_type(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_.sign(); }

    double to_double() const { return v_.convert_to<double>(); }

    /// Greatest integer <= *this.
    BigInt floor() const {
        BigInt n = numerator(), d = denominator();
        BigInt q = n / d;  // truncates toward zero
        if (n < 0 && q * d != n) --q;
        return q;
    }
    BigInt ceil() const {
        BigInt n = numerator(), d = denominator();
        BigInt q = n / d;
        if (n > 0 && q * d != n) ++q;
        return q;
    }

    Rational abs() const { return v_ < 0 ? Rational(value_type(-v_)) : *this; }

    Rational operator-() const { return Rational(value_type(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// "p/q", or "p" when the value is an integer.
    std::string str() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    /// Parses "p/q" or "p" (optional leading sign on p, base 10). Decimal
    /// points, exponents and whitespace are rejected.
    static Rational parse(std::string_view s) {
        auto digits = [](std::string_view t, bool allow_sign) {
            if (t.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        auto to_int = [](std::string_view t) {
            if (!t.empty() && t[0] == '+') t.remove_prefix(1);
            return BigInt(std::string(t));
        };
        const auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            if (!digits(s, true)) throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
            return Rational(to_int(s));
        }
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits(num, true) || !digits(den, false))
            throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
        BigInt d = to_int(den);
        if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
        return Rational(to_int(num), d);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
};

inline Rational abs(const Rational& r) { return r.abs(); }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// floor(x + 1/2).
inline BigInt round_nearest(const Rational& x) { return (x + Rational(1, 2)).floor(); }

/// x - round_nearest(x), in [-1/2, 1/2).
inline Rational signed_frac(const Rational& x) { return x - Rational(round_nearest(x)); }

/// exp(-2 pi i s / R).
inline Complex root_of_unity(long long s, long long R) {
    if (R <= 0) throw std::invalid_argument("root_of_unity: R must be positive");
    long long r = s % R;
    if (r < 0) r += R;
    // exact values on the axes keep |z| = 1 and the geometric sums tight
    if (r == 0) return {1.0, 0.0};
    if (2 * r == R) return {-1.0, 0.0};
    if (4 * r == R) return {0.0, -1.0};
    if (4 * r == 3 * R) return {0.0, 1.0};
    const double t = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(R);
    return {std::cos(t), std::sin(t)};
}

inline long long to_ll(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min()))
        throw std::overflow_error("integer does not fit in 64 bits");
    return v.convert_to<long long>();
}

/// Reduced (p, q) with p/q = a*b.
inline std::pair<long long, long long> reduce_ratio(const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("reduce_ratio: a and b must be positive");
    const Rational ab = a * b;
    return {to_ll(ab.numerator()), to_ll(ab.denominator())};
}

}  // namespace gabspline
