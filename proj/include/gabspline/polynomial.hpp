#pragma once

// Dense univariate polynomials with exact rational coefficients, lowest
// degree first. Only the handful of operations the spline and certificate
// code needs.

#include "gabspline/rational.hpp"

#include <vector>

namespace gabspline {

class Polynomial {
    std::vector<Rational> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& v) { return Polynomial({v}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Rational& s, Polynomial p) {
        for (auto& v : p.c_) v *= s;
        p.trim();
        return p;
    }

    /// q(x) = p(x + h).
    Polynomial shifted(const Rational& h) const {
        Polynomial r;
        const Polynomial lin({h, Rational(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + constant(*it);
        return r;
    }

    /// q(x) = p(s * x).
    Polynomial scaled(const Rational& s) const {
        std::vector<Rational> r = c_;
        Rational f(1);
        for (auto& v : r) {
            v *= f;
            f *= s;
        }
        return Polynomial(std::move(r));
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long long>(i));
        return Polynomial(std::move(r));
    }

    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        std::vector<Rational> r(c_.size() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / Rational(static_cast<long long>(i + 1));
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
};

}  // namespace gabspline
