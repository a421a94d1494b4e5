#pragma once

/**
 * @file bspline.hpp
 * @brief Exact piecewise polynomials and the B-splines built from them.
 *
 * B_1 is the indicator of [-1/2, 1/2] and B_{n+1} = B_n * B_1. Convolution
 * with the box is done through antiderivatives:
 *
 *     (f * B_1)(x) = F(x + 1/2) - F(x - 1/2),   F' = f,
 *
 * so every B_n is produced exactly with rational coefficients. N_n is B_n
 * translated to support [0, n].
 *
 * Evaluation convention: the piece on [t_i, t_{i+1}) is used for x in that
 * half-open interval and the function is zero for x >= t_last. Only the
 * discontinuous B_1 / N_1 notice; it makes integer translates of N_1 an
 * exact partition of unity at every point.
 */

#include "gabspline/polynomial.hpp"
#include "gabspline/rational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gabspline {

class PiecewisePolynomial {
public:
    PiecewisePolynomial(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
        : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (bp_.size() < 2) throw std::invalid_argument("PiecewisePolynomial: need at least two breakpoints");
        if (pieces_.size() + 1 != bp_.size())
            throw std::invalid_argument("PiecewisePolynomial: pieces must be one fewer than breakpoints");
        for (std::size_t i = 1; i < bp_.size(); ++i)
            if (!(bp_[i - 1] < bp_[i]))
                throw std::invalid_argument("PiecewisePolynomial: breakpoints must be strictly increasing");
        build_float_forms();
    }

    const std::vector<Rational>& breakpoints() const { return bp_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }
    const Rational& support_lo() const { return bp_.front(); }
    const Rational& support_hi() const { return bp_.back(); }
    Rational support_length() const { return bp_.back() - bp_.front(); }
    double support_lo_f() const { return bpf_.front(); }
    double support_hi_f() const { return bpf_.back(); }

    /// Index of the piece used at x, or nullopt outside [t_0, t_last).
    std::optional<std::size_t> piece_index(const Rational& x) const {
        if (x < bp_.front() || x >= bp_.back()) return std::nullopt;
        auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
        return static_cast<std::size_t>(it - bp_.begin()) - 1;
    }

    Rational operator()(const Rational& x) const {
        auto i = piece_index(x);
        return i ? pieces_[*i](x) : Rational(0);
    }

    /// Horner on a local expansion about the nearer end of the piece.
    double operator()(double x) const {
        if (!(x >= bpf_.front()) || x >= bpf_.back()) return 0.0;
        auto it = std::upper_bound(bpf_.begin(), bpf_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - bpf_.begin()) - 1;
        const double tl = x - bpf_[i], tr = x - bpf_[i + 1];
        const bool use_left = std::abs(tl) <= std::abs(tr);
        const auto& c = use_left ? left_[i] : right_[i];
        const double t = use_left ? tl : tr;
        double r = 0.0;
        for (auto k = c.rbegin(); k != c.rend(); ++k) r = r * t + *k;
        return r;
    }

    /// g(x) = f(x - h).
    PiecewisePolynomial translated(const Rational& h) const {
        std::vector<Rational> bp;
        std::vector<Polynomial> pc;
        bp.reserve(bp_.size());
        pc.reserve(pieces_.size());
        for (const auto& t : bp_) bp.push_back(t + h);
        for (const auto& p : pieces_) pc.push_back(p.shifted(-h));
        return {std::move(bp), std::move(pc)};
    }

    /// g(x) = s * f(x).
    PiecewisePolynomial scaled_by(const Rational& s) const {
        std::vector<Polynomial> pc;
        for (const auto& p : pieces_) pc.push_back(s * p);
        return {bp_, std::move(pc)};
    }

    Rational integral() const {
        Rational total;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto anti = pieces_[i].antiderivative();
            total += anti(bp_[i + 1]) - anti(bp_[i]);
        }
        return total;
    }

    /// (f * B_1)(x) = F(x + 1/2) - F(x - 1/2).
    PiecewisePolynomial convolve_with_box() const {
        // F on piece i is offset_[i] + anti_i(x) - anti_i(t_i); constant outside.
        std::vector<Polynomial> F;
        F.reserve(pieces_.size());
        Rational acc;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto anti = pieces_[i].antiderivative();
            F.push_back(anti + Polynomial::constant(acc - anti(bp_[i])));
            acc = F.back()(bp_[i + 1]);
        }
        const Rational total = acc;
        auto F_piece_at = [&](const Rational& x) -> Polynomial {
            if (x < bp_.front()) return {};
            if (x >= bp_.back()) return Polynomial::constant(total);
            return F[*piece_index(x)];
        };

        const Rational half(1, 2);
        std::vector<Rational> nb;
        nb.reserve(2 * bp_.size());
        for (const auto& t : bp_) {
            nb.push_back(t - half);
            nb.push_back(t + half);
        }
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());

        std::vector<Polynomial> np;
        np.reserve(nb.size() - 1);
        for (std::size_t j = 0; j + 1 < nb.size(); ++j) {
            const Rational mid = (nb[j] + nb[j + 1]) * half;
            np.push_back(F_piece_at(mid + half).shifted(half) - F_piece_at(mid - half).shifted(-half));
        }
        return {std::move(nb), std::move(np)};
    }

private:
    void build_float_forms() {
        bpf_.clear();
        left_.clear();
        right_.clear();
        for (const auto& t : bp_) bpf_.push_back(t.to_double());
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            left_.push_back(to_doubles(pieces_[i].shifted(bp_[i])));
            right_.push_back(to_doubles(pieces_[i].shifted(bp_[i + 1])));
        }
    }
    static std::vector<double> to_doubles(const Polynomial& p) {
        std::vector<double> r;
        for (const auto& c : p.coeffs()) r.push_back(c.to_double());
        return r;
    }

    std::vector<Rational> bp_;
    std::vector<Polynomial> pieces_;
    std::vector<double> bpf_;
    std::vector<std::vector<double>> left_, right_;
};

/// B_n, support [-n/2, n/2].
inline PiecewisePolynomial bspline_centered(int n) {
    if (n < 1) throw std::invalid_argument("bspline_centered: order must be >= 1");
    PiecewisePolynomial b({Rational(-1, 2), Rational(1, 2)}, {Polynomial::constant(1)});
    for (int k = 1; k < n; ++k) b = b.convolve_with_box();
    return b;
}

/// N_n(x) = B_n(x - n/2), support [0, n].
inline PiecewisePolynomial cardinal(int n) {
    if (n < 1) throw std::invalid_argument("cardinal: order must be >= 1");
    return bspline_centered(n).translated(Rational(n, 2));
}

inline Rational eval_exact(const PiecewisePolynomial& f, const Rational& x) { return f(x); }
inline double eval_float(const PiecewisePolynomial& f, double x) { return f(x); }

/// Sum over n in Z of f(t + period * n); finitely many terms meet the support.
inline Rational periodize_exact(const PiecewisePolynomial& f, const Rational& period, const Rational& t) {
    if (period.sign() <= 0) throw std::invalid_argument("periodize_exact: period must be positive");
    const BigInt lo = ((f.support_lo() - t) / period).floor();
    const BigInt hi = ((f.support_hi() - t) / period).ceil();
    Rational sum;
    for (BigInt n = lo; n <= hi; ++n) sum += f(t + period * Rational(n));
    return sum;
}

inline double periodize_float(const PiecewisePolynomial& f, double period, double t) {
    if (!(period > 0)) throw std::invalid_argument("periodize_float: period must be positive");
    const long long lo = static_cast<long long>(std::floor((f.support_lo_f() - t) / period));
    const long long hi = static_cast<long long>(std::ceil((f.support_hi_f() - t) / period));
    double sum = 0.0;
    for (long long n = lo; n <= hi; ++n) sum += f(t + period * static_cast<double>(n));
    return sum;
}

struct PartlyPouResult {
    bool is_constant = false;
    std::optional<Rational> constant;
    std::vector<Rational> values;
};

/// Is x inside the union of intervals where translates of N_n along c^{-1}Z
/// sum to a constant: [m + n{c}, m + 1] when {c} >= 0, [m, m + 1 + n{c}]
/// when {c} <= 0.
inline bool in_partly_pou_region(int n, const Rational& c, const Rational& x) {
    const Rational fc = signed_frac(c);
    const Rational nfc = Rational(n) * fc;
    const Rational fx = x - Rational(x.floor());  // in [0, 1)
    if (fc.sign() >= 0) return fx.is_zero() || fx >= nfc;
    return fx <= Rational(1) + nfc;
}

/// Evaluates sum_k N_n((x + k) / c) exactly at each sample.
inline PartlyPouResult verify_partly_pou(int n, const Rational& c, const std::vector<Rational>& xs) {
    if (n < 1) throw std::invalid_argument("verify_partly_pou: order must be >= 1");
    if (c.sign() <= 0) throw std::invalid_argument("verify_partly_pou: c must be positive");
    if (abs(signed_frac(c)) > Rational(1, n))
        throw std::invalid_argument("verify_partly_pou: |{c}| exceeds 1/n");
    const auto N = cardinal(n);
    PartlyPouResult res;
    for (const auto& x : xs) {
        if (!in_partly_pou_region(n, c, x))
            throw std::invalid_argument("verify_partly_pou: sample " + x.str() + " outside the constant region");
        // (x + k)/c in [0, n]  <=>  k in [-x, n c - x]
        const BigInt lo = (-x).floor(), hi = (Rational(n) * c - x).ceil();
        Rational s;
        for (BigInt k = lo; k <= hi; ++k) s += N((x + Rational(k)) / c);
        res.values.push_back(s);
    }
    res.is_constant = !res.values.empty() &&
                      std::all_of(res.values.begin(), res.values.end(),
                                  [&](const Rational& v) { return v == res.values.front(); });
    if (res.is_constant) res.constant = res.values.front();
    return res;
}

}  // namespace gabspline
