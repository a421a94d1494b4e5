#pragma once

/**
 * @file zak.hpp
 * @brief Zak transform of compactly supported piecewise polynomials.
 *
 *     (Z_lambda f)(x, nu) = sqrt(lambda) * sum_k f(lambda (x - k)) e^{2 pi i k nu}
 *
 * The floating-point path sums the finitely many k whose argument meets the
 * support. The exact path regroups the sum at a rational frequency s/R by
 * the residue of k mod R; with lambda = 1/b and k = -(R r + l),
 *
 *     Z_{1/b} f(x, s/R) = b^{-1/2} sum_{l=0}^{R-1} c_l e^{-2 pi i l s / R},
 *     c_l = sum_r f((x + R r + l) / b).
 *
 * When all c_l coincide the root-of-unity sum vanishes for every s not in
 * RZ, which is an exact certificate of a zero of the Zak transform.
 */

#include "gabspline/bspline.hpp"
#include "gabspline/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gabspline {

inline Complex zak_transform(const PiecewisePolynomial& f, double lambda, double x, double nu) {
    if (!(lambda > 0)) throw std::invalid_argument("zak_transform: lambda must be positive");
    // lambda (x - k) in [lo, hi)  <=>  k in (x - hi/lambda, x - lo/lambda]
    const long long k_lo = static_cast<long long>(std::floor(x - f.support_hi_f() / lambda));
    const long long k_hi = static_cast<long long>(std::ceil(x - f.support_lo_f() / lambda));
    Complex sum{0.0, 0.0};
    for (long long k = k_lo; k <= k_hi; ++k) {
        const double v = f(lambda * (x - static_cast<double>(k)));
        if (v == 0.0) continue;
        const double ph = 2.0 * std::numbers::pi * std::remainder(static_cast<double>(k) * nu, 1.0);
        sum += v * Complex(std::cos(ph), std::sin(ph));
    }
    return std::sqrt(lambda) * sum;
}

inline Complex zak_transform(const PiecewisePolynomial& f, const Rational& lambda, double x, double nu) {
    if (lambda.sign() <= 0) throw std::invalid_argument("zak_transform: lambda must be positive");
    return zak_transform(f, lambda.to_double(), x, nu);
}

/// max(|Z(x+1,nu) - e^{2 pi i nu} Z(x,nu)|, |Z(x,nu+1) - Z(x,nu)|).
inline double quasi_periodicity_residual(const PiecewisePolynomial& f, double lambda, double x, double nu) {
    const Complex z = zak_transform(f, lambda, x, nu);
    const double ph = 2.0 * std::numbers::pi * nu;
    const Complex shift_x = zak_transform(f, lambda, x + 1.0, nu) - Complex(std::cos(ph), std::sin(ph)) * z;
    const Complex shift_nu = zak_transform(f, lambda, x, nu + 1.0) - z;
    return std::max(std::abs(shift_x), std::abs(shift_nu));
}

struct ResidueDecomposition {
    long long R = 1;
    std::vector<Rational> coeffs;
    Rational lambda;  // 1/b
    Rational x;

    bool all_equal() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [&](const Rational& c) { return c == coeffs.front(); });
    }

    /// Z_lambda f(x, s/R) rebuilt from the class sums.
    Complex reconstruct(long long s) const {
        Complex sum{0.0, 0.0};
        for (long long l = 0; l < R; ++l)
            sum += coeffs[static_cast<std::size_t>(l)].to_double() * root_of_unity(l * s, R);
        return std::sqrt(lambda.to_double()) * sum;
    }
};

/// c_l = sum_r f((x + R r + l) / b), l = 0..R-1, exactly.
inline ResidueDecomposition residue_decomposition(const PiecewisePolynomial& f, const Rational& b,
                                                  const Rational& x, long long R) {
    if (b.sign() <= 0) throw std::invalid_argument("residue_decomposition: b must be positive");
    if (R < 1) throw std::invalid_argument("residue_decomposition: R must be >= 1");
    ResidueDecomposition d;
    d.R = R;
    d.lambda = Rational(1) / b;
    d.x = x;
    d.coeffs.reserve(static_cast<std::size_t>(R));
    const Rational Rr(R);
    for (long long l = 0; l < R; ++l) {
        // (x + R r + l)/b in [lo, hi]  <=>  r in [(b lo - x - l)/R, (b hi - x - l)/R]
        const Rational base = x + Rational(l);
        const BigInt r_lo = ((b * f.support_lo() - base) / Rr).floor();
        const BigInt r_hi = ((b * f.support_hi() - base) / Rr).ceil();
        Rational s;
        for (BigInt r = r_lo; r <= r_hi; ++r) s += f((base + Rr * Rational(r)) / b);
        d.coeffs.push_back(std::move(s));
    }
    return d;
}

/// True iff the residue-class sums of N_n at scale 1/b, point x, modulus
/// round(b) are all equal; certifies Z_{1/b} N_n(x, k/round(b)) = 0 for all
/// k not divisible by round(b). No precondition on the size of {b}; callers
/// that need |{b}| small check it themselves.
inline bool residue_classes_constant(const PiecewisePolynomial& cardinal_n, const Rational& b, const Rational& x) {
    const long long R = to_ll(round_nearest(b));
    if (R < 2) throw std::invalid_argument("residue_classes_constant: round(b) must be >= 2");
    return residue_decomposition(cardinal_n, b, x, R).all_equal();
}

inline bool zak_zero_certificate(int n, const Rational& b, const Rational& x) {
    if (n < 1) throw std::invalid_argument("zak_zero_certificate: order must be >= 1");
    if (b <= Rational(3, 2)) throw std::invalid_argument("zak_zero_certificate: requires b > 3/2");
    if (abs(signed_frac(b)) > Rational(1, n))
        throw std::invalid_argument("zak_zero_certificate: requires |{b}| <= 1/n");
    return residue_classes_constant(cardinal(n), b, x);
}

}  // namespace gabspline
