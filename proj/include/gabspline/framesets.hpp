#pragma once

/**
 * @file framesets.hpp
 * @brief Frame-set regions of B-spline Gabor systems: painless alternate
 * duals, exact non-frame certificates and point classification.
 *
 * Two exact certificate kinds are produced:
 *
 *  - ZeroRow: for ab = p/q, b > 3/2 and nu0 = 1/round(b), the first row of
 *    Phi^{N_n}(1/q, nu0) samples Z_{1/b} N_n at the points 1/q - l p/q.
 *    If at every such point the residue-class sums c_0..c_{R-1} coincide,
 *    each entry is a vanishing root-of-unity sum, the row is zero and the
 *    system is not a frame.
 *  - RowDependence: for ab = 5/6, b in [7/3, 8/3], the rows of
 *    Psi^{B_2}(0, 0) (with the common factor b^{-1/2} dropped, so all
 *    entries are rational 6a-periodizations of B_2) satisfy
 *    R2 - R5 = 2a v and R3 - R4 = (6a/5) v with v = [0,-1,-1,0,1,1],
 *    hence 3 (R2 - R5) - 5 (R3 - R4) = 0 and the matrix has rank < 5.
 */

#include "gabspline/bspline.hpp"
#include "gabspline/rational.hpp"
#include "gabspline/zak.hpp"
#include "gabspline/zibulski_zeevi.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabspline {

/// Sigma_n = {(a, b) : 0 < a < n, ab < 1, n + a <= 2/b}.
inline bool sigma_membership(int n, const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("sigma_membership: a, b must be positive");
    return a < Rational(n) && a * b < Rational(1) && (Rational(n) + a) * b <= Rational(2);
}

// ---------------------------------------------------------------------------
// Painless alternate dual

/// h(x) = b / g(x) on [-a/2, a/2], 0 elsewhere.
struct DualWindow {
    Rational a, b;
    PiecewisePolynomial g;
    Rational c;            // inf of |g| on [-a/2, a/2]
    Rational lower_bound;  // c^2 / b, a lower frame bound of G(g, a, b)

    Rational operator()(const Rational& x) const {
        const Rational half = a / Rational(2);
        if (x < -half || x > half) return {};
        return b / g(x);
    }
};

namespace detail {

/// inf of |f| over [lo, hi] when attained at a rational point (an endpoint
/// or a breakpoint); throws if some piece has an interior minimum of |f|
/// below that value.
inline Rational inf_abs_on(const PiecewisePolynomial& f, const Rational& lo, const Rational& hi) {
    std::vector<Rational> cuts{lo, hi};
    for (const auto& t : f.breakpoints())
        if (t > lo && t < hi) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    std::optional<Rational> best;
    double interior = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
        const auto idx = f.piece_index(mid);
        const Polynomial p = idx ? f.pieces()[*idx] : Polynomial();
        for (const auto& e : {cuts[i], cuts[i + 1]}) {
            const Rational v = abs(p(e));
            if (!best || v < *best) best = v;
        }
        auto [plo, phi] = poly_extremes(p, cuts[i], cuts[i + 1]);
        interior = std::min(interior, (plo <= 0.0 && phi >= 0.0) ? 0.0 : std::min(std::abs(plo), std::abs(phi)));
    }
    if (interior < best->to_double() * (1.0 - 1e-12))
        throw std::domain_error("inf |g| is not attained at a rational point; exact c unavailable");
    return *best;
}

}  // namespace detail

inline DualWindow painless_dual(const PiecewisePolynomial& g, int n, const Rational& a, const Rational& b) {
    if (!sigma_membership(n, a, b)) throw std::invalid_argument("painless_dual: (a, b) is not in Sigma_n");
    if (g.support_lo() < Rational(-n, 2) || g.support_hi() > Rational(n, 2))
        throw std::invalid_argument("painless_dual: supp g must lie in [-n/2, n/2]");
    const Rational half = a / Rational(2);
    Rational c = detail::inf_abs_on(g, -half, half);
    if (c.is_zero()) throw std::invalid_argument("painless_dual: g vanishes on [-a/2, a/2]");
    Rational bound = c * c / b;
    return {a, b, g, std::move(c), std::move(bound)};
}

struct DualityCheck {
    bool pass = true;
    std::optional<long long> max_violation_m;  // first m (by |m|) where an equation fails
    std::size_t equations_checked = 0;
};

/// Checks sum_k g(x - m/b - k a) h(x - k a) = b delta_{m,0} exactly at every
/// sample and every m that can give a nonzero term. Samples must lie in the
/// open interval (-a/2, a/2): the equations hold a.e. and at the endpoints
/// the closed support of h picks up two translates.
inline DualityCheck verify_duality(const PiecewisePolynomial& g, const DualWindow& h, const Rational& a,
                                   const Rational& b, const std::vector<Rational>& xs) {
    const Rational half = a / Rational(2);
    const Rational h_lo = -h.a / Rational(2), h_hi = h.a / Rational(2);
    const long long M = to_ll((b * (g.support_length() + (h_hi - h_lo))).ceil());
    DualityCheck res;
    std::optional<long long> worst;
    for (const auto& x : xs) {
        if (x <= -half || x >= half) throw std::invalid_argument("verify_duality: sample " + x.str() + " not in (-a/2, a/2)");
        const BigInt k_lo = ((x - h_hi) / a).ceil(), k_hi = ((x - h_lo) / a).floor();
        for (long long m = -M; m <= M; ++m) {
            Rational s;
            for (BigInt k = k_lo; k <= k_hi; ++k) {
                const Rational t = x - a * Rational(k);
                s += g(t - Rational(m) / b) * h(t);
            }
            ++res.equations_checked;
            const Rational expected = m == 0 ? b : Rational(0);
            if (s != expected) {
                res.pass = false;
                if (!worst || std::llabs(m) < std::llabs(*worst)) worst = m;
            }
        }
    }
    res.max_violation_m = worst;
    return res;
}

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind { ZeroRow, RowDependence };

inline const char* to_string(CertificateKind k) { return k == CertificateKind::ZeroRow ? "ZeroRow" : "RowDependence"; }

struct Certificate {
    CertificateKind kind = CertificateKind::ZeroRow;
    int n = 2;
    Rational a, b;
    long long p = 1, q = 1;
    Rational x0, nu0;

    // ZeroRow: one decomposition per column l, at x0 - l p/q.
    std::vector<ResidueDecomposition> residues;

    // RowDependence: Psi(x0, nu0) rows without the b^{-1/2} factor, the
    // vanishing row combination and the two row differences it rests on.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> combination;
    std::vector<Rational> r2_minus_r5, r3_minus_r4;
};

struct CertificateSearch {
    std::optional<Certificate> certificate;
    std::string reason;  // empty when a certificate was found
    std::optional<ResidueDecomposition> failing;

    bool found() const { return certificate.has_value(); }
};

/// Zero-row certificate for G(B_n, p/(q b), b). The exact check is run for
/// any b > 3/2; it is guaranteed to succeed when |{b}| <= 1/(nq) (strictly
/// inside for n = 1).
inline CertificateSearch certify_thm34(int n, long long p, long long q, const Rational& b) {
    if (n < 1) throw std::invalid_argument("certify_thm34: order must be >= 1");
    if (p < 1 || q < 1) throw std::invalid_argument("certify_thm34: p, q must be positive");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("certify_thm34: gcd(p, q) must be 1");
    if (b <= Rational(3, 2)) throw std::invalid_argument("certify_thm34: requires b > 3/2");

    const long long R = to_ll(round_nearest(b));
    Certificate cert;
    cert.kind = CertificateKind::ZeroRow;
    cert.n = n;
    cert.b = b;
    cert.p = p;
    cert.q = q;
    cert.a = Rational(p) / (Rational(q) * b);
    cert.x0 = Rational(1, q);
    cert.nu0 = Rational(1, R);
    if (n == 1) {
        // Z N_1 jumps along x = 0 and x = {b} (mod 1), and the points 1/q + j/q
        // touch them. A zero there is a zero on a null set only, so the q
        // points are centred in the open constant region instead, where Z is
        // continuous near (x, nu0).
        const Rational fb = signed_frac(b);
        if (abs(fb) >= Rational(1, q)) {
            CertificateSearch out;
            out.reason = "n = 1 needs |{b}| < 1/q for a witness off the discontinuity lines of Z N_1";
            return out;
        }
        cert.x0 = (fb + Rational(1, q)) / Rational(2);
    }

    const auto N = cardinal(n);
    const Rational step(p, q);
    for (long long l = 0; l < q; ++l) {
        const Rational x = cert.x0 - Rational(l) * step;
        auto rd = residue_decomposition(N, b, x, R);
        if (!rd.all_equal()) {
            CertificateSearch out;
            out.reason = "residue-class sums of Z_{1/b} N_" + std::to_string(n) + " at x = " + x.str() +
                         " are not constant; no zero row at (1/q, 1/round(b))";
            out.failing = std::move(rd);
            return out;
        }
        cert.residues.push_back(std::move(rd));
    }
    return {std::move(cert), {}, std::nullopt};
}

inline bool thm35_applicable(const Rational& a) { return a >= Rational(5, 16) && a <= Rational(5, 14); }

/// Row-dependence certificate for G(B_2, a, 5/(6a)), a in [5/16, 5/14].
inline CertificateSearch certify_thm35(const Rational& a) {
    if (!thm35_applicable(a)) throw std::invalid_argument("certify_thm35: requires a in [5/16, 5/14]");
    const Rational b = Rational(5) / (Rational(6) * a);
    const auto B2 = bspline_centered(2);

    Certificate cert;
    cert.kind = CertificateKind::RowDependence;
    cert.n = 2;
    cert.a = a;
    cert.b = b;
    cert.p = 5;
    cert.q = 6;
    cert.x0 = Rational(0);
    cert.nu0 = Rational(0);

    const Rational period = Rational(6) * a;
    for (int k = 0; k < 5; ++k) {
        std::vector<Rational> row;
        for (int l = 0; l < 6; ++l) row.push_back(periodize_exact(B2, period, a * Rational(l) + Rational(k) / b));
        cert.rows.push_back(std::move(row));
    }
    for (int l = 0; l < 6; ++l) {
        cert.r2_minus_r5.push_back(cert.rows[1][l] - cert.rows[4][l]);
        cert.r3_minus_r4.push_back(cert.rows[2][l] - cert.rows[3][l]);
    }
    const std::vector<Rational> v{0, -1, -1, 0, 1, 1};
    std::vector<Rational> expected_25, expected_34;
    for (const auto& e : v) {
        expected_25.push_back(Rational(2) * a * e);
        expected_34.push_back(Rational(6, 5) * a * e);
    }
    cert.combination = {0, 3, -5, 5, -3};

    CertificateSearch out;
    if (cert.r2_minus_r5 != expected_25 || cert.r3_minus_r4 != expected_34) {
        out.reason = "row differences of Psi(0,0) do not match the expected pattern";
        return out;
    }
    for (int l = 0; l < 6; ++l) {
        Rational s;
        for (int k = 0; k < 5; ++k) s += cert.combination[k] * cert.rows[k][l];
        if (!s.is_zero()) {
            out.reason = "row combination 3(R2 - R5) - 5(R3 - R4) is not zero";
            return out;
        }
    }
    out.certificate = std::move(cert);
    return out;
}

// ---------------------------------------------------------------------------
// Conjectured non-frame hyperbola pieces for B_2

struct ConjectureCurve {
    int m = 1, k = 2;
    Rational a0, b0, ratio, b_lo, b_hi;
};

/// a0 = 1/(2m+1), b0 = (2k+1)/2, ab = (2k+1)/(2(2m+1)),
/// b in [b0 - a0 (k-m)/2, b0 + a0 (k-m)/2]; requires k > m >= 1, a0 b0 < 1.
inline ConjectureCurve conjecture_curve(int m, int k) {
    if (m < 1 || k <= m) throw std::invalid_argument("conjecture curve: requires k > m >= 1");
    ConjectureCurve c;
    c.m = m;
    c.k = k;
    c.a0 = Rational(1, 2 * m + 1);
    c.b0 = Rational(2 * k + 1, 2);
    c.ratio = c.a0 * c.b0;
    if (c.ratio >= Rational(1)) throw std::invalid_argument("conjecture curve: requires a0 b0 < 1");
    const Rational w = c.a0 * Rational(k - m) / Rational(2);
    c.b_lo = c.b0 - w;
    c.b_hi = c.b0 + w;
    return c;
}

struct ScanPoint {
    Rational a, b;
    FrameBoundReport report;
};

struct ConjectureScan {
    ConjectureCurve curve;
    std::vector<ScanPoint> points;
};

/// Numerical evidence only: frame-bound estimates along the curve.
inline ConjectureScan conjecture41_scan(int m, int k, int num_b_samples, const EstimateOptions& opt = {},
                                        Variant variant = Variant::Psi) {
    if (num_b_samples < 2) throw std::invalid_argument("conjecture scan: need at least two samples");
    ConjectureScan scan{conjecture_curve(m, k), {}};
    const auto g = bspline_centered(2);
    const Rational span = scan.curve.b_hi - scan.curve.b_lo;
    for (int i = 0; i < num_b_samples; ++i) {
        const Rational b = scan.curve.b_lo + span * Rational(i, num_b_samples - 1);
        const Rational a = scan.curve.ratio / b;
        scan.points.push_back({a, b, frame_bounds_estimate(g, GaborParams::make(a, b), variant, opt)});
    }
    return scan;
}

inline bool on_conjecture_curve(const Rational& a, const Rational& b) {
    const Rational r = a * b;
    const long long kb = to_ll(b.floor());
    for (long long k = std::max<long long>(2, kb - 1); k <= kb + 1; ++k) {
        for (long long m = (k + 1) / 2; m < k; ++m) {
            if (m < 1 || k > 2 * m) continue;  // a0 b0 < 1  <=>  k <= 2m
            const auto c = conjecture_curve(static_cast<int>(m), static_cast<int>(k));
            if (c.ratio == r && b >= c.b_lo && b <= c.b_hi) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Classification

enum class RegionLabel {
    PainlessFrame,
    SigmaFrame,
    NonFrame_ab_ge_1,
    NonFrame_a_ge_n,
    NonFrame_b_integer,
    NonFrame_Thm34,
    NonFrame_Thm35,
    Conjectured_NonFrame,
    Unknown,
};

inline const char* to_string(RegionLabel l) {
    switch (l) {
        case RegionLabel::PainlessFrame: return "PainlessFrame";
        case RegionLabel::SigmaFrame: return "SigmaFrame";
        case RegionLabel::NonFrame_ab_ge_1: return "NonFrame_ab_ge_1";
        case RegionLabel::NonFrame_a_ge_n: return "NonFrame_a_ge_n";
        case RegionLabel::NonFrame_b_integer: return "NonFrame_b_integer";
        case RegionLabel::NonFrame_Thm34: return "NonFrame_Thm34";
        case RegionLabel::NonFrame_Thm35: return "NonFrame_Thm35";
        case RegionLabel::Conjectured_NonFrame: return "Conjectured_NonFrame";
        case RegionLabel::Unknown: return "Unknown";
    }
    return "Unknown";
}

struct Classification {
    RegionLabel label = RegionLabel::Unknown;
    std::optional<double> sqrtA;  // advisory, only for Unknown with fallback
};

/// Labels in fixed precedence:
///   ab >= 1, a >= n, integer b >= 2, zero-row certificate, row-dependence
///   certificate (n = 2), painless (b <= 1/n), Sigma_n, conjectured curve
///   (n = 2), Unknown.
/// A frame is never claimed from numerics; the optional estimate only
/// annotates Unknown points.
inline Classification classify_point(int n, const Rational& a, const Rational& b, bool estimate_fallback = false,
                                     const EstimateOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("classify_point: order must be >= 1");
    if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("classify_point: a, b must be positive");
    const Rational ab = a * b;
    if (ab >= Rational(1)) return {RegionLabel::NonFrame_ab_ge_1, {}};
    if (a >= Rational(n)) return {RegionLabel::NonFrame_a_ge_n, {}};
    if (b.is_integer() && b >= Rational(2)) return {RegionLabel::NonFrame_b_integer, {}};
    if (b > Rational(3, 2)) {
        const auto [p, q] = reduce_ratio(a, b);
        if (certify_thm34(n, p, q, b).found()) return {RegionLabel::NonFrame_Thm34, {}};
    }
    if (n == 2 && ab == Rational(5, 6) && thm35_applicable(a) && certify_thm35(a).found())
        return {RegionLabel::NonFrame_Thm35, {}};
    if (b * Rational(n) <= Rational(1)) return {RegionLabel::PainlessFrame, {}};
    if (sigma_membership(n, a, b)) return {RegionLabel::SigmaFrame, {}};
    if (n == 2 && on_conjecture_curve(a, b)) return {RegionLabel::Conjectured_NonFrame, {}};
    Classification c;
    if (estimate_fallback)
        c.sqrtA = frame_bounds_estimate(bspline_centered(n), GaborParams::make(a, b), Variant::Psi, opt).sqrtA;
    return c;
}

}  // namespace gabspline
