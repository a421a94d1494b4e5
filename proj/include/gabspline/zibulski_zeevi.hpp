#pragma once

/**
 * @file zibulski_zeevi.hpp
 * @brief Zibulski-Zeevi matrices and grid estimates of Gabor frame bounds.
 *
 * For ab = p/q in lowest terms the Gabor system G(g, a, b) is a frame with
 * optimal bounds A, B exactly when, for a.e. (x, nu), the q columns of the
 * p x q matrix Phi^g(x, nu) (equivalently Psi^g) form a frame for C^p with
 * uniform bounds; sqrt(A) is the essential infimum of the smallest singular
 * value and sqrt(B) the essential supremum of the largest.
 *
 *   Phi(k, l) = p^{-1/2} (Z_{1/b} g)(x - l p/q, nu + k/p)            on [0,1)^2
 *   Psi(k, l) = b^{-1/2} sum_n g(x + a q n + a l + k/b) e^{-2 pi i a q n nu}
 *                                                       on [0,a) x [0,1/(aq))
 *
 * frame_bounds_estimate samples the fundamental domain on a uniform grid
 * (plus the rational points where exact zeros are known to sit) and polishes
 * the extremal samples by a halving compass search. The result bounds the
 * true sqrt(A) from above and sqrt(B) from below; it is an estimate, not a
 * proof of a positive lower bound.
 */

#include "gabspline/bspline.hpp"
#include "gabspline/rational.hpp"
#include "gabspline/singular.hpp"
#include "gabspline/zak.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace gabspline {

struct GaborParams {
    Rational a, b;
    long long p = 1, q = 1;

    static GaborParams make(const Rational& a, const Rational& b) {
        auto [p, q] = reduce_ratio(a, b);
        return {a, b, p, q};
    }
};

enum class Variant { Phi, Psi };

inline const char* to_string(Variant v) { return v == Variant::Phi ? "phi" : "psi"; }

inline Variant parse_variant(const std::string& s) {
    if (s == "phi") return Variant::Phi;
    if (s == "psi") return Variant::Psi;
    throw std::invalid_argument("unknown variant '" + s + "' (expected phi or psi)");
}

struct ZZMatrix {
    Variant variant = Variant::Phi;
    std::size_t rows = 0, cols = 0;
    std::vector<Complex> entries;  // row-major, rows x cols
    double x = 0.0, nu = 0.0;

    const Complex& operator()(std::size_t k, std::size_t l) const { return entries[k * cols + l]; }
};

namespace detail {

/// Cached floating views of the lattice parameters.
struct LatticeF {
    double a, b, p, q, aq, inv_b;
    explicit LatticeF(const GaborParams& gp)
        : a(gp.a.to_double()),
          b(gp.b.to_double()),
          p(static_cast<double>(gp.p)),
          q(static_cast<double>(gp.q)),
          aq((gp.a * Rational(gp.q)).to_double()),
          inv_b((Rational(1) / gp.b).to_double()) {}
};

inline Complex unit_phase(double turns) {
    const double ph = 2.0 * std::numbers::pi * std::remainder(turns, 1.0);
    return {std::cos(ph), std::sin(ph)};
}

inline void fill_phi(const PiecewisePolynomial& g, const GaborParams& gp, const LatticeF& L, double x, double nu,
                     std::vector<Complex>& out) {
    const auto P = static_cast<std::size_t>(gp.p), Q = static_cast<std::size_t>(gp.q);
    out.resize(P * Q);
    const double scale = 1.0 / std::sqrt(L.p);
    const double shift = L.p / L.q;
    for (std::size_t k = 0; k < P; ++k)
        for (std::size_t l = 0; l < Q; ++l)
            out[k * Q + l] = scale * zak_transform(g, L.inv_b, x - static_cast<double>(l) * shift,
                                                   nu + static_cast<double>(k) / L.p);
}

inline void fill_psi(const PiecewisePolynomial& g, const GaborParams& gp, const LatticeF& L, double x, double nu,
                     std::vector<Complex>& out) {
    const auto P = static_cast<std::size_t>(gp.p), Q = static_cast<std::size_t>(gp.q);
    out.resize(P * Q);
    const double scale = 1.0 / std::sqrt(L.b);
    const double lo = g.support_lo_f(), hi = g.support_hi_f();
    for (std::size_t k = 0; k < P; ++k) {
        for (std::size_t l = 0; l < Q; ++l) {
            const double t = x + L.a * static_cast<double>(l) + static_cast<double>(k) * L.inv_b;
            const auto n_lo = static_cast<long long>(std::floor((lo - t) / L.aq));
            const auto n_hi = static_cast<long long>(std::ceil((hi - t) / L.aq));
            Complex s{0.0, 0.0};
            for (long long n = n_lo; n <= n_hi; ++n) {
                const double v = g(t + L.aq * static_cast<double>(n));
                if (v != 0.0) s += v * unit_phase(-L.aq * static_cast<double>(n) * nu);
            }
            out[k * Q + l] = scale * s;
        }
    }
}

}  // namespace detail

inline ZZMatrix phi_matrix(const PiecewisePolynomial& g, const GaborParams& gp, double x, double nu) {
    ZZMatrix m{Variant::Phi, static_cast<std::size_t>(gp.p), static_cast<std::size_t>(gp.q), {}, x, nu};
    detail::fill_phi(g, gp, detail::LatticeF(gp), x, nu, m.entries);
    return m;
}

inline ZZMatrix psi_matrix(const PiecewisePolynomial& g, const GaborParams& gp, double x, double nu) {
    ZZMatrix m{Variant::Psi, static_cast<std::size_t>(gp.p), static_cast<std::size_t>(gp.q), {}, x, nu};
    detail::fill_psi(g, gp, detail::LatticeF(gp), x, nu, m.entries);
    return m;
}

inline ZZMatrix zz_matrix(Variant v, const PiecewisePolynomial& g, const GaborParams& gp, double x, double nu) {
    return v == Variant::Phi ? phi_matrix(g, gp, x, nu) : psi_matrix(g, gp, x, nu);
}

inline SingularExtrema singular_extrema(const ZZMatrix& m) { return singular_extrema(m.entries, m.rows, m.cols); }

/// True when adjacent pieces agree at every breakpoint and the function
/// vanishes at both ends of its support.
inline bool is_continuous(const PiecewisePolynomial& f) {
    const auto& bp = f.breakpoints();
    const auto& pc = f.pieces();
    if (!pc.front()(bp.front()).is_zero() || !pc.back()(bp.back()).is_zero()) return false;
    for (std::size_t i = 0; i + 1 < pc.size(); ++i)
        if (pc[i](bp[i + 1]) != pc[i + 1](bp[i + 1])) return false;
    return true;
}

struct GridSize {
    int nx = 128;
    int nnu = 128;
};

struct FrameBoundReport {
    double sqrtA = 0.0;
    double sqrtB = 0.0;
    // sqrt(b) * sqrtA, sqrt(b) * sqrtB: the extrema of Psi taken without
    // its b^{-1/2} prefactor, i.e. of the raw periodization matrix
    // [sum_n g(x + aqn + al + k/b) ...]. Published lower-bound curves for
    // B_2 are often plotted on this scale.
    double sqrtA_unnormalized = 0.0;
    double sqrtB_unnormalized = 0.0;
    GridSize grid;
    int refine_steps = 0;
    bool refined = false;
    Variant variant = Variant::Phi;
    std::array<double, 2> argmin{0.0, 0.0};
    std::array<double, 2> argmax{0.0, 0.0};
};

/// Upper limit on p * q for grid estimation; each sample costs O(p^2 q).
inline constexpr double kMaxMatrixEntries = 1 << 16;

struct EstimateOptions {
    GridSize grid;
    int refine_steps = 20;
    int workers = 1;
};

namespace detail {

struct Sample {
    double x, nu;
};

struct Extremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t lo_idx = 0, hi_idx = 0;

    void add(const SingularExtrema& s, std::size_t idx) {
        if (s.sigma_min < lo || (s.sigma_min == lo && idx < lo_idx)) {
            lo = s.sigma_min;
            lo_idx = idx;
        }
        if (s.sigma_max > hi || (s.sigma_max == hi && idx < hi_idx)) {
            hi = s.sigma_max;
            hi_idx = idx;
        }
    }
    void merge(const Extremes& o) {
        if (o.lo < lo || (o.lo == lo && o.lo_idx < lo_idx)) {
            lo = o.lo;
            lo_idx = o.lo_idx;
        }
        if (o.hi > hi || (o.hi == hi && o.hi_idx < hi_idx)) {
            hi = o.hi;
            hi_idx = o.hi_idx;
        }
    }
};

}  // namespace detail

inline FrameBoundReport frame_bounds_estimate(const PiecewisePolynomial& g, const GaborParams& gp, Variant variant,
                                              const EstimateOptions& opt = {}) {
    if (opt.grid.nx < 2 || opt.grid.nnu < 2) throw std::invalid_argument("frame_bounds_estimate: grid dims must be >= 2");
    if (opt.refine_steps < 0) throw std::invalid_argument("frame_bounds_estimate: refine_steps must be >= 0");
    if (static_cast<double>(gp.p) * static_cast<double>(gp.q) > kMaxMatrixEntries)
        throw std::invalid_argument("frame_bounds_estimate: ab = " + std::to_string(gp.p) + "/" + std::to_string(gp.q) +
                                    " gives a matrix too large to sample");
    const detail::LatticeF L(gp);
    const double len_x = variant == Variant::Phi ? 1.0 : L.a;
    const double len_nu = variant == Variant::Phi ? 1.0 : 1.0 / L.aq;
    const double hx = len_x / opt.grid.nx, hnu = len_nu / opt.grid.nnu;
    const bool continuous = is_continuous(g);
    // Z of a discontinuous generator jumps along finitely many lines; shift
    // the grid off them. Pointwise values there do not affect ess inf/sup.
    const double off_x = continuous ? 0.0 : 0.5 * hx, off_nu = continuous ? 0.0 : 0.5 * hnu;

    std::vector<detail::Sample> samples;
    samples.reserve(static_cast<std::size_t>(opt.grid.nx) * static_cast<std::size_t>(opt.grid.nnu));
    for (int i = 0; i < opt.grid.nx; ++i)
        for (int j = 0; j < opt.grid.nnu; ++j) samples.push_back({off_x + i * hx, off_nu + j * hnu});
    if (continuous && variant == Variant::Phi && gp.b > Rational(3, 2)) {
        const long long R = to_ll(round_nearest(gp.b));
        for (long long l = 0; l < gp.q; ++l)
            for (long long k = 0; k < R; ++k)
                samples.push_back({static_cast<double>(l) / L.q, static_cast<double>(k) / static_cast<double>(R)});
    }

    auto eval = [&](double x, double nu, std::vector<Complex>& buf) {
        if (variant == Variant::Phi)
            detail::fill_phi(g, gp, L, x, nu, buf);
        else
            detail::fill_psi(g, gp, L, x, nu, buf);
        return singular_extrema(buf, static_cast<std::size_t>(gp.p), static_cast<std::size_t>(gp.q));
    };

    const int workers = std::max(1, opt.workers);
    std::vector<detail::Extremes> partial(static_cast<std::size_t>(workers));
    auto sweep = [&](int w) {
        std::vector<Complex> buf;
        for (std::size_t idx = static_cast<std::size_t>(w); idx < samples.size(); idx += static_cast<std::size_t>(workers))
            partial[static_cast<std::size_t>(w)].add(eval(samples[idx].x, samples[idx].nu, buf), idx);
    };
    if (workers == 1) {
        sweep(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(sweep, w);
    }
    detail::Extremes ext;
    for (const auto& p : partial) ext.merge(p);

    FrameBoundReport rep;
    rep.grid = opt.grid;
    rep.variant = variant;
    rep.refine_steps = opt.refine_steps;
    rep.refined = opt.refine_steps > 0;

    // Halving compass search around the extremal samples.
    std::vector<Complex> buf;
    auto polish = [&](detail::Sample s, double best, bool minimize) {
        double dx = hx, dnu = hnu;
        for (int step = 0; step < opt.refine_steps; ++step) {
            dx *= 0.5;
            dnu *= 0.5;
            detail::Sample centre = s;
            for (int ix = -1; ix <= 1; ++ix) {
                for (int jn = -1; jn <= 1; ++jn) {
                    if (ix == 0 && jn == 0) continue;
                    const double x = centre.x + ix * dx, nu = centre.nu + jn * dnu;
                    const auto e = eval(x, nu, buf);
                    const double v = minimize ? e.sigma_min : e.sigma_max;
                    if (minimize ? v < best : v > best) {
                        best = v;
                        s = {x, nu};
                    }
                }
            }
        }
        return std::pair{s, best};
    };
    auto [smin, vmin] = polish(samples[ext.lo_idx], ext.lo, true);
    auto [smax, vmax] = polish(samples[ext.hi_idx], ext.hi, false);
    // Reported points are folded back into the fundamental domain; the
    // singular values are periodic there.
    auto fold = [](double v, double len) {
        double r = std::fmod(v, len);
        return r < 0 ? r + len : r;
    };
    rep.sqrtA = vmin;
    rep.sqrtB = vmax;
    rep.sqrtA_unnormalized = std::sqrt(L.b) * vmin;
    rep.sqrtB_unnormalized = std::sqrt(L.b) * vmax;
    rep.argmin = {fold(smin.x, len_x), fold(smin.nu, len_nu)};
    rep.argmax = {fold(smax.x, len_x), fold(smax.nu, len_nu)};
    return rep;
}

struct PainlessBounds {
    double sqrtA = 0.0;
    double sqrtB = 0.0;
};

namespace detail {

inline double eval_poly_f(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

/// Extremes of p on [u, v]: endpoints plus sign changes of p' located by
/// dense bracketing and bisection.
inline std::pair<double, double> poly_extremes(const Polynomial& poly, const Rational& u, const Rational& v) {
    const double pu = poly(u).to_double(), pv = poly(v).to_double();
    double lo = std::min(pu, pv), hi = std::max(pu, pv);
    if (poly.degree() < 2) return {lo, hi};
    std::vector<double> c, dc;
    for (const auto& r : poly.coeffs()) c.push_back(r.to_double());
    const Polynomial deriv = poly.derivative();
    for (const auto& r : deriv.coeffs()) dc.push_back(r.to_double());
    const double a = u.to_double(), b = v.to_double();
    constexpr int samples = 256;
    double prev_t = a, prev_d = eval_poly_f(dc, a);
    for (int i = 1; i <= samples; ++i) {
        const double t = a + (b - a) * i / samples;
        const double d = eval_poly_f(dc, t);
        if (d == 0.0 || (prev_d < 0) != (d < 0)) {
            double l = prev_t, r = t, dl = prev_d;
            for (int it = 0; it < 200 && r - l > 0; ++it) {
                const double m = 0.5 * (l + r);
                if (m <= l || m >= r) break;
                const double dm = eval_poly_f(dc, m);
                if ((dm < 0) == (dl < 0)) {
                    l = m;
                    dl = dm;
                } else {
                    r = m;
                }
            }
            const double val = eval_poly_f(c, 0.5 * (l + r));
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
        prev_t = t;
        prev_d = d;
    }
    return {lo, hi};
}

}  // namespace detail

/// sum_k |g(x - a k)|^2 over one period [0, a], as exact polynomial pieces.
inline std::vector<std::pair<std::pair<Rational, Rational>, Polynomial>> translate_energy_pieces(
    const PiecewisePolynomial& g, const Rational& a) {
    std::vector<Rational> cuts{Rational(0), a};
    for (const auto& t : g.breakpoints()) {
        // t + a k in (0, a)
        const BigInt k = ((-t) / a).floor() + 1;
        const Rational c = t + a * Rational(k);
        if (c.sign() > 0 && c < a) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<std::pair<std::pair<Rational, Rational>, Polynomial>> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
        const BigInt k_lo = ((mid - g.support_hi()) / a).floor();
        const BigInt k_hi = ((mid - g.support_lo()) / a).ceil();
        Polynomial sum;
        for (BigInt k = k_lo; k <= k_hi; ++k) {
            const Rational shift = a * Rational(k);
            if (auto idx = g.piece_index(mid - shift)) {
                const Polynomial piece = g.pieces()[*idx].shifted(-shift);
                sum += piece * piece;
            }
        }
        out.push_back({{cuts[i], cuts[i + 1]}, std::move(sum)});
    }
    return out;
}

/// Frame bounds in the painless regime b <= 1/|supp g|, where the frame
/// operator is multiplication by b^{-1} sum_k |g(x - ak)|^2.
inline PainlessBounds painless_bounds_closed_form(const PiecewisePolynomial& g, const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("painless_bounds_closed_form: a, b must be positive");
    if (b * g.support_length() > Rational(1))
        throw std::invalid_argument("painless_bounds_closed_form: requires b <= 1/|supp g|");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& [iv, poly] : translate_energy_pieces(g, a)) {
        auto [l, h] = detail::poly_extremes(poly, iv.first, iv.second);
        lo = std::min(lo, l);
        hi = std::max(hi, h);
    }
    const double inv_b = (Rational(1) / b).to_double();
    return {std::sqrt(std::max(0.0, lo * inv_b)), std::sqrt(hi * inv_b)};
}

}  // namespace gabspline
