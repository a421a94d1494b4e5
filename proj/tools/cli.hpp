#pragma once

// Command-line front end. Kept in a header so the test suite can drive the
// exact same code path in-process.
//
// Exit codes: 0 success / certificate found, 1 no certificate,
//             2 parse error, 3 invalid parameters, 4 I/O error.

#include "gabspline/gabspline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace gabspline::cli {

enum ExitCode : int { kOk = 0, kNoCertificate = 1, kParse = 2, kParam = 3, kIo = 4 };

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational parse_rational(const std::string& flag, const std::string& s) {
    try {
        return Rational::parse(s);
    } catch (const std::exception& e) {
        throw ParseFailure(flag + ": " + e.what() + " (expected \"p/q\" or \"p\")");
    }
}

inline GridSize parse_grid(const std::string& s) {
    const auto x = s.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
        std::size_t used1 = 0, used2 = 0;
        const int nx = std::stoi(s.substr(0, x), &used1);
        const int nnu = std::stoi(s.substr(x + 1), &used2);
        if (used1 != x || used2 != s.size() - x - 1) throw std::invalid_argument("trailing characters");
        return {nx, nnu};
    } catch (const std::exception&) {
        throw ParseFailure("--grid: expected NxM, got '" + s + "'");
    }
}

inline std::string fmt_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Inclusive arithmetic progression from..to.
inline std::vector<Rational> progression(const Rational& from, const Rational& to, const Rational& step) {
    if (step.sign() <= 0) throw std::invalid_argument("--step must be positive");
    if (to < from) throw std::invalid_argument("empty range: --to is below --from");
    std::vector<Rational> out;
    for (Rational v = from; v <= to; v += step) out.push_back(v);
    return out;
}

/// Runs fn(i) for i in [0, count) on `workers` threads; fn writes to its own slot.
template <class Fn>
void for_each_index(std::size_t count, int workers, Fn fn) {
    workers = std::max(1, workers);
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(workers)) fn(i);
        });
}

struct Common {
    int n = 2;
    std::string grid = "128x128";
    int refine = 20;
    int workers = 1;
    std::string variant;
};

inline EstimateOptions estimate_options(const Common& c) {
    return {parse_grid(c.grid), c.refine, c.workers};
}

inline Variant variant_or(const Common& c, Variant fallback) {
    if (c.variant.empty()) return fallback;
    try {
        return parse_variant(c.variant);
    } catch (const std::exception& e) {
        throw ParseFailure(std::string("--variant: ") + e.what());
    }
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            os_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw IoFailure("cannot open '" + path + "' for writing");
        os_ = file_.get();
    }
    std::ostream& stream() { return *os_; }
    void finish(const std::string& path) {
        os_->flush();
        if (!*os_) throw IoFailure("write to '" + path + "' failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gabspline: Gabor frame bounds, painless duals and exact non-frame certificates for B-splines"};
    app.require_subcommand(1);

    Common common;
    std::string a_s, b_s, c_s, ratio_s, from_s, to_s, step_s, a_from_s, a_to_s, b_from_s, b_to_s, out_path;
    std::string mode = "hyperbola", kind;
    long long p = 0, q = 0;
    int m = 1, k = 2, samples = 0;
    bool estimate = false;

    auto add_common = [&](CLI::App* sub, bool with_estimator) {
        sub->add_option("--n", common.n, "B-spline order")->capture_default_str();
        if (with_estimator) {
            sub->add_option("--grid", common.grid, "grid NxM over the fundamental domain")->capture_default_str();
            sub->add_option("--refine", common.refine, "halving refinement steps")->capture_default_str();
            sub->add_option("--workers", common.workers, "worker threads")->capture_default_str();
            sub->add_option("--variant", common.variant, "phi|psi");
        }
    };

    auto* bounds = app.add_subcommand("bounds", "estimate frame bounds of G(B_n, a, b)");
    add_common(bounds, true);
    bounds->add_option("--a", a_s, "lattice parameter a (p/q)")->required();
    bounds->add_option("--b", b_s, "modulation parameter b (p/q)")->required();

    auto* certify = app.add_subcommand("certify", "exact non-frame certificate");
    certify->add_option("kind", kind, "thm34 | thm35")->required()->check(CLI::IsMember({"thm34", "thm35"}));
    certify->add_option("--n", common.n, "B-spline order (thm34)")->capture_default_str();
    certify->add_option("--p", p, "numerator of ab (thm34)");
    certify->add_option("--q", q, "denominator of ab (thm34)");
    certify->add_option("--b", b_s, "b (thm34)");
    certify->add_option("--a", a_s, "a (thm35)");

    auto* scan = app.add_subcommand("scan", "write a CSV scan of lower frame bounds or region labels");
    add_common(scan, true);
    scan->add_option("--mode", mode, "hyperbola | horizontal-line | plane | conjecture")
        ->check(CLI::IsMember({"hyperbola", "horizontal-line", "plane", "conjecture"}))
        ->capture_default_str();
    scan->add_option("--ratio", ratio_s, "ab (hyperbola mode)");
    scan->add_option("--b", b_s, "fixed b (horizontal-line mode)");
    scan->add_option("--from", from_s, "start of the free variable (b for hyperbola, a for horizontal-line)");
    scan->add_option("--to", to_s, "end of the free variable (inclusive)");
    scan->add_option("--step", step_s, "step of the free variable(s)");
    scan->add_option("--a-from", a_from_s, "plane mode");
    scan->add_option("--a-to", a_to_s, "plane mode");
    scan->add_option("--b-from", b_from_s, "plane mode");
    scan->add_option("--b-to", b_to_s, "plane mode");
    scan->add_option("--m", m, "conjecture mode")->capture_default_str();
    scan->add_option("--k", k, "conjecture mode")->capture_default_str();
    scan->add_option("--samples", samples, "number of b samples (conjecture mode)");
    scan->add_flag("--estimate", estimate, "plane mode: annotate Unknown points with a numeric sqrtA");
    scan->add_option("--out", out_path, "output CSV path (stdout when omitted)");

    auto* dual = app.add_subcommand("dual", "construct and verify the painless alternate dual");
    dual->add_option("--n", common.n, "B-spline order")->capture_default_str();
    dual->add_option("--a", a_s)->required();
    dual->add_option("--b", b_s)->required();
    dual->add_option("--samples", samples, "number of interior sample points (default 20)");

    auto* pou = app.add_subcommand("pou", "check the partly partition of unity of N_n along c^{-1}Z");
    pou->add_option("--n", common.n, "B-spline order")->capture_default_str();
    pou->add_option("--c", c_s)->required();
    pou->add_option("--samples", samples, "number of region samples (default 16)");

    auto* classify = app.add_subcommand("classify", "label a point of the (a, b) plane");
    add_common(classify, true);
    classify->add_option("--a", a_s)->required();
    classify->add_option("--b", b_s)->required();
    classify->add_flag("--estimate", estimate, "annotate Unknown points with a numeric sqrtA");

    std::vector<const char*> argv{"gabspline"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    }

    auto need = [](const std::string& flag, const std::string& v) {
        if (v.empty()) throw ParseFailure(flag + " is required");
        return parse_rational(flag, v);
    };

    try {
        if (bounds->parsed()) {
            const Rational a = need("--a", a_s), b = need("--b", b_s);
            const auto opt = estimate_options(common);
            const Variant v = variant_or(common, Variant::Phi);
            if (common.n < 1) throw std::invalid_argument("--n must be >= 1");
            if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("a and b must be positive");
            const auto gp = GaborParams::make(a, b);
            if (gp.p >= gp.q) err << "warning: ab = " << (a * b).str() << " >= 1; G(B_n, a, b) cannot be a frame\n";
            const auto rep = frame_bounds_estimate(bspline_centered(common.n), gp, v, opt);
            json j = to_json(rep);
            j["n"] = common.n;
            j["a"] = a.str();
            j["b"] = b.str();
            j["p"] = gp.p;
            j["q"] = gp.q;
            j["workers"] = common.workers;
            out << j.dump(2) << "\n";
            return kOk;
        }

        if (certify->parsed()) {
            CertificateSearch res;
            if (kind == "thm34") {
                const Rational b = need("--b", b_s);
                if (p == 0 || q == 0) throw ParseFailure("--p and --q are required for thm34");
                res = certify_thm34(common.n, p, q, b);
            } else {
                res = certify_thm35(need("--a", a_s));
            }
            out << to_json(res).dump(2) << "\n";
            return res.found() ? kOk : kNoCertificate;
        }

        if (scan->parsed()) {
            const auto opt = estimate_options(common);
            const Variant v = variant_or(common, Variant::Psi);
            if (common.n < 1) throw std::invalid_argument("--n must be >= 1");
            std::vector<std::pair<Rational, Rational>> pts;
            if (mode == "hyperbola") {
                const Rational r = need("--ratio", ratio_s);
                if (r.sign() <= 0) throw std::invalid_argument("--ratio must be positive");
                for (const auto& b : progression(need("--from", from_s), need("--to", to_s), need("--step", step_s))) {
                    if (b.sign() <= 0) throw std::invalid_argument("b must be positive");
                    pts.emplace_back(r / b, b);
                }
            } else if (mode == "horizontal-line") {
                const Rational b = need("--b", b_s);
                for (const auto& a : progression(need("--from", from_s), need("--to", to_s), need("--step", step_s)))
                    pts.emplace_back(a, b);
            } else if (mode == "plane") {
                const Rational st = need("--step", step_s);
                for (const auto& b : progression(need("--b-from", b_from_s), need("--b-to", b_to_s), st))
                    for (const auto& a : progression(need("--a-from", a_from_s), need("--a-to", a_to_s), st))
                        pts.emplace_back(a, b);
            } else {
                const auto curve = conjecture_curve(m, k);
                const int ns = samples > 0 ? samples : 20;
                if (ns < 2) throw std::invalid_argument("--samples must be >= 2");
                for (int i = 0; i < ns; ++i) {
                    const Rational b = curve.b_lo + (curve.b_hi - curve.b_lo) * Rational(i, ns - 1);
                    pts.emplace_back(curve.ratio / b, b);
                }
            }
            for (const auto& [a, b] : pts)
                if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("scan points must have a, b > 0");

            Output sink(out_path, out);
            std::vector<std::string> rows(pts.size());
            const auto g = bspline_centered(common.n);
            if (mode == "plane") {
                for_each_index(pts.size(), common.workers, [&](std::size_t i) {
                    const auto& [a, b] = pts[i];
                    const auto c = classify_point(common.n, a, b, estimate, {opt.grid, opt.refine_steps, 1});
                    rows[i] = fmt_double(a.to_double(), 12) + "," + fmt_double(b.to_double(), 12) + "," + a.str() +
                              "," + b.str() + "," + to_string(c.label) + "," +
                              (c.sqrtA ? fmt_double(*c.sqrtA, 17) : std::string());
                });
                sink.stream() << "a,b,a_exact,b_exact,label,sqrtA\n";
            } else {
                for_each_index(pts.size(), common.workers, [&](std::size_t i) {
                    const auto& [a, b] = pts[i];
                    const auto rep = frame_bounds_estimate(g, GaborParams::make(a, b), v, {opt.grid, opt.refine_steps, 1});
                    rows[i] = fmt_double(a.to_double(), 12) + "," + fmt_double(b.to_double(), 12) + "," + a.str() +
                              "," + b.str() + "," + fmt_double(rep.sqrtA, 17) + "," + fmt_double(rep.sqrtB, 17) + "," +
                              fmt_double(rep.sqrtA_unnormalized, 17);
                });
                sink.stream() << "a,b,a_exact,b_exact,sqrtA,sqrtB,sqrtA_unnormalized\n";
            }
            for (const auto& r : rows) sink.stream() << r << "\n";
            sink.finish(out_path);
            return kOk;
        }

        if (dual->parsed()) {
            const Rational a = need("--a", a_s), b = need("--b", b_s);
            if (common.n < 1) throw std::invalid_argument("--n must be >= 1");
            if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("a and b must be positive");
            if (!sigma_membership(common.n, a, b))
                throw std::invalid_argument("(a, b) = (" + a.str() + ", " + b.str() + ") is not in Sigma_" +
                                            std::to_string(common.n));
            const int ns = samples > 0 ? samples : 20;
            const auto g = bspline_centered(common.n);
            const auto h = painless_dual(g, common.n, a, b);
            std::vector<Rational> xs;
            for (int j = 0; j < ns; ++j) xs.push_back(-a / Rational(2) + a * Rational(j + 1, ns + 1));
            const auto chk = verify_duality(g, h, a, b, xs);
            json j = {{"pass", chk.pass},
                      {"c", h.c.str()},
                      {"lower_bound_c2_over_b", h.lower_bound.str()},
                      {"lower_bound_value", h.lower_bound.to_double()},
                      {"equations_checked", chk.equations_checked},
                      {"samples", ns},
                      {"n", common.n},
                      {"a", a.str()},
                      {"b", b.str()}};
            if (chk.max_violation_m) j["max_violation_m"] = *chk.max_violation_m;
            out << j.dump(2) << "\n";
            return kOk;
        }

        if (pou->parsed()) {
            const Rational c = need("--c", c_s);
            const int n = common.n;
            if (n < 1) throw std::invalid_argument("--n must be >= 1");
            if (c.sign() <= 0) throw std::invalid_argument("c must be positive");
            const Rational fc = signed_frac(c);
            if (abs(fc) > Rational(1, n)) throw std::invalid_argument("|{c}| = " + abs(fc).str() + " exceeds 1/n");
            const int ns = samples > 0 ? samples : 16;
            const Rational nfc = Rational(n) * fc;
            const Rational lo = fc.sign() >= 0 ? nfc : Rational(0);
            const Rational hi = fc.sign() >= 0 ? Rational(1) : Rational(1) + nfc;
            std::vector<Rational> xs;
            for (int j = 0; j < ns; ++j) {
                const Rational t = ns == 1 ? lo : lo + (hi - lo) * Rational(j, ns - 1);
                xs.push_back(t + Rational((j % 3) - 1));  // spread over m = -1, 0, 1
            }
            const auto res = verify_partly_pou(n, c, xs);
            json j = {{"is_constant", res.is_constant},
                      {"n", n},
                      {"c", c.str()},
                      {"signed_frac_c", fc.str()},
                      {"samples", rationals_to_json(xs)},
                      {"values", rationals_to_json(res.values)}};
            j["constant"] = res.constant ? json(res.constant->str()) : json(nullptr);
            out << j.dump(2) << "\n";
            return kOk;
        }

        if (classify->parsed()) {
            const Rational a = need("--a", a_s), b = need("--b", b_s);
            const auto c = classify_point(common.n, a, b, estimate, estimate_options(common));
            json j = {{"label", to_string(c.label)}, {"n", common.n}, {"a", a.str()}, {"b", b.str()}};
            if (c.sqrtA) {
                j["sqrtA"] = *c.sqrtA;
                j["sqrtA_note"] = "numerical estimate; not a proof of the frame property";
            }
            out << j.dump(2) << "\n";
            return kOk;
        }
    } catch (const ParseFailure& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kParam;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kParam;
    }
    return kParse;
}

}  // namespace gabspline::cli
