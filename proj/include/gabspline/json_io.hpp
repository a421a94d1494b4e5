#pragma once

// JSON views of the library's records. Every rational is written as a
// "p/q" (or "p") string; doubles use nlohmann's shortest round-trip form.

#include "gabspline/bspline.hpp"
#include "gabspline/framesets.hpp"
#include "gabspline/zibulski_zeevi.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gabspline {

using json = nlohmann::json;

inline json rationals_to_json(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& r : v) arr.push_back(r.str());
    return arr;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(Rational::parse(e.get<std::string>()));
    return out;
}

/// {"breakpoints": ["p/q", ...], "pieces": [["c0", "c1", ...], ...]}
inline json to_json(const PiecewisePolynomial& f) {
    json pieces = json::array();
    for (const auto& p : f.pieces()) pieces.push_back(rationals_to_json(p.coeffs()));
    return {{"breakpoints", rationals_to_json(f.breakpoints())}, {"pieces", pieces}};
}

inline PiecewisePolynomial piecewise_from_json(const json& j) {
    std::vector<Polynomial> pieces;
    for (const auto& p : j.at("pieces")) pieces.emplace_back(rationals_from_json(p));
    return {rationals_from_json(j.at("breakpoints")), std::move(pieces)};
}

inline std::string grid_string(const GridSize& g) { return std::to_string(g.nx) + "x" + std::to_string(g.nnu); }

/// {"sqrtA", "sqrtB", "grid", "argmin": [x, nu], "variant", ...}
inline json to_json(const FrameBoundReport& r) {
    return {{"sqrtA", r.sqrtA},
            {"sqrtB", r.sqrtB},
            {"sqrtA_unnormalized", r.sqrtA_unnormalized},
            {"sqrtB_unnormalized", r.sqrtB_unnormalized},
            {"grid", grid_string(r.grid)},
            {"refine", r.refine_steps},
            {"refined", r.refined},
            {"argmin", {r.argmin[0], r.argmin[1]}},
            {"argmax", {r.argmax[0], r.argmax[1]}},
            {"variant", to_string(r.variant)},
            {"estimate", true}};
}

/// {"kind", "n", "a", "b", "p", "q", "witness": {"x0", "nu0"}, "data": [...]}
inline json to_json(const Certificate& c) {
    json data = json::array();
    if (c.kind == CertificateKind::ZeroRow) {
        for (const auto& rd : c.residues)
            data.push_back({{"x", rd.x.str()}, {"R", rd.R}, {"coeffs", rationals_to_json(rd.coeffs)}});
    } else {
        for (const auto& row : c.rows) data.push_back(rationals_to_json(row));
    }
    json j = {{"kind", to_string(c.kind)},
              {"n", c.n},
              {"a", c.a.str()},
              {"b", c.b.str()},
              {"p", c.p},
              {"q", c.q},
              {"witness", {{"x0", c.x0.str()}, {"nu0", c.nu0.str()}}},
              {"data", data}};
    if (c.kind == CertificateKind::ZeroRow) {
        j["claim"] = "row 0 of Phi^{N_n}(x0, nu0) vanishes: every residue-class sequence is constant";
    } else {
        j["scale"] = "b^-1/2";
        j["combination"] = rationals_to_json(c.combination);
        j["R2_minus_R5"] = rationals_to_json(c.r2_minus_r5);
        j["R3_minus_R4"] = rationals_to_json(c.r3_minus_r4);
        j["claim"] = "rows of Psi^{B_2}(x0, nu0) (factor b^-1/2 dropped) satisfy the listed vanishing combination";
    }
    return j;
}

inline json to_json(const CertificateSearch& s) {
    if (s.certificate) return to_json(*s.certificate);
    json j = {{"kind", "none"}, {"reason", s.reason}};
    if (s.failing) {
        j["failing"] = {{"x", s.failing->x.str()}, {"R", s.failing->R}, {"coeffs", rationals_to_json(s.failing->coeffs)}};
    }
    return j;
}

}  // namespace gabspline
