#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ranksurf/conics.hpp"
#include "ranksurf/weierstrass.hpp"

namespace ranksurf {

struct ClaimResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FamilySpec {
    std::string name;
    std::map<std::string, Rat> params;
    SurfaceQt surface;
    std::vector<std::pair<std::string, SectionQt>> sections;
    std::vector<std::pair<std::string, Bisection>> bisections;
    std::optional<ConicQ> conic;
    // Named checks beyond the standard on-surface/invariant ones.
    std::vector<std::pair<std::string, std::function<ClaimResult()>>> claims;
};

struct FamilyReport {
    std::string family;
    std::vector<ClaimResult> results;
    bool all_pass = true;
};

// y^2 = x(x - a)(x - b) + t^exponent, exponent 2 or 6.
FamilySpec build_walsh(const Rat& a, const Rat& b, int exponent);

// y^2 = (x - vt)(x - vt - s)(x - vt - w) + t^6 with sections [vt+s, t^3],
// [vt+w, t^3] and bisection [-t^2 + vt, t sqrt((-s-w)t^2 - sw)].
FamilySpec build_D(const Rat& s, const Rat& w, const Rat& v);

// The quadratic-section extension. Requires s = l^2 w and one of the side
// conditions v = 0, v = 2b, or v^2 - 2vb + 2b^2 + (2l^2 w + 2w)/l^2 = 0.
// The surface coefficients are recovered by solving the exact linear system
// imposed by the three claimed curves lying on the surface identically.
// q defaults to its closed form when not supplied.
FamilySpec build_D_ext(const Rat& s, const Rat& w, const Rat& b, const Rat& v, const Rat& u, const Rat& l,
                       const std::optional<Rat>& q = std::nullopt);

// The s = -w restriction of build_D; the bisection degenerates into the
// extra rational section [-t^2 + vt, wt].
FamilySpec build_L(const Rat& v, const Rat& w);

// The two-section family with conic X^2 = (-l^2 w - w) T^2 - l^2 w^2.
FamilySpec build_T52(const Rat& l, const Rat& w, const Rat& b, const Rat& u);

// The fixed instance of build_T52 at (l, w, b, u) = (3, -1, 1, 1), with the
// (b, u) pair recovered from the literal surface coefficients.
FamilySpec build_H();

// The fixed two-bisection surface; both bisections share d = 2t^2 + 1.
FamilySpec build_jump2();

// The base-change pair: F over n with three bisections, plus the claim that
// its pullback under n = t^2 matches the displayed sextic model.
FamilySpec build_ex13();

// The u-isomorphism family (parameters b, u; the section data needs v = 0).
FamilySpec build_remark34(const Rat& b, const Rat& u);

// The s = -w family read with t fixed at t0 and v as the base variable.
FamilySpec build_vsurface(const Rat& t0);

FamilyReport check_family(const FamilySpec& f);

// name + params -> FamilySpec; throws std::invalid_argument for unknown
// families or missing parameters.
FamilySpec family_from_registry(const std::string& name, const std::map<std::string, Rat>& params);
std::vector<std::string> registry_names();

}  // namespace ranksurf
