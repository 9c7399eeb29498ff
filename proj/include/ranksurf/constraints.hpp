#pragma once

#include <array>
#include <string>

#include "ranksurf/rat.hpp"

namespace ranksurf {

// Coefficients of the generic surface
// y^2 = x^3 + (e2 t^2 + e1 t + e0) x^2 + (f4 t^4 + ... + f0) x + (g6 t^6 + ... + g0).
struct GenericSurfaceParams {
    Rat e2, e1, e0;
    Rat f4, f3, f2, f1, f0;
    Rat g6, g5, g4, g3, g2, g1, g0;
};

// Section ansatz x = q t^2 + r t + s, y = y3 t^3 + y0. The residual display
// couples the section to its partner section's constant term, carried here
// as partner_w.
struct SectionAnsatz {
    Rat q, r, s;
    Rat y3, y0;
    Rat partner_w;
};

// Bisection ansatz x = a t^2 + b t + c with y = t*sqrt((-s-w)t^2 - sw);
// (s, w) are the conic data.
struct BisectionAnsatz {
    Rat a, b, c;
    Rat s, w;
};

// The six graded residuals (t^6 down to t^1) of the section conditions.
std::array<Rat, 6> section_residuals(const GenericSurfaceParams& g, const SectionAnsatz& a);

// The seven graded residuals of the bisection conditions; the last one is
// c(c - s)(c - w).
std::array<Rat, 7> bisection_residuals(const GenericSurfaceParams& g, const BisectionAnsatz& a);

struct SolvedParameters {
    Rat g6, f4, e2, a, y3;
};

struct ParameterFormulaError : std::invalid_argument {
    std::string formula;
    ParameterFormulaError(std::string f, const std::string& msg)
        : std::invalid_argument(msg), formula(std::move(f)) {}
};

// Closed forms for (g6, f4, e2, a, y3) in terms of (s, w, b, v, u, l, q).
// The x-translation parameter a is solved first since it feeds f4 and e2.
// Throws ParameterFormulaError naming the formula whose denominator vanishes.
SolvedParameters solve_parameters(const Rat& s, const Rat& w, const Rat& b, const Rat& v, const Rat& u,
                                  const Rat& l, const Rat& q);

}  // namespace ranksurf
