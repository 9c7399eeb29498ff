#include "ranksurf/constraints.hpp"

namespace ranksurf {

std::array<Rat, 6> section_residuals(const GenericSurfaceParams& g, const SectionAnsatz& a) {
    const Rat &q = a.q, &r = a.r, &s = a.s, &y3 = a.y3, &y0 = a.y0, &w = a.partner_w;
    const Rat &e2 = g.e2, &e1 = g.e1;
    std::array<Rat, 6> out;
    out[0] = g.g6 + g.f4 * q + e2 * q * q + q * q * q - y3 * y3;
    out[1] = g.g5 + g.f3 * q + g.f4 * r + e1 * q * q + 2 * e2 * q * r + 3 * q * q * r;
    out[2] = g.g4 + g.f2 * q + g.f3 * r + g.f4 * s + 2 * e1 * q * r + 2 * e2 * q * s + e2 * r * r +
             2 * q * q * s - q * q * w + 3 * q * r * r;
    out[3] = g.g3 + g.f1 * q + g.f2 * r + g.f3 * s + 2 * e1 * q * s + e1 * r * r + 2 * e2 * s * r +
             4 * q * s * r - 2 * q * w * r + r * r * r - 2 * y0 * y3;
    out[4] = g.g2 + g.f1 * r + g.f2 * s + 2 * e1 * s * r + e2 * s * s + q * s * s - q * s * w +
             2 * s * r * r - w * r * r;
    out[5] = g.g1 + g.f1 * s + e1 * s * s + s * s * r - s * w * r;
    return out;
}

std::array<Rat, 7> bisection_residuals(const GenericSurfaceParams& g, const BisectionAnsatz& an) {
    const Rat &a = an.a, &b = an.b, &c = an.c, &s = an.s, &w = an.w;
    const Rat &e2 = g.e2, &e1 = g.e1;
    std::array<Rat, 7> out;
    out[0] = g.g6 + g.f4 * a + e2 * a * a + a * a * a;
    // The t^5 piece: the graded expansion gives e1*a^2 (a doubled factor here
    // would leave a residual of -3v on the quadratic-section families).
    out[1] = g.g5 + g.f3 * a + g.f4 * b + e1 * a * a + 2 * e2 * a * b + 3 * a * a * b;
    out[2] = g.g4 + g.f2 * a + g.f3 * b + g.f4 * c + 2 * e1 * a * b + 2 * e2 * a * c + e2 * b * b -
             a * a * s - a * a * w + 3 * a * a * c + 3 * a * b * b + s + w;
    out[3] = g.g3 + g.f1 * a + g.f2 * b + g.f3 * c + 2 * e1 * a * c + e1 * b * b + 2 * e2 * b * c -
             2 * a * b * s - 2 * a * b * w + 6 * a * b * c + b * b * b;
    out[4] = g.g2 + g.f1 * b + g.f2 * c + 2 * e1 * b * c + e2 * c * c + a * s * w - 2 * a * s * c -
             2 * a * w * c + 3 * a * c * c - b * b * s - b * b * w + 3 * b * b * c + s * w;
    out[5] = g.g1 + g.f1 * c + e1 * c * c + b * s * w - 2 * b * s * c - 2 * b * w * c + 3 * b * c * c;
    out[6] = c * (c - s) * (c - w);
    return out;
}

SolvedParameters solve_parameters(const Rat& s, const Rat& w, const Rat& b, const Rat& v, const Rat& u,
                                  const Rat& l, const Rat& q) {
    SolvedParameters out;
    Rat den_a = 2 * s * w * (b - v);
    if (den_a == 0) throw ParameterFormulaError("a", "denominator 2sw(b - v) of the a-formula is zero");
    out.a = -(b * b * b * s - 3 * b * b * s * v - 2 * b * u * s * w + b * s * w + 3 * b * s * v * v +
              b * w * w + 2 * u * s * w * v - s * w * v - s * v * v * v - w * w * v) /
            den_a;

    Rat den_y3 = 2 * w * w * l;
    if (den_y3 == 0) throw ParameterFormulaError("y3", "denominator 2w^2 l of the y3-formula is zero");
    out.y3 = (s * w + s * b * b + w * w) / den_y3;

    Rat den_g6 = 4 * s * s * w * w * w;
    if (den_g6 == 0) throw ParameterFormulaError("g6", "denominator 4s^2 w^3 of the g6-formula is zero");
    const Rat &y3 = out.y3;
    out.g6 = (b * b * b * b * u * s * s * s - b * b * b * b * u * s * s * w -
              2 * b * b * u * u * s * s * s * w + 4 * b * b * u * u * s * s * w * w +
              2 * b * b * u * s * s * w * w - 2 * b * b * u * s * w * w * w - 4 * u * u * u * s * s * w * w * w -
              2 * u * u * s * s * s * w * w - 2 * u * u * s * s * w * w * w - u * s * s * s * w * w +
              u * s * s * w * w * w + 4 * s * s * w * w * w * y3 * y3 + 4 * u * u * s * w * w * w * w +
              u * s * w * w * w * w - u * w * w * w * w * w) /
             den_g6;

    if (w == 0) throw ParameterFormulaError("f4", "denominator w^2 of the f4-formula is zero");
    const Rat &a = out.a;
    out.f4 = -(-a * q * w * w - a * u * w * w - a * s * w - a * w * w - b * b * s + 2 * b * s * v -
               q * u * w * w + u * s * w - u * w * w - s * w - s * v * v - w * w) /
             (w * w);

    Rat den_e2 = s * (s - w);
    if (den_e2 == 0) throw ParameterFormulaError("e2", "denominator s(s - w) of the e2-formula is zero");
    out.e2 = -(a * s * s - a * s * w + q * s * s - q * s * w + u * s * s - u * s * w + s * s - s * w) / den_e2;
    return out;
}

}  // namespace ranksurf
