#pragma once

#include <optional>
#include <vector>

#include "ranksurf/ratfn.hpp"

namespace ranksurf {

// Elliptic surface y^2 = x^3 + a2(t)x^2 + a4(t)x + a6(t).
struct SurfaceQt {
    Poly a2, a4, a6;
};

// A point over Q(t) on a surface.
struct SectionQt {
    RatFn x, y;
};

// A point with y = c(t)*sqrt(d(t)); square factors of d are migrated into c
// on construction so that "d is a perfect square" <=> the bisection splits
// into two sections.
struct Bisection {
    RatFn x, c;
    Poly d;
};

// Normalizes (c, d): moves square factors of d into c. Returns the normalized
// bisection; if d becomes constant square the object still represents the data
// but splits_into_sections() is true.
Bisection make_bisection(RatFn x, RatFn c, Poly d);
bool splits_into_sections(const Bisection& b);

// Specialized fiber over Q.
struct CurveQ {
    Rat a2, a4, a6;

    Rat disc() const;
    // f(x) = x^3 + a2 x^2 + a4 x + a6
    Rat rhs(const Rat& x) const;
};

struct PointQ {
    bool infinity = true;
    Rat x, y;

    PointQ() = default;
    PointQ(Rat x0, Rat y0) : infinity(false), x(std::move(x0)), y(std::move(y0)) {}
    static PointQ inf() { return PointQ(); }

    bool operator==(const PointQ& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

struct WeierstrassInvariants {
    Poly b2, b4, b6, c4, c6, delta;
};

struct DegenerateSurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularFiberError : std::runtime_error {
    Rat t0;
    explicit SingularFiberError(Rat t);
};

// b2=4a2, b4=2a4, b6=4a6, c4=b2^2-24b4, c6=-b2^3+36b2b4-216b6; the identity
// c4^3 - c6^2 = 1728*delta is asserted. Throws DegenerateSurfaceError when
// delta is identically zero.
WeierstrassInvariants invariants(const SurfaceQt& s);

// Fiber at t0; throws SingularFiberError when delta(t0) = 0.
CurveQ specialize(const SurfaceQt& s, const Rat& t0);

bool on_curve(const CurveQ& c, const PointQ& p);

PointQ point_neg(const CurveQ& c, const PointQ& p);
PointQ point_add(const CurveQ& c, const PointQ& p, const PointQ& q);
PointQ point_double(const CurveQ& c, const PointQ& p);
PointQ point_mul(const CurveQ& c, const Int& n, const PointQ& p);

struct VerificationVerdict {
    bool holds;
    RatFn residual;
};

// holds iff y^2 - (x^3 + a2 x^2 + a4 x + a6) = 0 in Q(t).
VerificationVerdict section_on_surface(const SurfaceQt& s, const SectionQt& sec);
// holds iff c^2 d - (x^3 + a2 x^2 + a4 x + a6) = 0 in Q(t).
VerificationVerdict bisection_on_surface(const SurfaceQt& s, const Bisection& b);

// Compose every coefficient with phi (deg phi >= 1).
SurfaceQt base_change(const SurfaceQt& s, const Poly& phi);
SectionQt base_change(const SectionQt& sec, const Poly& phi);
Bisection base_change(const Bisection& b, const Poly& phi);

// Symbolic duplication via the tangent line over Q(t).
// Throws std::invalid_argument when y is identically zero (2-torsion section).
SectionQt double_section(const SurfaceQt& s, const SectionQt& sec);

// Integrality sieve on the doubled x-coordinate: after clearing denominators,
// an integer t0 where the specialized section can be torsion must divide the
// constant term of the numerator (when the denominator vanishes at t = 0 to
// order >= 1 and the point pattern matches the quadratic-section shape).
struct ExceptionalSet {
    bool all_exceptional = false;
    // Integral constant term of the doubled-x numerator.
    Int modulus = 0;
    bool contains(const Int& t0) const;
};
ExceptionalSet nontorsion_sieve(const SurfaceQt& s, const SectionQt& sec);

}  // namespace ranksurf
