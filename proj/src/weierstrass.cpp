#include "ranksurf/weierstrass.hpp"

namespace ranksurf {

SingularFiberError::SingularFiberError(Rat t)
    : std::runtime_error("singular fiber at t = " + rat_to_string(t)), t0(std::move(t)) {}

namespace {

// Splits n into (square root part, squarefree-ish rest): n = part^2 * rest.
// Exact for perfect squares; otherwise small primes plus a final square test,
// which is all the normalization needs (c^2 d is preserved regardless).
std::pair<Int, Int> square_part(Int n) {
    Int part(1);
    if (n == 0) return {part, n};
    Int sign = n < 0 ? -1 : 1;
    n = abs(n);
    if (auto r = sqrt_exact(n)) return {*r, sign};
    for (long p = 2; p <= 1000; ++p) {
        Int pp = Int(p) * p;
        while (n % pp == 0) {
            n /= pp;
            part *= p;
        }
    }
    if (auto r = sqrt_exact(n)) {
        part *= *r;
        n = 1;
    }
    return {part, sign * n};
}

}  // namespace

Bisection make_bisection(RatFn x, RatFn c, Poly d) {
    if (d.is_zero()) throw std::invalid_argument("bisection with d = 0");
    Poly carried = Poly::one();
    Poly dd = d;
    while (dd.degree() > 0) {
        Poly s = dd.squarefree_part();
        Poly q = dd.divmod(s).first;
        if (q.degree() == 0 && q.coeff(0) == 1) break;
        Poly g = poly_gcd(q.is_zero() ? Poly::one() : q, s);
        if (g.degree() == 0) break;
        carried = carried * g;
        dd = dd.divmod(g * g).first;
    }
    // Migrate rational square content as well.
    auto [prim, scale] = dd.primitive();
    auto [ns, nr] = square_part(scale.get_num());
    auto [ds, dr] = square_part(scale.get_den());
    if (ns != 1 || ds != 1) {
        carried = carried * Poly(make_rat(ns, ds));
        dd = prim * make_rat(nr, dr);
    }
    Bisection b;
    b.x = std::move(x);
    b.c = c * RatFn(carried);
    b.d = dd;
    return b;
}

bool splits_into_sections(const Bisection& b) { return b.d.sqrt_exact().has_value(); }

Rat CurveQ::disc() const {
    Rat b2 = 4 * a2, b4 = 2 * a4, b6 = 4 * a6;
    Rat c4 = b2 * b2 - 24 * b4;
    Rat c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    return (c4 * c4 * c4 - c6 * c6) / 1728;
}

Rat CurveQ::rhs(const Rat& x) const { return ((x + a2) * x + a4) * x + a6; }

WeierstrassInvariants invariants(const SurfaceQt& s) {
    WeierstrassInvariants iv;
    iv.b2 = s.a2 * Rat(4);
    iv.b4 = s.a4 * Rat(2);
    iv.b6 = s.a6 * Rat(4);
    iv.c4 = iv.b2 * iv.b2 - iv.b4 * Rat(24);
    iv.c6 = -(iv.b2 * iv.b2 * iv.b2) + iv.b2 * iv.b4 * Rat(36) - iv.b6 * Rat(216);
    iv.delta = (iv.c4 * iv.c4 * iv.c4 - iv.c6 * iv.c6) * make_rat(1, 1728);
    if (iv.c4 * iv.c4 * iv.c4 - iv.c6 * iv.c6 != iv.delta * Rat(1728))
        throw std::logic_error("invariant identity c4^3 - c6^2 = 1728*delta failed");
    if (iv.delta.is_zero()) throw DegenerateSurfaceError("surface has identically zero discriminant");
    return iv;
}

CurveQ specialize(const SurfaceQt& s, const Rat& t0) {
    CurveQ c{s.a2.eval(t0), s.a4.eval(t0), s.a6.eval(t0)};
    if (c.disc() == 0) throw SingularFiberError(t0);
    return c;
}

bool on_curve(const CurveQ& c, const PointQ& p) {
    if (p.infinity) return true;
    return p.y * p.y == c.rhs(p.x);
}

PointQ point_neg(const CurveQ&, const PointQ& p) {
    if (p.infinity) return p;
    return PointQ(p.x, -p.y);
}

PointQ point_add(const CurveQ& c, const PointQ& p, const PointQ& q) {
    if (!on_curve(c, p) || !on_curve(c, q)) throw std::invalid_argument("point_add: point not on curve");
    if (p.infinity) return q;
    if (q.infinity) return p;
    Rat lambda;
    if (p.x == q.x) {
        if (p.y == -q.y) return PointQ::inf();
        lambda = (3 * p.x * p.x + 2 * c.a2 * p.x + c.a4) / (2 * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda - c.a2 - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    return PointQ(x3, y3);
}

PointQ point_double(const CurveQ& c, const PointQ& p) { return point_add(c, p, p); }

PointQ point_mul(const CurveQ& c, const Int& n, const PointQ& p) {
    Int m = abs(n);
    PointQ base = n < 0 ? point_neg(c, p) : p;
    PointQ acc = PointQ::inf();
    while (m > 0) {
        if (mpz_odd_p(m.get_mpz_t())) acc = point_add(c, acc, base);
        m >>= 1;
        if (m > 0) base = point_double(c, base);
    }
    return acc;
}

VerificationVerdict section_on_surface(const SurfaceQt& s, const SectionQt& sec) {
    RatFn rhs = sec.x * sec.x * sec.x + RatFn(s.a2) * sec.x * sec.x + RatFn(s.a4) * sec.x + RatFn(s.a6);
    RatFn res = sec.y * sec.y - rhs;
    return {res.is_zero(), res};
}

VerificationVerdict bisection_on_surface(const SurfaceQt& s, const Bisection& b) {
    RatFn rhs = b.x * b.x * b.x + RatFn(s.a2) * b.x * b.x + RatFn(s.a4) * b.x + RatFn(s.a6);
    RatFn res = b.c * b.c * RatFn(b.d) - rhs;
    return {res.is_zero(), res};
}

SurfaceQt base_change(const SurfaceQt& s, const Poly& phi) {
    if (phi.degree() < 1) throw std::invalid_argument("base_change: constant substitution");
    return {s.a2.compose(phi), s.a4.compose(phi), s.a6.compose(phi)};
}

namespace {
RatFn compose(const RatFn& f, const Poly& phi) { return RatFn(f.num().compose(phi), f.den().compose(phi)); }
}  // namespace

SectionQt base_change(const SectionQt& sec, const Poly& phi) {
    if (phi.degree() < 1) throw std::invalid_argument("base_change: constant substitution");
    return {compose(sec.x, phi), compose(sec.y, phi)};
}

Bisection base_change(const Bisection& b, const Poly& phi) {
    if (phi.degree() < 1) throw std::invalid_argument("base_change: constant substitution");
    return make_bisection(compose(b.x, phi), compose(b.c, phi), b.d.compose(phi));
}

SectionQt double_section(const SurfaceQt& s, const SectionQt& sec) {
    if (sec.y.is_zero()) throw std::invalid_argument("double_section: 2-torsion section (y = 0)");
    RatFn a2(s.a2), a4(s.a4);
    RatFn lambda = (RatFn(Rat(3)) * sec.x * sec.x + RatFn(Rat(2)) * a2 * sec.x + a4) / (RatFn(Rat(2)) * sec.y);
    RatFn x3 = lambda * lambda - a2 - sec.x - sec.x;
    RatFn y3 = lambda * (sec.x - x3) - sec.y;
    return {x3, y3};
}

bool ExceptionalSet::contains(const Int& t0) const {
    if (all_exceptional) return true;
    Int a = abs(t0);
    if (a <= 1) return true;
    if (modulus == 0) return true;
    Int m = abs(modulus);
    // a is exceptional iff every prime factor of a divides m.
    while (a != 1) {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        if (g == 1) return false;
        while (a % g == 0) a /= g;
    }
    return true;
}

ExceptionalSet nontorsion_sieve(const SurfaceQt& s, const SectionQt& sec) {
    ExceptionalSet e;
    if (sec.y.is_zero()) {
        e.all_exceptional = true;
        return e;
    }
    SectionQt dbl = double_section(s, sec);
    const Poly& den = dbl.x.den();
    if (den.coeff(0) != 0) {
        // Denominator does not vanish at t = 0; the divisibility argument
        // does not apply.
        e.all_exceptional = true;
        return e;
    }
    auto [prim, scale] = dbl.x.num().primitive();
    Int c0 = prim.coeff(0).get_num();
    if (c0 == 0) {
        e.all_exceptional = true;
        return e;
    }
    // Absorb the numerator content and denominator scale so the valuation
    // argument is unconditional, plus the scaling needed to reach an
    // integral model of the surface.
    Int extra = abs(scale.get_num()) * scale.get_den();
    Int u(1);
    for (const Poly* p : {&s.a2, &s.a4, &s.a6})
        for (const auto& cf : p->coeffs()) mpz_lcm(u.get_mpz_t(), u.get_mpz_t(), cf.get_den().get_mpz_t());
    e.modulus = abs(c0) * extra * u * u;
    return e;
}

}  // namespace ranksurf
