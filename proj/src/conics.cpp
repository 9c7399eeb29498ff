#include "ranksurf/conics.hpp"

namespace ranksurf {

ConicSearchResult small_search(const ConicQ& c, long bound) {
    if (bound < 1) throw std::invalid_argument("small_search: bound must be >= 1");
    if (c.A <= 0 && c.B < 0) return {ConicSearchStatus::NoRealPoints, 0, 0};
    for (long q = 1; q <= bound; ++q) {
        for (long p = 0; p <= bound; ++p) {
            for (int sign : {1, -1}) {
                if (p == 0 && sign < 0) continue;
                Rat T = make_rat(sign * p, q);
                Rat rhs = c.A * T * T + c.B;
                if (rhs < 0) continue;
                if (auto X = rat_sqrt(rhs)) return {ConicSearchStatus::Found, *X, T};
            }
        }
    }
    return {ConicSearchStatus::NotFoundBelowBound, 0, 0};
}

ConicParametrization::ConicParametrization(ConicQ c, Rat X0, Rat T0)
    : c_(std::move(c)), X0_(std::move(X0)), T0_(std::move(T0)) {
    if (!c_.is_on(X0_, T0_)) throw std::invalid_argument("parametrize: base point not on conic");
}

std::optional<std::pair<Rat, Rat>> ConicParametrization::operator()(const Rat& m) const {
    Rat denom = c_.A - m * m;
    if (denom == 0) return std::nullopt;
    Rat T = (2 * m * X0_ - m * m * T0_ - c_.A * T0_) / denom;
    Rat X = X0_ + m * (T - T0_);
    if (!c_.is_on(X, T)) throw std::logic_error("parametrize: emitted point off conic");
    return std::make_pair(X, T);
}

ConicParametrization parametrize(const ConicQ& c, const Rat& X0, const Rat& T0) {
    return ConicParametrization(c, X0, T0);
}

PellSolution pell_fundamental(const Int& D) {
    if (D < 2 || is_square(D)) throw std::invalid_argument("pell_fundamental: D must be a nonsquare >= 2");
    Int a0;
    mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());
    // Continued fraction of sqrt(D): convergents p/q until p^2 - D q^2 = 1.
    Int m = 0, d = 1, a = a0;
    Int p_prev = 1, p = a0;
    Int q_prev = 0, q = 1;
    while (p * p - D * q * q != 1) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
    return {p, q};
}

PellSolution pell_next(const Int& D, const PellSolution& base, const PellSolution& unit) {
    if (unit.x * unit.x - D * unit.t * unit.t != 1)
        throw std::invalid_argument("pell_next: unit does not have norm 1");
    Int n = base.x * base.x - D * base.t * base.t;
    PellSolution out{base.x * unit.x + D * base.t * unit.t, base.x * unit.t + base.t * unit.x};
    if (out.x * out.x - D * out.t * out.t != n) throw std::logic_error("pell_next: norm not preserved");
    return out;
}

std::vector<PellSolution> pell_iterate(const Int& D, const Int& N, const PellSolution& base, size_t count,
                                       size_t digit_budget) {
    if (base.x * base.x - D * base.t * base.t != N)
        throw std::invalid_argument("pell_iterate: base does not have norm N");
    PellSolution unit = pell_fundamental(D);
    std::vector<PellSolution> out;
    PellSolution cur = base;
    while (out.size() < count) {
        if (mpz_sizeinbase(cur.x.get_mpz_t(), 10) > digit_budget) break;
        out.push_back(cur);
        cur = pell_next(D, cur, unit);
    }
    return out;
}

}  // namespace ranksurf
