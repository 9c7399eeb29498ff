#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ranksurf/rat.hpp"

namespace ranksurf {

// The conic X^2 = A*T^2 + B.
struct ConicQ {
    Rat A, B;

    bool is_on(const Rat& X, const Rat& T) const { return X * X == A * T * T + B; }
};

enum class ConicSearchStatus { Found, NoRealPoints, NotFoundBelowBound };

struct ConicSearchResult {
    ConicSearchStatus status;
    Rat X, T;  // valid only when status == Found
};

// Scans T = p/q with |p| <= bound, 1 <= q <= bound. A real obstruction
// (A <= 0 and B < 0) short-circuits to a definitive negative.
ConicSearchResult small_search(const ConicQ& c, long bound);

// Chord parametrization through a base point: for slope m (of the line
// X = X0 + m(T - T0)), returns the second intersection with the conic, or
// nullopt at the exceptional slopes m^2 = A.
class ConicParametrization {
public:
    ConicParametrization(ConicQ c, Rat X0, Rat T0);
    std::optional<std::pair<Rat, Rat>> operator()(const Rat& slope) const;

private:
    ConicQ c_;
    Rat X0_, T0_;
};

ConicParametrization parametrize(const ConicQ& c, const Rat& X0, const Rat& T0);

struct PellSolution {
    Int x, t;
};

// Least positive solution of x^2 - D t^2 = 1 via the continued-fraction
// expansion of sqrt(D). D must be >= 2 and not a perfect square.
PellSolution pell_fundamental(const Int& D);

// Composition (x, t) -> (x*u + D*t*v, x*v + t*u); preserves x^2 - D t^2.
PellSolution pell_next(const Int& D, const PellSolution& base, const PellSolution& unit);

// base, unit-composed iterates of the norm-N problem, stopping when the
// decimal size of x exceeds digit_budget. Every emitted solution is checked
// to satisfy x^2 - D t^2 = N exactly.
std::vector<PellSolution> pell_iterate(const Int& D, const Int& N, const PellSolution& base, size_t count,
                                       size_t digit_budget = 10000);

}  // namespace ranksurf
