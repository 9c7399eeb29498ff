#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace ranksurf {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p/q" or "p"; base-10 only.
Rat rat_from_string(const std::string& s);

// "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Exact integer square root test.
std::optional<Int> sqrt_exact(const Int& n);

inline bool is_square(const Int& n) { return sqrt_exact(n).has_value(); }

// Exact rational square root (nonnegative branch), if one exists.
std::optional<Rat> rat_sqrt(const Rat& r);

// log max(|num|, den); the naive height of a rational number.
double log_height(const Rat& x);

// log|n| via mpz, safe for huge operands.
double log_abs(const Int& n);

}  // namespace ranksurf
