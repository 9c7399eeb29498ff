#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ranksurf/rat.hpp"

namespace ranksurf {

// Dense univariate polynomial over Q, coefficients in ascending degree.
// The zero polynomial is the empty coefficient vector; degree() is then -1.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rat> ascending) : c_(ascending) { trim(); }
    explicit Poly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }
    explicit Poly(const Rat& constant) : c_{constant} { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly{Rat(1)}; }
    // c * t^k
    static Poly monomial(const Rat& c, int k);
    // the variable t
    static Poly var() { return monomial(Rat(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    // coefficient of t^k (zero beyond the stored range)
    const Rat& coeff(int k) const;
    const Rat& leading() const;
    const std::vector<Rat>& coeffs() const { return c_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& k) const;
    Poly pow(unsigned n) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    Rat eval(const Rat& t0) const;
    Poly compose(const Poly& phi) const;
    Poly derivative() const;
    Poly monic() const;

    // Euclidean division: returns (quotient, remainder), deg rem < deg divisor.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;

    // Scale to integer coefficients with content 1; returns (primitive, scale)
    // such that *this == primitive * scale with primitive having Int coeffs.
    std::pair<Poly, Rat> primitive() const;

    // Largest squarefree divisor, monic.
    Poly squarefree_part() const;
    bool is_squarefree() const;

    // Exact square root if the polynomial is a perfect square in Q[t].
    std::optional<Poly> sqrt_exact() const;

    // Human-readable form in the given variable, descending degree,
    // e.g. "t^3 - 1/2t + 4".
    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rat> c_;
};

Poly operator*(const Rat& k, const Poly& p);

// Monic gcd; rejects the (0, 0) pair.
Poly poly_gcd(const Poly& p, const Poly& q);

// Extended gcd: returns (g, a, b) with a*p + b*q = g, g monic.
struct PolyXgcd {
    Poly g, a, b;
};
PolyXgcd poly_xgcd(const Poly& p, const Poly& q);

}  // namespace ranksurf
