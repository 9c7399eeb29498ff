#pragma once

#include <optional>

#include "ranksurf/poly.hpp"

namespace ranksurf {

// Rational function over Q(t), always stored reduced with monic denominator.
class RatFn {
public:
    RatFn() : num_(), den_(Poly::one()) {}
    RatFn(Poly num, Poly den);
    RatFn(const Poly& p) : num_(p), den_(Poly::one()) {}  // NOLINT: implicit by design
    RatFn(const Rat& c) : num_(Poly(c)), den_(Poly::one()) {}

    static RatFn zero() { return RatFn(); }
    static RatFn one() { return RatFn(Poly::one()); }
    static RatFn var() { return RatFn(Poly::var()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFn operator-() const;
    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;

    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    // Evaluation; nullopt when t0 is a pole.
    std::optional<Rat> eval(const Rat& t0) const;

    std::string str(const std::string& var = "t") const;

private:
    void reduce();
    Poly num_, den_;
};

RatFn operator*(const Rat& k, const RatFn& f);

}  // namespace ranksurf
