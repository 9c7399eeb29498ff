#include "ranksurf/ratfn.hpp"

namespace ranksurf {

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFn: zero denominator");
    reduce();
}

void RatFn::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::one();
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    Rat lead = den_.leading();
    if (lead != 1) {
        Rat inv = Rat(1) / lead;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFn RatFn::operator-() const {
    RatFn r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFn RatFn::operator+(const RatFn& o) const {
    return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator-(const RatFn& o) const {
    return RatFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator*(const RatFn& o) const { return RatFn(num_ * o.num_, den_ * o.den_); }

RatFn RatFn::operator/(const RatFn& o) const {
    if (o.is_zero()) throw std::invalid_argument("RatFn: division by zero");
    return RatFn(num_ * o.den_, den_ * o.num_);
}

RatFn operator*(const Rat& k, const RatFn& f) { return RatFn(Poly(k)) * f; }

std::optional<Rat> RatFn::eval(const Rat& t0) const {
    Rat d = den_.eval(t0);
    if (d == 0) return std::nullopt;
    return num_.eval(t0) / d;
}

std::string RatFn::str(const std::string& var) const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace ranksurf
