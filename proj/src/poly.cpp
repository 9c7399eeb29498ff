#include "ranksurf/poly.hpp"

#include <sstream>

namespace ranksurf {

namespace {
const Rat kZero(0);
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(const Rat& c, int k) {
    if (c == 0) return Poly();
    std::vector<Rat> v(static_cast<size_t>(k) + 1, Rat(0));
    v.back() = c;
    return Poly(std::move(v));
}

const Rat& Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
}

const Rat& Poly::leading() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

Poly Poly::operator-() const {
    std::vector<Rat> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& k) const {
    if (k == 0) return Poly();
    std::vector<Rat> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * k;
    return Poly(std::move(v));
}

Poly operator*(const Rat& k, const Poly& p) { return p * k; }

Poly Poly::pow(unsigned n) const {
    Poly acc = Poly::one();
    Poly base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Rat Poly::eval(const Rat& t0) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t0 + *it;
    return acc;
}

Poly Poly::compose(const Poly& phi) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * phi + Poly(*it);
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading());
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("Poly::divmod: division by zero polynomial");
    Poly rem = *this;
    std::vector<Rat> quo(degree() >= divisor.degree() ? static_cast<size_t>(degree() - divisor.degree()) + 1 : 0,
                         Rat(0));
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        int shift = rem.degree() - divisor.degree();
        Rat factor = rem.leading() / divisor.leading();
        quo[static_cast<size_t>(shift)] = factor;
        rem = rem - divisor * Poly::monomial(factor, shift);
    }
    return {Poly(std::move(quo)), rem};
}

std::pair<Poly, Rat> Poly::primitive() const {
    if (is_zero()) return {Poly(), Rat(0)};
    Int den_lcm(1);
    for (const auto& c : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    Int num_gcd(0);
    for (const auto& c : c_) {
        Int scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat scale = make_rat(num_gcd, den_lcm);
    if (leading() < 0) scale = -scale;
    return {*this * (Rat(1) / scale), scale};
}

Poly poly_gcd(const Poly& p, const Poly& q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("poly_gcd: both inputs zero");
    Poly a = p, b = q;
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    return a.monic();
}

PolyXgcd poly_xgcd(const Poly& p, const Poly& q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("poly_xgcd: both inputs zero");
    Poly r0 = p, r1 = q;
    Poly s0 = Poly::one(), s1 = Poly::zero();
    Poly t0 = Poly::zero(), t1 = Poly::one();
    while (!r1.is_zero()) {
        auto [quo, rem] = r0.divmod(r1);
        r0 = r1;
        r1 = rem;
        Poly s2 = s0 - quo * s1;
        s0 = s1;
        s1 = s2;
        Poly t2 = t0 - quo * t1;
        t0 = t1;
        t1 = t2;
    }
    Rat lead = r0.leading();
    Rat inv = Rat(1) / lead;
    return {r0 * inv, s0 * inv, t0 * inv};
}

Poly Poly::squarefree_part() const {
    if (is_zero()) throw std::invalid_argument("squarefree_part of zero polynomial");
    if (degree() == 0) return Poly::one();
    Poly g = poly_gcd(*this, derivative());
    return divmod(g).first.monic();
}

bool Poly::is_squarefree() const {
    if (is_zero()) return false;
    if (degree() == 0) return true;
    return poly_gcd(*this, derivative()).degree() == 0;
}

std::optional<Poly> Poly::sqrt_exact() const {
    if (is_zero()) return Poly();
    if (degree() % 2 != 0) return std::nullopt;
    auto lead_root = rat_sqrt(leading());
    if (!lead_root) return std::nullopt;
    // Newton-style coefficient recovery from the top down.
    int half = degree() / 2;
    std::vector<Rat> r(static_cast<size_t>(half) + 1, Rat(0));
    r[static_cast<size_t>(half)] = *lead_root;
    for (int k = half - 1; k >= 0; --k) {
        // coefficient of t^(half+k) in r^2 must match
        Rat acc(0);
        for (int i = k + 1; i < half; ++i) {
            int j = half + k - i;
            if (j > k && j <= half) acc += r[static_cast<size_t>(i)] * r[static_cast<size_t>(j)];
        }
        Rat target = coeff(half + k) - acc;
        r[static_cast<size_t>(k)] = target / (Rat(2) * r[static_cast<size_t>(half)]);
    }
    Poly root{std::vector<Rat>(r)};
    if (root * root == *this) return root;
    return std::nullopt;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rat& c = coeff(k);
        if (c == 0) continue;
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (a == 1);
        if (k == 0 || !unit) os << rat_to_string(a);
        if (k > 0) {
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace ranksurf
