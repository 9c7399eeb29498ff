#include "ranksurf/rat.hpp"

#include <cmath>

namespace ranksurf {

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Int> sqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return root;
}

std::optional<Rat> rat_sqrt(const Rat& r) {
    auto n = sqrt_exact(r.get_num());
    if (!n) return std::nullopt;
    auto d = sqrt_exact(r.get_den());
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

double log_abs(const Int& n) {
    if (n == 0) return 0.0;
    signed long exp;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_height(const Rat& x) {
    Int num = abs(x.get_num());
    const Int& den = x.get_den();
    return log_abs(num >= den ? num : den);
}

}  // namespace ranksurf
