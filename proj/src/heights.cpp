#include "ranksurf/heights.hpp"

#include <algorithm>
#include <cmath>

#include "ranksurf/poly.hpp"

namespace ranksurf {

namespace {

constexpr double kSlack = 9.094947017729282e-13;  // 2^-40
constexpr double kTiny = 1e-300;

double slacked(double e, double v) { return e * (1.0 + kSlack) + std::fabs(v) * kSlack + kTiny; }

std::pair<CurveQ, Int> integral_model(const CurveQ& c) {
    Int u(1);
    for (const Rat* r : {&c.a2, &c.a4, &c.a6}) mpz_lcm(u.get_mpz_t(), u.get_mpz_t(), r->get_den().get_mpz_t());
    CurveQ ic{c.a2 * u * u, c.a4 * u * u * u * u, c.a6 * u * u * u * u * u * u};
    return {ic, u};
}

PointQ to_integral(const PointQ& p, const Int& u) {
    if (p.infinity) return p;
    return PointQ(p.x * u * u, p.y * u * u * u);
}

Rat sum_abs_coeffs(const Poly& p) {
    Rat s(0);
    for (const auto& c : p.coeffs()) s += abs(c);
    return s;
}

Poly reversed(const Poly& p, int deg) {
    std::vector<Rat> v(static_cast<size_t>(deg) + 1, Rat(0));
    for (int k = 0; k <= p.degree(); ++k) v[static_cast<size_t>(deg - k)] = p.coeff(k);
    return Poly(std::move(v));
}

double log_rat(const Rat& r) { return log_abs(r.get_num()) - log_abs(r.get_den()); }

// Clears the Bezout identity a*P + b*Q = 1 to integer coefficients
// A*P + B*Q = R; returns (R, sum|A| + sum|B|).
std::pair<Int, Int> cleared_bezout(const Poly& P, const Poly& Q) {
    auto xg = poly_xgcd(P, Q);
    if (xg.g.degree() != 0) throw std::logic_error("duplication polynomials are not coprime");
    Int L(1);
    for (const Poly* p : {&xg.a, &xg.b})
        for (const auto& c : p->coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
    Rat s = (sum_abs_coeffs(xg.a) + sum_abs_coeffs(xg.b)) * L;
    if (s.get_den() != 1) throw std::logic_error("bezout clearing failed");
    return {L, s.get_num()};
}

bool is_good_prime(long p, const Int& bad) { return bad % p != 0; }

long legendre_f(const Int& v, long p) {
    Int pp(p);
    return mpz_legendre(v.get_mpz_t(), pp.get_mpz_t());
}

}  // namespace

HeightValue hv_add(const HeightValue& a, const HeightValue& b) {
    HeightValue r;
    r.value = a.value + b.value;
    r.error = slacked(a.error + b.error, r.value);
    r.truncated = a.truncated || b.truncated;
    return r;
}

HeightValue hv_sub(const HeightValue& a, const HeightValue& b) {
    HeightValue r;
    r.value = a.value - b.value;
    r.error = slacked(a.error + b.error, r.value);
    r.truncated = a.truncated || b.truncated;
    return r;
}

HeightValue hv_mul(const HeightValue& a, const HeightValue& b) {
    HeightValue r;
    r.value = a.value * b.value;
    r.error = slacked(std::fabs(a.value) * b.error + std::fabs(b.value) * a.error + a.error * b.error, r.value);
    r.truncated = a.truncated || b.truncated;
    return r;
}

HeightValue hv_scale(const HeightValue& a, double k) {
    HeightValue r;
    r.value = a.value * k;
    r.error = slacked(a.error * std::fabs(k), r.value);
    r.truncated = a.truncated;
    return r;
}

HeightValue hv_det(const std::vector<std::vector<HeightValue>>& m) {
    size_t n = m.size();
    if (n == 0) return HeightValue{1.0, 0.0, false};
    if (n == 1) return m[0][0];
    HeightValue acc{0.0, 0.0, false};
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<HeightValue>> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            std::vector<HeightValue> row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        HeightValue term = hv_mul(m[0][j], hv_det(minor));
        acc = (j % 2 == 0) ? hv_add(acc, term) : hv_sub(acc, term);
    }
    return acc;
}

HeightEngine::HeightEngine(CurveQ c) : curve_(std::move(c)) {
    if (curve_.disc() == 0) throw std::invalid_argument("HeightEngine: singular curve");
    auto [ic, u] = integral_model(curve_);
    integral_ = ic;
    u_ = u;
}

const Int& HeightEngine::torsion_bound() {
    if (torsion_bound_ != 0) return torsion_bound_;
    Rat d = integral_.disc();
    Int bad = 2 * abs(d.get_num());
    Int g(0);
    int good = 0;
    for (long p = 3; p < 100000 && !(good >= 5 && (g <= 16 || good >= 15)); p += 2) {
        bool prime = true;
        for (long q = 3; q * q <= p; q += 2)
            if (p % q == 0) {
                prime = false;
                break;
            }
        if (!prime || !is_good_prime(p, bad)) continue;
        // #E(F_p) = p + 1 + sum_x chi(f(x))
        long count = p + 1;
        for (long x = 0; x < p; ++x) {
            Int xv(x);
            Int fv = ((xv + integral_.a2.get_num()) * xv + integral_.a4.get_num()) * xv + integral_.a6.get_num();
            Int fm = fv % p;
            if (fm != 0) count += legendre_f(fm, p);
        }
        Int cnt(count);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cnt.get_mpz_t());
        ++good;
    }
    if (good < 5) throw std::runtime_error("torsion_bound: not enough good primes below limit");
    torsion_bound_ = g;
    return torsion_bound_;
}

bool HeightEngine::is_torsion(const PointQ& p) {
    if (p.infinity) return true;
    if (!on_curve(curve_, p)) throw std::invalid_argument("is_torsion: point not on curve");
    const Int& b = torsion_bound();
    return point_mul(curve_, b, p).infinity;
}

double HeightEngine::duplication_excess_bound() {
    if (dup_bound_ >= 0) return dup_bound_;
    const CurveQ& c = integral_;
    Poly f{c.a6, c.a4, c.a2, Rat(1)};
    Poly fp = f.derivative();
    Poly phi = fp * fp - Poly{c.a2 * 4, Rat(8)} * f;  // f'^2 - 4(a2 + 2x) f
    Poly psi = f * Rat(4);
    if (phi.degree() != 4) throw std::logic_error("unexpected duplication numerator degree");

    auto [r1, sab] = cleared_bezout(phi, psi);
    auto [r2, scd] = cleared_bezout(reversed(phi, 4), reversed(psi, 4));

    double upper = std::max(log_rat(sum_abs_coeffs(phi)), log_rat(sum_abs_coeffs(psi)));
    double deficit = std::max(log_abs(r2 * sab), log_abs(r1 * scd));
    double bound = std::max(upper, deficit);
    dup_bound_ = std::max(bound, 0.0) * (1.0 + 1e-9) + 1e-9;
    return dup_bound_;
}

HeightValue HeightEngine::canonical_height(const PointQ& p, double target_error) {
    if (target_error <= 0) throw std::invalid_argument("canonical_height: target_error must be positive");
    if (p.infinity) return HeightValue{0.0, 0.0, false};
    if (!on_curve(curve_, p)) throw std::invalid_argument("canonical_height: point not on curve");
    auto key = std::make_pair(rat_to_string(p.x), rat_to_string(p.y));
    auto it = height_cache_.find(key);
    if (it != height_cache_.end() && it->second.error <= target_error) return it->second;
    if (is_torsion(p)) {
        HeightValue hv{0.0, 0.0, false};
        height_cache_[key] = hv;
        return hv;
    }
    double C = duplication_excess_bound();
    int n = 0;
    while (C / (3.0 * std::pow(4.0, n)) > target_error && n < 60) ++n;

    const CurveQ& c = integral_;
    Poly f{c.a6, c.a4, c.a2, Rat(1)};
    Poly fp = f.derivative();
    Poly phi = fp * fp - Poly{c.a2 * 4, Rat(8)} * f;
    Poly psi = f * Rat(4);

    Rat x = p.x * u_ * u_;
    int k = 0;
    bool truncated = false;
    for (; k < n; ++k) {
        size_t bits = mpz_sizeinbase(x.get_num().get_mpz_t(), 2) + mpz_sizeinbase(x.get_den().get_mpz_t(), 2);
        if (bits > digit_budget_bits) {
            truncated = true;
            break;
        }
        Rat denom = psi.eval(x);
        if (denom == 0) {
            // Hit 2-torsion while doubling; only possible for torsion input.
            HeightValue hv{0.0, 0.0, false};
            height_cache_[key] = hv;
            return hv;
        }
        x = phi.eval(x) / denom;
    }
    HeightValue hv;
    double scale = std::pow(4.0, k);
    hv.value = log_height(x) / scale;
    hv.error = slacked(C / (3.0 * scale), hv.value);
    hv.truncated = truncated;
    height_cache_[key] = hv;
    return hv;
}

HeightValue HeightEngine::pairing(const PointQ& p, const PointQ& q, double target_error) {
    PointQ sum = point_add(curve_, p, q);
    HeightValue hsum = canonical_height(sum, target_error);
    HeightValue hp = canonical_height(p, target_error);
    HeightValue hq = canonical_height(q, target_error);
    return hv_scale(hv_sub(hsum, hv_add(hp, hq)), 0.5);
}

Int torsion_bound(const CurveQ& c) {
    HeightEngine e(c);
    return e.torsion_bound();
}

bool is_torsion(const CurveQ& c, const PointQ& p) {
    HeightEngine e(c);
    return e.is_torsion(p);
}

HeightValue canonical_height(const CurveQ& c, const PointQ& p, double target_error) {
    HeightEngine e(c);
    return e.canonical_height(p, target_error);
}

HeightValue height_pairing(const CurveQ& c, const PointQ& p, const PointQ& q, double target_error) {
    HeightEngine e(c);
    return e.pairing(p, q, target_error);
}

IndependenceCertificate independence_certificate(HeightEngine& eng, const std::vector<PointQ>& pts,
                                                 double target_error) {
    IndependenceCertificate cert;
    std::vector<PointQ> survivors;
    for (const auto& p : pts) {
        if (p.infinity) continue;
        if (!on_curve(eng.curve(), p)) throw std::invalid_argument("independence_certificate: point not on curve");
        bool dup = false;
        for (const auto& s : survivors)
            if (s == p || (s.x == p.x && s.y == -p.y)) {
                dup = true;
                break;
            }
        if (dup) continue;
        if (eng.is_torsion(p)) continue;
        survivors.push_back(p);
    }
    // Canonical order: by canonical height descending, ties by coordinates;
    // this makes the bound independent of the input ordering.
    std::vector<std::pair<HeightValue, PointQ>> hp;
    hp.reserve(survivors.size());
    for (const auto& p : survivors) hp.emplace_back(eng.canonical_height(p, target_error), p);
    std::sort(hp.begin(), hp.end(), [](const auto& a, const auto& b) {
        if (a.first.value != b.first.value) return a.first.value > b.first.value;
        auto ka = std::make_pair(rat_to_string(a.second.x), rat_to_string(a.second.y));
        auto kb = std::make_pair(rat_to_string(b.second.x), rat_to_string(b.second.y));
        return ka < kb;
    });

    size_t n = hp.size();
    cert.points.reserve(n);
    for (auto& [h, p] : hp) cert.points.push_back(p);
    cert.gram.assign(n, std::vector<HeightValue>(n));
    for (size_t i = 0; i < n; ++i) {
        cert.gram[i][i] = hp[i].first;
        for (size_t j = i + 1; j < n; ++j) {
            HeightValue v = eng.pairing(cert.points[i], cert.points[j], target_error);
            cert.gram[i][j] = v;
            cert.gram[j][i] = v;
        }
    }
    // Leading principal minors.
    int best = 0;
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<HeightValue>> sub(k, std::vector<HeightValue>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub[i][j] = cert.gram[i][j];
        if (hv_det(sub).excludes_zero()) best = static_cast<int>(k);
    }
    // Greedy fallback by largest diagonal entry (the canonical order).
    std::vector<size_t> chosen;
    for (size_t i = 0; i < n; ++i) {
        std::vector<size_t> cand = chosen;
        cand.push_back(i);
        std::vector<std::vector<HeightValue>> sub(cand.size(), std::vector<HeightValue>(cand.size()));
        for (size_t a = 0; a < cand.size(); ++a)
            for (size_t b = 0; b < cand.size(); ++b) sub[a][b] = cert.gram[cand[a]][cand[b]];
        if (hv_det(sub).excludes_zero()) chosen = cand;
    }
    best = std::max(best, static_cast<int>(chosen.size()));
    cert.rank_lower_bound = best;
    cert.verdict = best >= 1 ? CertificateVerdict::Certified : CertificateVerdict::Inconclusive;
    return cert;
}

IndependenceCertificate independence_certificate(const CurveQ& c, const std::vector<PointQ>& pts,
                                                 double target_error) {
    HeightEngine eng(c);
    return independence_certificate(eng, pts, target_error);
}

std::vector<PointQ> point_search(const CurveQ& c, long height_limit) {
    if (height_limit < 1) throw std::invalid_argument("point_search: height_limit must be >= 1");
    auto [ic, u] = integral_model(c);
    const Int A2 = ic.a2.get_num(), A4 = ic.a4.get_num(), A6 = ic.a6.get_num();
    std::vector<PointQ> out;
    for (long e = 1; static_cast<long>(e) * e <= height_limit; ++e) {
        Int E(e);
        Int e2 = E * E, e4 = e2 * e2, e6 = e4 * e2;
        for (long m = -height_limit; m <= height_limit; ++m) {
            Int M(m);
            Int g;
            mpz_gcd(g.get_mpz_t(), M.get_mpz_t(), E.get_mpz_t());
            if (e > 1 && g != 1) continue;
            // y^2 = (m^3 + a2 m^2 e^2 + a4 m e^4 + a6 e^6)/e^6
            Int num = M * M * M + A2 * M * M * e2 + A4 * M * e4 + A6 * e6;
            if (num < 0) continue;
            auto root = sqrt_exact(num);
            if (!root) continue;
            Rat x = make_rat(M, e2) / (u * u);
            Rat y = make_rat(*root, e2 * E) / (u * u * u);
            PointQ p(x, y);
            if (!on_curve(c, p)) continue;
            bool dup = false;
            for (const auto& s : out)
                if (s.x == p.x) {
                    dup = true;
                    break;
                }
            if (!dup) out.push_back(p);
        }
    }
    return out;
}

}  // namespace ranksurf
