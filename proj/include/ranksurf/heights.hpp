#pragma once

#include <map>
#include <string>
#include <vector>

#include "ranksurf/weierstrass.hpp"

namespace ranksurf {

// An interval [value - error, value + error] certified to contain the true
// canonical height (or pairing value). Outward slack is applied after every
// floating-point operation.
struct HeightValue {
    double value = 0.0;
    double error = 0.0;
    bool truncated = false;  // digit budget hit before the target error

    bool excludes_zero() const { return value - error > 0.0 || value + error < 0.0; }
    bool contains_zero() const { return !excludes_zero(); }
};

HeightValue hv_add(const HeightValue& a, const HeightValue& b);
HeightValue hv_sub(const HeightValue& a, const HeightValue& b);
HeightValue hv_mul(const HeightValue& a, const HeightValue& b);
HeightValue hv_scale(const HeightValue& a, double k);

// Interval determinant by Laplace expansion (matrices here are tiny).
HeightValue hv_det(const std::vector<std::vector<HeightValue>>& m);

enum class CertificateVerdict { Certified, Inconclusive };

struct IndependenceCertificate {
    std::vector<PointQ> points;  // surviving non-torsion points, canonical order
    std::vector<std::vector<HeightValue>> gram;
    int rank_lower_bound = 0;
    CertificateVerdict verdict = CertificateVerdict::Inconclusive;
};

// Per-curve height machinery with memoized canonical heights. All methods are
// exact-arithmetic driven; only the final height values are floating intervals.
class HeightEngine {
public:
    explicit HeightEngine(CurveQ c);

    const CurveQ& curve() const { return curve_; }
    // gcd of #E(F_p) over good primes; the torsion order divides this.
    const Int& torsion_bound();
    bool is_torsion(const PointQ& p);
    HeightValue canonical_height(const PointQ& p, double target_error);
    HeightValue pairing(const PointQ& p, const PointQ& q, double target_error);

    // Rigorous bound C with |h(2Q) - 4 h(Q)| <= C on the integral model.
    double duplication_excess_bound();

    size_t digit_budget_bits = 6'000'000;

private:
    CurveQ curve_;       // original model
    CurveQ integral_;    // integral model (x, y) -> (u^2 x, u^3 y)
    Int u_;              // scaling factor
    Int torsion_bound_ = 0;
    double dup_bound_ = -1.0;
    std::map<std::pair<std::string, std::string>, HeightValue> height_cache_;
};

Int torsion_bound(const CurveQ& c);
bool is_torsion(const CurveQ& c, const PointQ& p);
HeightValue canonical_height(const CurveQ& c, const PointQ& p, double target_error);
HeightValue height_pairing(const CurveQ& c, const PointQ& p, const PointQ& q, double target_error);

IndependenceCertificate independence_certificate(const CurveQ& c, const std::vector<PointQ>& pts,
                                                 double target_error);
// Same, reusing an engine (and its height cache).
IndependenceCertificate independence_certificate(HeightEngine& eng, const std::vector<PointQ>& pts,
                                                 double target_error);

// Enumerates x = m/e^2 (on the integral model) with |m| <= height_limit and
// e <= sqrt(height_limit); returns affine points, deduplicated up to sign.
std::vector<PointQ> point_search(const CurveQ& c, long height_limit);

}  // namespace ranksurf
