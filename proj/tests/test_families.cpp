#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ranksurf/families.hpp"
#include "ranksurf/json_io.hpp"

using namespace ranksurf;

namespace {

bool report_has(const FamilyReport& rep, const std::string& name, bool pass) {
    for (const auto& r : rep.results)
        if (r.name == name) return r.pass == pass;
    return false;
}

}  // namespace

TEST_CASE("walsh constructor") {
    CHECK_THROWS(build_walsh(Rat(1), Rat(1), 2));
    CHECK_THROWS(build_walsh(Rat(0), Rat(1), 2));
    CHECK_THROWS(build_walsh(Rat(1), Rat(2), 4));
    FamilyReport rep = check_family(build_walsh(Rat(1), Rat(2), 2));
    CHECK(rep.all_pass);
    FamilyReport rep6 = check_family(build_walsh(Rat(1), Rat(2), 6));
    CHECK(rep6.all_pass);
}

TEST_CASE("cubic family across random parameters") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-10, 10);
    int done = 0;
    while (done < 5) {
        Rat s(d(rng)), w(d(rng)), v(d(rng));
        if (s == w || s * w == 0) continue;
        FamilySpec f = build_D(s, w, v);
        for (auto& [name, sec] : f.sections) CHECK(section_on_surface(f.surface, sec).holds);
        for (auto& [name, bi] : f.bisections) CHECK(bisection_on_surface(f.surface, bi).holds);
        auto iv = invariants(f.surface);
        CHECK((iv.c4 == Poly(Rat(16) * (s * s - s * w + w * w))));
        ++done;
    }
}

TEST_CASE("cubic family at v = 0 is the sextic Walsh surface") {
    FamilyReport rep = check_family(build_D(Rat(4), Rat(-1), Rat(0)));
    CHECK(rep.all_pass);
    CHECK(report_has(rep, "coincides with build_walsh(s, w, 6)", true));
    CHECK(report_has(rep, "c6 = 32(-27t^6 + 2s^3 - 3s^2w - 3sw^2 + 2w^3)", true));
}

TEST_CASE("quadratic-section extension reproduces the fixed example surface") {
    FamilySpec f = build_D_ext(Rat(-4), Rat(-1), Rat(1), Rat(0), make_rat(-5, 12), Rat(2), make_rat(-1, 24));
    CHECK((f.surface.a2 == Poly{Rat(5), Rat(-6)}));
    CHECK((f.surface.a4 ==
           Poly{Rat(4), Rat(-10), make_rat(53, 12), make_rat(-1, 4), make_rat(-37, 192)}));
    CHECK((f.surface.a6 == Poly{Rat(0), Rat(-4), make_rat(19, 6), make_rat(7, 12), make_rat(749, 576),
                                make_rat(15, 16), make_rat(377, 6912)}));
    // S1 = [-1/24 t^2 + 5t - 4, 1/4 t^3]
    CHECK((f.sections[0].second.x == RatFn(Poly{Rat(-4), Rat(5), make_rat(-1, 24)})));
    CHECK((f.sections[0].second.y == RatFn(Poly::monomial(make_rat(1, 4), 3))));
    CHECK(f.conic->A == 5);
    CHECK(f.conic->B == -4);
    CHECK(check_family(f).all_pass);

    // q defaults to its closed form
    FamilySpec g = build_D_ext(Rat(-4), Rat(-1), Rat(1), Rat(0), make_rat(-5, 12), Rat(2));
    CHECK(g.params.at("q") == make_rat(-1, 24));
    CHECK(g.surface.a6 == f.surface.a6);
}

TEST_CASE("quadratic-section extension validates its preconditions") {
    // s != l^2 w
    CHECK_THROWS_AS(build_D_ext(Rat(4), Rat(-1), Rat(1), Rat(1), Rat(1), Rat(2)), std::invalid_argument);
    // side condition: v not in {0, 2b} and quadratic fails
    CHECK_THROWS_AS(build_D_ext(Rat(-4), Rat(-1), Rat(1), Rat(7), make_rat(-5, 12), Rat(2)),
                    std::invalid_argument);
    // inconsistent explicit q
    CHECK_THROWS_AS(build_D_ext(Rat(-4), Rat(-1), Rat(1), Rat(0), make_rat(-5, 12), Rat(2), Rat(17)),
                    std::invalid_argument);
    // v = 2b side condition is accepted
    CHECK_NOTHROW(build_D_ext(Rat(-4), Rat(-1), Rat(1), Rat(2), make_rat(-5, 12), Rat(2)));
}

TEST_CASE("restricted family matches the first table") {
    FamilySpec l = build_L(Rat(1), Rat(-1));
    CHECK(check_family(l).all_pass);
    const char* rows[10] = {
        "y^2 = x^3 - 3x^2 + 2x + 1",        "y^2 = x^3 - 6x^2 + 11x + 58",
        "y^2 = x^3 - 9x^2 + 26x + 705",     "y^2 = x^3 - 12x^2 + 47x + 4036",
        "y^2 = x^3 - 15x^2 + 74x + 15505",  "y^2 = x^3 - 18x^2 + 107x + 46446",
        "y^2 = x^3 - 21x^2 + 146x + 117313","y^2 = x^3 - 24x^2 + 191x + 261640",
        "y^2 = x^3 - 27x^2 + 242x + 530721","y^2 = x^3 - 30x^2 + 299x + 999010"};
    for (long t = 1; t <= 10; ++t) {
        CurveQ c = specialize(l.surface, Rat(t));
        Poly cubic{c.a6, c.a4, c.a2, Rat(1)};
        CHECK(("y^2 = " + cubic.str("x")) == rows[t - 1]);
    }
}

TEST_CASE("two-section conic family and its fixed instance") {
    FamilySpec t52 = build_T52(Rat(3), Rat(-1), Rat(1), Rat(1));
    CHECK(check_family(t52).all_pass);
    FamilySpec h = build_H();
    FamilyReport rep = check_family(h);
    CHECK(rep.all_pass);
    CHECK(h.surface.a2 == t52.surface.a2);
    CHECK(h.surface.a4 == t52.surface.a4);
    CHECK(h.surface.a6 == t52.surface.a6);
    CHECK(h.conic->A == 10);
    CHECK(h.conic->B == -9);

    // a second instance, exercised with all parameters nontrivial
    FamilySpec other = build_T52(Rat(2), Rat(3), make_rat(1, 2), Rat(-1));
    for (auto& [name, sec] : other.sections) CHECK(section_on_surface(other.surface, sec).holds);
    for (auto& [name, bi] : other.bisections) CHECK(bisection_on_surface(other.surface, bi).holds);
}

TEST_CASE("shared-bisection example") {
    FamilyReport rep = check_family(build_jump2());
    CHECK(rep.all_pass);
}

TEST_CASE("base-change example splits correctly") {
    FamilySpec f = build_ex13();
    CHECK(check_family(f).all_pass);
    // after n = t^2, the first bisection's d becomes the square t^2
    Bisection pulled = base_change(f.bisections[0].second, Poly::monomial(Rat(1), 2));
    CHECK(splits_into_sections(pulled));
}

TEST_CASE("u-isomorphism family") {
    FamilyReport rep = check_family(build_remark34(Rat(1), Rat(2)));
    CHECK(rep.all_pass);
    CHECK(report_has(rep, "delta and c4 do not depend on u (14 samples)", true));
    CHECK(report_has(rep, "delta and c4 match the displayed polynomials at b = 0", true));
}

TEST_CASE("v-variable surface") {
    CHECK_THROWS(build_vsurface(Rat(0)));
    CHECK_THROWS(build_vsurface(Rat(1)));
    FamilyReport rep = check_family(build_vsurface(Rat(2)));
    CHECK(rep.all_pass);
}

TEST_CASE("corrupted family is reported with residual") {
    FamilySpec f = build_D(Rat(4), Rat(-1), Rat(1));
    f.sections[0].second.x = f.sections[0].second.x + RatFn::one();
    FamilyReport rep = check_family(f);
    CHECK(!rep.all_pass);
    bool found = false;
    for (const auto& r : rep.results)
        if (r.name == "section S1 on surface" && !r.pass && r.detail.find("residual") == 0) found = true;
    CHECK(found);
}

TEST_CASE("registry round trip") {
    auto names = registry_names();
    CHECK(names.size() == 10);
    FamilySpec f = family_from_registry("D", {{"s", Rat(4)}, {"w", Rat(-1)}, {"v", Rat(1)}});
    CHECK(f.name == "D");
    CHECK_THROWS_AS(family_from_registry("nope", {}), std::invalid_argument);
    CHECK_THROWS_AS(family_from_registry("D", {{"s", Rat(4)}}), std::invalid_argument);

    // surface + sections + bisections survive the JSON encoding
    Json j = surface_to_json(f.surface);
    SurfaceQt back = surface_from_json(j);
    CHECK(back.a2 == f.surface.a2);
    CHECK(back.a4 == f.surface.a4);
    CHECK(back.a6 == f.surface.a6);
    SectionQt s = section_from_json(section_to_json(f.sections[0].second));
    CHECK(s.x == f.sections[0].second.x);
    CHECK(s.y == f.sections[0].second.y);
    Bisection b = bisection_from_json(bisection_to_json(f.bisections[0].second));
    CHECK(b.x == f.bisections[0].second.x);
    CHECK(b.d == f.bisections[0].second.d);
}
