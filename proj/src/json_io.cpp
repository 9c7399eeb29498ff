#include "ranksurf/json_io.hpp"

namespace ranksurf {

Json rat_to_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const Json& j) { return rat_from_string(j.get<std::string>()); }

Json poly_to_json(const Poly& p) {
    Json arr = Json::array();
    for (const Rat& c : p.coeffs()) arr.push_back(rat_to_string(c));
    return arr;
}

Poly poly_from_json(const Json& j) {
    std::vector<Rat> cs;
    for (const auto& e : j) cs.push_back(rat_from_string(e.get<std::string>()));
    return Poly(std::move(cs));
}

Json ratfn_to_json(const RatFn& f) {
    return Json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RatFn ratfn_from_json(const Json& j) {
    return RatFn(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

Json surface_to_json(const SurfaceQt& s) {
    return Json{{"a2", poly_to_json(s.a2)}, {"a4", poly_to_json(s.a4)}, {"a6", poly_to_json(s.a6)}};
}

SurfaceQt surface_from_json(const Json& j) {
    return SurfaceQt{poly_from_json(j.at("a2")), poly_from_json(j.at("a4")), poly_from_json(j.at("a6"))};
}

Json section_to_json(const SectionQt& s) {
    return Json{{"x", ratfn_to_json(s.x)}, {"y", ratfn_to_json(s.y)}};
}

SectionQt section_from_json(const Json& j) {
    return SectionQt{ratfn_from_json(j.at("x")), ratfn_from_json(j.at("y"))};
}

Json bisection_to_json(const Bisection& b) {
    return Json{{"x", ratfn_to_json(b.x)}, {"c", ratfn_to_json(b.c)}, {"d", poly_to_json(b.d)}};
}

Bisection bisection_from_json(const Json& j) {
    return Bisection{ratfn_from_json(j.at("x")), ratfn_from_json(j.at("c")), poly_from_json(j.at("d"))};
}

Json point_to_json(const PointQ& p) {
    if (p.infinity) return Json{{"infinity", true}};
    return Json{{"x", rat_to_string(p.x)}, {"y", rat_to_string(p.y)}};
}

PointQ point_from_json(const Json& j) {
    if (j.contains("infinity") && j.at("infinity").get<bool>()) return PointQ();
    return PointQ(rat_from_string(j.at("x").get<std::string>()),
                  rat_from_string(j.at("y").get<std::string>()));
}

Json height_to_json(const HeightValue& h) { return Json{{"value", h.value}, {"error", h.error}}; }

HeightValue height_from_json(const Json& j) {
    HeightValue h;
    h.value = j.at("value").get<double>();
    h.error = j.at("error").get<double>();
    return h;
}

Json certificate_to_json(const IndependenceCertificate& c) {
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back(point_to_json(p));
    Json gram = Json::array();
    for (const auto& row : c.gram) {
        Json jr = Json::array();
        for (const auto& h : row) jr.push_back(height_to_json(h));
        gram.push_back(std::move(jr));
    }
    return Json{{"points", std::move(pts)},
                {"gram", std::move(gram)},
                {"rank_lower_bound", c.rank_lower_bound},
                {"verdict", c.verdict == CertificateVerdict::Certified ? "certified" : "inconclusive"}};
}

IndependenceCertificate certificate_from_json(const Json& j) {
    IndependenceCertificate c;
    for (const auto& p : j.at("points")) c.points.push_back(point_from_json(p));
    for (const auto& row : j.at("gram")) {
        std::vector<HeightValue> r;
        for (const auto& h : row) r.push_back(height_from_json(h));
        c.gram.push_back(std::move(r));
    }
    c.rank_lower_bound = j.at("rank_lower_bound").get<int>();
    c.verdict = j.at("verdict").get<std::string>() == "certified" ? CertificateVerdict::Certified
                                                                  : CertificateVerdict::Inconclusive;
    return c;
}

}  // namespace ranksurf
