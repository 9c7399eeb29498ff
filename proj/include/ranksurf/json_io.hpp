#pragma once

#include <json.hpp>

#include "ranksurf/heights.hpp"
#include "ranksurf/weierstrass.hpp"

namespace ranksurf {

using Json = nlohmann::ordered_json;

// Rat <-> "p/q" (or "p"); Poly <-> array of Rat strings, ascending degree.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);
Json ratfn_to_json(const RatFn& f);     // {"num": Poly, "den": Poly}
RatFn ratfn_from_json(const Json& j);

Json surface_to_json(const SurfaceQt& s);   // {"a2","a4","a6"}
SurfaceQt surface_from_json(const Json& j);
Json section_to_json(const SectionQt& s);   // {"x","y"}
SectionQt section_from_json(const Json& j);
Json bisection_to_json(const Bisection& b); // {"x","c","d"}
Bisection bisection_from_json(const Json& j);

Json point_to_json(const PointQ& p);
PointQ point_from_json(const Json& j);
Json height_to_json(const HeightValue& h);  // {"value","error"}
HeightValue height_from_json(const Json& j);
Json certificate_to_json(const IndependenceCertificate& c);
IndependenceCertificate certificate_from_json(const Json& j);

}  // namespace ranksurf
