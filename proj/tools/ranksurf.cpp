#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ranksurf/constraints.hpp"
#include "ranksurf/json_io.hpp"
#include "ranksurf/rankscan.hpp"

using namespace ranksurf;

namespace {

std::map<std::string, Rat> parse_params(const std::string& s) {
    std::map<std::string, Rat> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad --params entry '" + item + "'");
        out[item.substr(0, eq)] = rat_from_string(item.substr(eq + 1));
    }
    return out;
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("bad --range, expected a..b");
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return Json::parse(in);
}

int cmd_scan(const std::string& family, const std::string& params, const std::string& range, int conic_count,
             double target_error, long search_height, int parallelism, const std::string& format) {
    ScanConfig cfg;
    cfg.family = family;
    cfg.params = parse_params(params);
    if (!range.empty()) {
        auto [lo, hi] = parse_range(range);
        cfg.source = ScanConfig::Source::Range;
        cfg.t_min = lo;
        cfg.t_max = hi;
    } else if (conic_count > 0) {
        cfg.source = ScanConfig::Source::Conic;
        cfg.conic_count = conic_count;
    } else {
        throw std::invalid_argument("need --range or --conic-count");
    }
    cfg.target_error = target_error;
    cfg.search_height = search_height;
    cfg.parallelism = parallelism;
    std::cout << emit_report(scan(cfg), format);
    return 0;
}

int cmd_verify(const std::string& family, const std::string& params) {
    FamilySpec fam = family_from_registry(family, parse_params(params));
    FamilyReport rep = check_family(fam);
    for (const auto& r : rep.results) {
        std::cout << (r.pass ? "[ok]  " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
    }
    return rep.all_pass ? 0 : 1;
}

int cmd_conic_solve(const std::string& A, const std::string& B, long bound) {
    ConicQ c{rat_from_string(A), rat_from_string(B)};
    auto r = small_search(c, bound);
    Json j;
    j["A"] = rat_to_string(c.A);
    j["B"] = rat_to_string(c.B);
    switch (r.status) {
        case ConicSearchStatus::Found:
            j["status"] = "found";
            j["X"] = rat_to_string(r.X);
            j["T"] = rat_to_string(r.T);
            break;
        case ConicSearchStatus::NoRealPoints:
            j["status"] = "no_real_points";
            break;
        case ConicSearchStatus::NotFoundBelowBound:
            j["status"] = "not_found_below_bound";
            break;
    }
    std::cout << j.dump(2) << "\n";
    return r.status == ConicSearchStatus::Found ? 0 : 1;
}

int cmd_conic_pell(long D, long N, long count) {
    Int d(D), n(N);
    Json j;
    j["D"] = D;
    j["N"] = N;
    Json sols = Json::array();
    if (N == 1) {
        PellSolution s = pell_fundamental(d);
        PellSolution unit = s;
        for (long k = 0; k < count; ++k) {
            sols.push_back(Json{{"x", s.x.get_str()}, {"t", s.t.get_str()}});
            s = pell_next(d, s, unit);
        }
    } else {
        auto base = small_search(ConicQ{Rat(d), Rat(n)}, 1000);
        if (base.status != ConicSearchStatus::Found)
            throw std::invalid_argument("no base solution of x^2 - D t^2 = N below the search bound");
        auto all = pell_iterate(d, n, PellSolution{base.X.get_num(), base.T.get_num()},
                                static_cast<size_t>(count));
        for (const auto& s : all) sols.push_back(Json{{"x", s.x.get_str()}, {"t", s.t.get_str()}});
    }
    j["solutions"] = std::move(sols);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_invariants(const std::string& path) {
    SurfaceQt s = surface_from_json(load_json(path));
    WeierstrassInvariants iv = invariants(s);
    Json j;
    j["b2"] = poly_to_json(iv.b2);
    j["b4"] = poly_to_json(iv.b4);
    j["b6"] = poly_to_json(iv.b6);
    j["c4"] = poly_to_json(iv.c4);
    j["c6"] = poly_to_json(iv.c6);
    j["delta"] = poly_to_json(iv.delta);
    std::cout << j.dump(2) << "\n";
    return 0;
}

GenericSurfaceParams surface_params(const SurfaceQt& s) {
    if (s.a2.degree() > 2 || s.a4.degree() > 4 || s.a6.degree() > 6)
        throw std::invalid_argument("surface degrees exceed (2, 4, 6)");
    GenericSurfaceParams g;
    g.e2 = s.a2.coeff(2), g.e1 = s.a2.coeff(1), g.e0 = s.a2.coeff(0);
    g.f4 = s.a4.coeff(4), g.f3 = s.a4.coeff(3), g.f2 = s.a4.coeff(2);
    g.f1 = s.a4.coeff(1), g.f0 = s.a4.coeff(0);
    g.g6 = s.a6.coeff(6), g.g5 = s.a6.coeff(5), g.g4 = s.a6.coeff(4), g.g3 = s.a6.coeff(3);
    g.g2 = s.a6.coeff(2), g.g1 = s.a6.coeff(1), g.g0 = s.a6.coeff(0);
    return g;
}

int cmd_constraints_check(const std::string& surface_path, const std::string& ansatz_path) {
    GenericSurfaceParams g = surface_params(surface_from_json(load_json(surface_path)));
    Json a = load_json(ansatz_path);
    bool all_zero = true;
    auto get = [](const Json& j, const char* k) { return rat_from_string(j.at(k).get<std::string>()); };
    if (a.contains("section")) {
        const Json& s = a.at("section");
        SectionAnsatz sa;
        sa.q = get(s, "q"), sa.r = get(s, "r"), sa.s = get(s, "s");
        sa.y3 = get(s, "y3"), sa.y0 = get(s, "y0");
        sa.partner_w = s.contains("partner_w") ? get(s, "partner_w") : Rat(0);
        auto res = section_residuals(g, sa);
        for (size_t i = 0; i < res.size(); ++i) {
            std::cout << "section residual " << i + 1 << ": " << rat_to_string(res[i]) << "\n";
            if (res[i] != 0) all_zero = false;
        }
    }
    if (a.contains("bisection")) {
        const Json& b = a.at("bisection");
        BisectionAnsatz ba;
        ba.a = get(b, "a"), ba.b = get(b, "b"), ba.c = get(b, "c");
        ba.s = get(b, "s"), ba.w = get(b, "w");
        auto res = bisection_residuals(g, ba);
        for (size_t i = 0; i < res.size(); ++i) {
            std::cout << "bisection residual " << i + 1 << ": " << rat_to_string(res[i]) << "\n";
            if (res[i] != 0) all_zero = false;
        }
    }
    if (!a.contains("section") && !a.contains("bisection"))
        throw std::invalid_argument("ansatz file needs a \"section\" or \"bisection\" object");
    return all_zero ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic elliptic-surface rank scanner"};
    app.require_subcommand(1);

    std::string family, params, range, format = "text";
    int conic_count = 0, parallelism = 1;
    double target_error = 1e-3;
    long search_height = 0;

    auto* sc = app.add_subcommand("scan", "scan specialized fibers and certify rank lower bounds");
    sc->add_option("--family", family)->required();
    sc->add_option("--params", params);
    sc->add_option("--range", range);
    sc->add_option("--conic-count", conic_count);
    sc->add_option("--target-error", target_error);
    sc->add_option("--search-height", search_height);
    sc->add_option("--parallelism", parallelism);
    sc->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));

    std::string vfamily, vparams;
    auto* vf = app.add_subcommand("verify", "symbolically verify a family's sections and claims");
    vf->add_option("--family", vfamily)->required();
    vf->add_option("--params", vparams);

    auto* co = app.add_subcommand("conic", "conic and Pell utilities");
    co->require_subcommand(1);
    std::string cA, cB;
    long cbound = 100;
    auto* cs = co->add_subcommand("solve", "search X^2 = A T^2 + B");
    cs->add_option("--A", cA)->required();
    cs->add_option("--B", cB)->required();
    cs->add_option("--bound", cbound);
    long pD = 0, pN = 1, pcount = 1;
    auto* cp = co->add_subcommand("pell", "solutions of x^2 - D t^2 = N");
    cp->add_option("--D", pD)->required();
    cp->add_option("--N", pN);
    cp->add_option("--count", pcount);

    std::string surface_path;
    auto* iv = app.add_subcommand("invariants", "Weierstrass invariants of a surface file");
    iv->add_option("--surface", surface_path)->required();

    auto* cn = app.add_subcommand("constraints", "generic constraint system");
    cn->require_subcommand(1);
    std::string csurf, cansatz;
    auto* cc = cn->add_subcommand("check", "residual table for a surface/ansatz pair");
    cc->add_option("surface", csurf)->required();
    cc->add_option("ansatz", cansatz)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (sc->parsed())
            return cmd_scan(family, params, range, conic_count, target_error, search_height, parallelism,
                            format);
        if (vf->parsed()) return cmd_verify(vfamily, vparams);
        if (co->parsed()) {
            if (cs->parsed()) return cmd_conic_solve(cA, cB, cbound);
            if (cp->parsed()) return cmd_conic_pell(pD, pN, pcount);
        }
        if (iv->parsed()) return cmd_invariants(surface_path);
        if (cn->parsed() && cc->parsed()) return cmd_constraints_check(csurf, cansatz);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
