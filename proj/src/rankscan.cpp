#include "ranksurf/rankscan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "ranksurf/conics.hpp"
#include "ranksurf/json_io.hpp"

namespace ranksurf {

namespace {

constexpr size_t kMaxCertificatePoints = 8;

std::string point_key(const PointQ& p) {
    Rat ay = p.y < 0 ? Rat(-p.y) : p.y;
    return rat_to_string(p.x) + "|" + rat_to_string(ay);
}

struct FiberTask {
    Rat t0;
    std::string note;
};

struct FiberOutcome {
    bool singular = false;
    FiberRow row;
};

FiberOutcome process_fiber(const FamilySpec& fam, const FiberTask& task, const ScanConfig& cfg) {
    FiberOutcome out;
    out.row.t0 = task.t0;
    out.row.note = task.note;
    CurveQ curve;
    try {
        curve = specialize(fam.surface, task.t0);
    } catch (const SingularFiberError&) {
        out.singular = true;
        return out;
    }
    out.row.curve = curve;

    std::vector<PointRecord> recs;
    std::vector<std::string> seen;
    auto add = [&](const std::string& label, const PointQ& p) {
        if (p.infinity || !on_curve(curve, p)) return;
        std::string key = point_key(p);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
        seen.push_back(key);
        recs.push_back({label, p, false});
    };
    for (const auto& [name, sec] : fam.sections) {
        auto xv = sec.x.eval(task.t0);
        auto yv = sec.y.eval(task.t0);
        if (!xv || !yv) {
            out.row.note += (out.row.note.empty() ? "" : "; ") + name + " has a pole";
            continue;
        }
        add(name, PointQ(*xv, *yv));
    }
    for (const auto& [name, bi] : fam.bisections) {
        auto xv = bi.x.eval(task.t0);
        auto cv = bi.c.eval(task.t0);
        if (!xv || !cv) continue;
        Rat dv = bi.d.eval(task.t0);
        auto root = rat_sqrt(dv);
        if (root) {
            add(name, PointQ(*xv, *cv * *root));
        } else if (*cv == 0) {
            add(name, PointQ(*xv, Rat(0)));
        } else {
            out.row.note += (out.row.note.empty() ? "" : "; ") + name + " irrational here";
        }
    }

    HeightEngine eng(curve);
    if (cfg.search_height > 0) {
        std::vector<PointQ> found = point_search(curve, cfg.search_height);
        std::sort(found.begin(), found.end(), [](const PointQ& a, const PointQ& b) {
            if (a.x != b.x) return a.x < b.x;
            return a.y < b.y;
        });
        for (const PointQ& p : found) {
            if (recs.size() >= kMaxCertificatePoints) break;
            std::string key = point_key(p);
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            recs.push_back({"search", p, false});
            ++out.row.searched_points;
        }
    }
    for (auto& r : recs) r.torsion = eng.is_torsion(r.point);

    std::vector<PointQ> pts;
    for (const auto& r : recs) pts.push_back(r.point);
    out.row.points = std::move(recs);
    out.row.certificate = independence_certificate(eng, pts, cfg.target_error);
    out.row.rank_lower_bound = out.row.certificate.rank_lower_bound;
    out.row.paper_rank = paper_rank_reference(cfg.family, cfg.params, task.t0);
    return out;
}

std::string params_string(const std::map<std::string, Rat>& params) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) os << ", ";
        os << k << "=" << rat_to_string(v);
        first = false;
    }
    return os.str();
}

std::string labels_string(const FiberRow& row) {
    std::ostringstream os;
    bool first = true;
    for (const auto& r : row.points) {
        if (!first) os << " ";
        os << r.label << (r.torsion ? "~" : "");
        first = false;
    }
    return os.str();
}

}  // namespace

std::string equation_string(const CurveQ& c) {
    Poly cubic{c.a6, c.a4, c.a2, Rat(1)};
    return "y^2 = " + cubic.str("x");
}

std::optional<int> paper_rank_reference(const std::string& family, const std::map<std::string, Rat>& params,
                                        const Rat& t0) {
    if (!is_integer(t0)) return std::nullopt;
    long t = t0.get_num().get_si();
    if (family == "L") {
        auto v = params.find("v");
        auto w = params.find("w");
        if (v == params.end() || w == params.end() || v->second != 1 || w->second * w->second != 1)
            return std::nullopt;
        static const int ranks[10] = {1, 3, 4, 3, 4, 3, 4, 5, 5, 4};
        if (t >= 1 && t <= 10) return ranks[t - 1];
        return std::nullopt;
    }
    if (family == "H") {
        static const int ranks[9] = {4, 3, 2, 4, 0, 3, 3, 3, 3};
        if (t >= -4 && t <= 4) return ranks[t + 4];
        return std::nullopt;
    }
    return std::nullopt;
}

ScanResult scan(const ScanConfig& cfg) {
    if (cfg.target_error <= 0) throw std::invalid_argument("scan: target_error must be positive");
    FamilySpec fam = family_from_registry(cfg.family, cfg.params);

    std::vector<FiberTask> tasks;
    if (cfg.source == ScanConfig::Source::Range) {
        if (cfg.t_max < cfg.t_min) throw std::invalid_argument("scan: empty range");
        for (long t = cfg.t_min; t <= cfg.t_max; ++t) tasks.push_back({Rat(t), ""});
    } else {
        if (cfg.conic_count <= 0) throw std::invalid_argument("scan: conic count must be positive");
        if (!fam.conic) throw std::invalid_argument("scan: family has no conic");
        if (!is_integer(fam.conic->A) || !is_integer(fam.conic->B))
            throw std::invalid_argument("scan: conic coefficients must be integral for Pell iteration");
        Int A = fam.conic->A.get_num(), B = fam.conic->B.get_num();
        if (A < 2 || is_square(A))
            throw std::invalid_argument("scan: conic needs a nonsquare A >= 2 for Pell iteration");
        auto base = small_search(*fam.conic, cfg.conic_search_bound);
        if (base.status != ConicSearchStatus::Found)
            throw std::invalid_argument("scan: no conic base point found below the search bound");
        if (!is_integer(base.X) || !is_integer(base.T))
            throw std::invalid_argument("scan: conic base point is not integral");
        auto sols = pell_iterate(A, B, PellSolution{base.X.get_num(), base.T.get_num()},
                                 static_cast<size_t>(cfg.conic_count));
        for (const auto& s : sols)
            tasks.push_back({Rat(s.t), "conic point (" + s.x.get_str() + ", " + s.t.get_str() + ")"});
    }

    int threads = cfg.parallelism;
    if (const char* env = std::getenv("RANKSURF_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) threads = v;
    }
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<size_t>(threads, tasks.size() ? tasks.size() : 1));

    std::vector<FiberOutcome> outcomes(tasks.size());
    if (threads <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) outcomes[i] = process_fiber(fam, tasks[i], cfg);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                outcomes[i] = process_fiber(fam, tasks[i], cfg);
            }
        };
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ScanResult res;
    res.family = cfg.family;
    res.params = cfg.params;
    for (size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].singular)
            res.skipped_singular.push_back(tasks[i].t0);
        else
            res.rows.push_back(std::move(outcomes[i].row));
    }
    return res;
}

std::string emit_report(const ScanResult& res, const std::string& format) {
    if (format == "text") {
        std::ostringstream os;
        os << "family " << res.family;
        if (!res.params.empty()) os << " (" << params_string(res.params) << ")";
        os << "\n";
        os << "t\tequation\tpoints\tbound\tpaper\n";
        for (const auto& row : res.rows) {
            os << rat_to_string(row.t0) << "\t" << equation_string(row.curve) << "\t" << labels_string(row)
               << "\t" << row.rank_lower_bound << "\t"
               << (row.paper_rank ? std::to_string(*row.paper_rank) : "-");
            if (!row.note.empty()) os << "\t[" << row.note << "]";
            os << "\n";
        }
        for (const auto& t : res.skipped_singular)
            os << "skipped singular fiber at t = " << rat_to_string(t) << "\n";
        return os.str();
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "t,equation,points,searched,rank_lower_bound,paper_rank\n";
        for (const auto& row : res.rows) {
            std::string labels = labels_string(row);
            std::replace(labels.begin(), labels.end(), ' ', ';');
            os << rat_to_string(row.t0) << "," << equation_string(row.curve) << "," << labels << ","
               << row.searched_points << "," << row.rank_lower_bound << ","
               << (row.paper_rank ? std::to_string(*row.paper_rank) : "") << "\n";
        }
        return os.str();
    }
    if (format == "json") {
        Json doc;
        doc["family"] = res.family;
        Json jp = Json::object();
        for (const auto& [k, v] : res.params) jp[k] = rat_to_string(v);
        doc["params"] = std::move(jp);
        Json rows = Json::array();
        for (const auto& row : res.rows) {
            Json jr;
            jr["t"] = rat_to_string(row.t0);
            jr["equation"] = equation_string(row.curve);
            Json pts = Json::array();
            for (const auto& r : row.points) {
                Json p = point_to_json(r.point);
                p["label"] = r.label;
                p["torsion"] = r.torsion;
                pts.push_back(std::move(p));
            }
            jr["points"] = std::move(pts);
            jr["searched_points"] = row.searched_points;
            jr["certificate"] = certificate_to_json(row.certificate);
            jr["rank_lower_bound"] = row.rank_lower_bound;
            if (row.paper_rank)
                jr["paper_rank"] = *row.paper_rank;
            else
                jr["paper_rank"] = nullptr;
            jr["note"] = row.note;
            rows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(rows);
        Json skipped = Json::array();
        for (const auto& t : res.skipped_singular) skipped.push_back(rat_to_string(t));
        doc["skipped_singular"] = std::move(skipped);
        return doc.dump(2) + "\n";
    }
    throw std::invalid_argument("emit_report: unknown format '" + format + "'");
}

}  // namespace ranksurf
