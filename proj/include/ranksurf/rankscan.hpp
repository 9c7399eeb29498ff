#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ranksurf/families.hpp"
#include "ranksurf/heights.hpp"

namespace ranksurf {

struct PointRecord {
    std::string label;  // section/bisection name, or "search"
    PointQ point;
    bool torsion = false;
};

struct FiberRow {
    Rat t0;
    CurveQ curve;
    std::vector<PointRecord> points;
    IndependenceCertificate certificate;
    int searched_points = 0;  // points contributed by the height search
    int rank_lower_bound = 0;
    std::optional<int> paper_rank;  // reference only, never feeds computation
    std::string note;
};

struct ScanConfig {
    std::string family;
    std::map<std::string, Rat> params;
    enum class Source { Range, Conic } source = Source::Range;
    long t_min = 0, t_max = 0;   // range source (inclusive)
    int conic_count = 0;         // conic source
    long conic_search_bound = 50;
    double target_error = 1e-3;
    long search_height = 0;      // 0 disables the point search
    int parallelism = 1;
    std::string format = "text";
};

struct ScanResult {
    std::string family;
    std::map<std::string, Rat> params;
    std::vector<FiberRow> rows;
    std::vector<Rat> skipped_singular;
};

// "y^2 = x^3 + ..." with the cubic printed in x, integers kept integral.
std::string equation_string(const CurveQ& c);

// Reference rank values reported alongside certified bounds where available.
std::optional<int> paper_rank_reference(const std::string& family, const std::map<std::string, Rat>& params,
                                        const Rat& t0);

ScanResult scan(const ScanConfig& cfg);

// format: text | csv | json. Byte-deterministic for identical inputs.
std::string emit_report(const ScanResult& res, const std::string& format);

}  // namespace ranksurf
