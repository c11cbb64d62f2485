#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pvb::domain {

inline constexpr int kNumRegions = 26;

/// Canonical canton ordering; index i corresponds to region_id i+1.
const std::vector<std::string>& canton_codes();
int region_id_from_code(const std::string& code); // throws on unknown code
const std::string& region_code(int region_id);

/// One rooftop after GIS preprocessing. The area is the effective
/// (availability-corrected) area.
struct RooftopRecord {
    int region_id = 0;              // 1..26
    double area_m2 = 0;             // > 0
    double irradiation_kwh_m2 = 0;  // annual, >= 1000 after ingestion
    double consumption_kwh = 0;     // annual electricity consumption, >= 0
};

/// Bin edges for the three clustering dimensions. All intervals are
/// half-open [lo, hi); the last bin of each dimension is open above.
struct BinScheme {
    std::vector<double> irr_edges;  // size 5: lower edges
    std::vector<double> area_edges; // size 40
    std::vector<double> load_edges; // size 11

    static BinScheme standard();

    int irr_bin(double v) const;   // 1-based, 0 when out of domain (below first edge)
    int area_bin(double v) const;
    int load_bin(double v) const;
};

struct BinTriple {
    int irr = 0;  // 1..5
    int area = 0; // 1..40
    int load = 0; // 1..11
};

struct Rejection {
    RooftopRecord record;
    std::string reason;
};

/// Classifies a record; returns nullopt (with reason) for out-of-domain
/// records (area below the first area bin or irradiation below 1000).
std::optional<BinTriple> classify(const RooftopRecord& rec, const BinScheme& scheme,
                                  std::string* reason = nullptr);

struct CustomerGroup {
    int region_id = 0;
    int irr_bin = 0;
    int area_bin = 0;
    int load_bin = 0;
    double median_irradiation = 0; // kWh/m2/yr
    double median_area = 0;        // m2
    double median_consumption = 0; // kWh/yr
    double total_area = 0;         // m2
    double customer_count = 0;     // total_area / median_area, not rounded

    std::string key() const; // "REG/IRR/A/L" stable identifier
};

struct GroupingResult {
    std::vector<CustomerGroup> groups; // sorted by (region, irr, area, load)
    std::vector<Rejection> rejected;
};

/// Clusters records into customer groups: one group per non-empty
/// (region, irr, area, load) combination, represented by in-group medians.
/// Median of an even-cardinality set is the lower-middle element.
GroupingResult build_groups(const std::vector<RooftopRecord>& records, const BinScheme& scheme);

/// Reads `region_id,area_m2,irradiation_kwh_m2_yr,consumption_kwh_yr` CSV.
std::vector<RooftopRecord> load_rooftops_csv(const std::string& path);

} // namespace pvb::domain
