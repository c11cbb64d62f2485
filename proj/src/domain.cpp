#include "pvb/domain.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pvb/util.hpp"

namespace pvb::domain {

using util::InputError;

const std::vector<std::string>& canton_codes() {
    static const std::vector<std::string> codes = {
        "ZH", "BE", "LU", "UR", "SZ", "OW", "NW", "GL", "ZG", "FR", "SO", "BS", "BL",
        "SH", "AR", "AI", "SG", "GR", "AG", "TG", "TI", "VD", "VS", "NE", "GE", "JU"};
    return codes;
}

int region_id_from_code(const std::string& code) {
    const auto& codes = canton_codes();
    for (std::size_t i = 0; i < codes.size(); ++i)
        if (codes[i] == code) return static_cast<int>(i) + 1;
    throw InputError("unknown canton code '" + code + "'");
}

const std::string& region_code(int region_id) {
    if (region_id < 1 || region_id > kNumRegions)
        throw InputError("region_id out of range: " + std::to_string(region_id));
    return canton_codes()[static_cast<std::size_t>(region_id - 1)];
}

BinScheme BinScheme::standard() {
    BinScheme s;
    for (int i = 0; i < 5; ++i) s.irr_edges.push_back(1000.0 + 150.0 * i);
    // Roof-size bins: 6 m2 steps on 12-60, 12 on 60-180, 30 on 180-600,
    // 300 on 600-1200, 600 on 1200-2400, 1200 on 2400-6000, last bin open.
    auto push_range = [&s](double lo, double hi, double step) {
        for (double v = lo; v < hi - 1e-9; v += step) s.area_edges.push_back(v);
    };
    push_range(12, 60, 6);
    push_range(60, 180, 12);
    push_range(180, 600, 30);
    push_range(600, 1200, 300);
    push_range(1200, 2400, 600);
    push_range(2400, 6000, 1200);
    s.area_edges.push_back(6000);
    s.load_edges = {0, 1600, 2500, 3500, 4500, 5500, 7500, 13000, 25000, 30000, 150000};
    return s;
}

namespace {
int edge_bin(const std::vector<double>& edges, double v) {
    if (v < edges.front()) return 0;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<int>(it - edges.begin()); // 1-based; last bin open above
}
} // namespace

int BinScheme::irr_bin(double v) const { return edge_bin(irr_edges, v); }
int BinScheme::area_bin(double v) const { return edge_bin(area_edges, v); }
int BinScheme::load_bin(double v) const { return edge_bin(load_edges, v); }

std::optional<BinTriple> classify(const RooftopRecord& rec, const BinScheme& scheme, std::string* reason) {
    auto fail = [&](const std::string& r) -> std::optional<BinTriple> {
        if (reason) *reason = r;
        return std::nullopt;
    };
    if (rec.region_id < 1 || rec.region_id > kNumRegions) return fail("region_id out of range");
    if (!(rec.area_m2 > 0)) return fail("non-positive area");
    if (rec.consumption_kwh < 0) return fail("negative consumption");
    if (rec.irradiation_kwh_m2 < scheme.irr_edges.front()) return fail("irradiation below 1000 kWh/m2");
    if (rec.area_m2 < scheme.area_edges.front()) return fail("area below 12 m2");
    BinTriple t;
    t.irr = scheme.irr_bin(rec.irradiation_kwh_m2);
    t.area = scheme.area_bin(rec.area_m2);
    t.load = scheme.load_bin(rec.consumption_kwh);
    return t;
}

std::string CustomerGroup::key() const {
    std::ostringstream os;
    os << region_code(region_id) << "/IRR" << irr_bin << "/A" << area_bin << "/L" << load_bin;
    return os.str();
}

namespace {
/// Lower-middle element; keeps the median attainable by a real rooftop.
double lower_median(std::vector<double>& v) {
    std::size_t k = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}
} // namespace

GroupingResult build_groups(const std::vector<RooftopRecord>& records, const BinScheme& scheme) {
    GroupingResult out;
    struct Members {
        std::vector<double> irr, area, load;
        double total_area = 0;
    };
    std::map<std::tuple<int, int, int, int>, Members> buckets;
    for (const auto& rec : records) {
        std::string reason;
        auto t = classify(rec, scheme, &reason);
        if (!t) {
            out.rejected.push_back({rec, reason});
            continue;
        }
        auto& m = buckets[{rec.region_id, t->irr, t->area, t->load}];
        m.irr.push_back(rec.irradiation_kwh_m2);
        m.area.push_back(rec.area_m2);
        m.load.push_back(rec.consumption_kwh);
        m.total_area += rec.area_m2;
    }
    for (auto& [key, m] : buckets) {
        CustomerGroup g;
        g.region_id = std::get<0>(key);
        g.irr_bin = std::get<1>(key);
        g.area_bin = std::get<2>(key);
        g.load_bin = std::get<3>(key);
        g.median_irradiation = lower_median(m.irr);
        g.median_area = lower_median(m.area);
        g.median_consumption = lower_median(m.load);
        g.total_area = m.total_area;
        g.customer_count = m.total_area / g.median_area;
        out.groups.push_back(g);
    }
    return out;
}

std::vector<RooftopRecord> load_rooftops_csv(const std::string& path) {
    util::CsvTable t = util::read_csv(path);
    int cr = t.require_column("region_id");
    int ca = t.require_column("area_m2");
    int ci = t.require_column("irradiation_kwh_m2_yr");
    int cc = t.require_column("consumption_kwh_yr");
    std::vector<RooftopRecord> out;
    out.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        long line = static_cast<long>(i + 2);
        RooftopRecord r;
        r.region_id = static_cast<int>(util::parse_long(t.rows[i][cr], path, line));
        r.area_m2 = util::parse_double(t.rows[i][ca], path, line);
        r.irradiation_kwh_m2 = util::parse_double(t.rows[i][ci], path, line);
        r.consumption_kwh = util::parse_double(t.rows[i][cc], path, line);
        out.push_back(r);
    }
    return out;
}

} // namespace pvb::domain
