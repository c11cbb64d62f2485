#include "pvb/profiles.hpp"

#include <cmath>
#include <sstream>

#include "pvb/util.hpp"

namespace pvb::profiles {

using util::InputError;

std::string unit_name(Unit u) {
    switch (u) {
    case Unit::kW: return "kW";
    case Unit::kWhPerM2: return "kWh/m2";
    case Unit::CentPerKWh: return "cent/kWh";
    case Unit::EurPerMWh: return "EUR/MWh";
    }
    return "?";
}

HourlySeries::HourlySeries(std::vector<double> v, Unit u) : values(std::move(v)), unit(u) {}

HourlySeries HourlySeries::constant(double value, Unit u) {
    return HourlySeries(std::vector<double>(kHoursPerYear, value), u);
}

double HourlySeries::sum() const {
    double s = 0;
    for (double v : values) s += v;
    return s;
}

void HourlySeries::validate(const std::string& what) const {
    if (values.size() != kHoursPerYear)
        throw InputError(what + ": series has " + std::to_string(values.size()) + " values, expected 8760");
    bool nonneg_required = (unit == Unit::kW || unit == Unit::kWhPerM2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw InputError(what + ": non-finite value at hour " + std::to_string(i));
        if (nonneg_required && values[i] < 0)
            throw InputError(what + ": negative value at hour " + std::to_string(i));
    }
}

bool TariffCalendar::is_peak(int hour_of_year) const {
    int day = hour_of_year / 24;
    int hod = hour_of_year % 24;
    int wd = (static_cast<int>(year_start) + day) % 7;
    if (wd == static_cast<int>(Weekday::Sunday)) return false;
    return hod >= peak_start_hour && hod < peak_end_hour;
}

std::vector<double> TariffCalendar::hour_factors() const {
    std::vector<double> f(kHoursPerYear);
    for (int h = 0; h < kHoursPerYear; ++h) f[h] = is_peak(h) ? high_factor : low_factor;
    return f;
}

int TariffCalendar::peak_hour_count() const {
    int n = 0;
    for (int h = 0; h < kHoursPerYear; ++h)
        if (is_peak(h)) ++n;
    return n;
}

HourlySeries scale_load(const HourlySeries& profile, double target_annual_kwh) {
    if (target_annual_kwh < 0) throw InputError("scale_load: negative target");
    if (target_annual_kwh == 0) return HourlySeries::constant(0.0, profile.unit);
    double s = profile.sum();
    if (s <= 0) throw InputError("scale_load: profile sums to zero, cannot scale to a positive target");
    double k = target_annual_kwh / s;
    HourlySeries out = profile;
    for (double& v : out.values) v *= k;
    return out;
}

HourlySeries pv_ceiling(double cap_kwp, const HourlySeries& irradiance, const PvParams& params) {
    if (cap_kwp < 0) throw InputError("pv_ceiling: negative capacity");
    for (double v : irradiance.values)
        if (v < 0) throw InputError("pv_ceiling: negative irradiance");
    double k = cap_kwp * params.yield_factor();
    HourlySeries out = irradiance;
    out.unit = Unit::kW;
    for (double& v : out.values) v *= k;
    return out;
}

HourlySeries retail_series(const TariffCalendar& calendar, int year_offset, double growth_per_year) {
    if (growth_per_year <= -1.0) throw InputError("retail_series: growth must be > -1");
    double esc = std::pow(1.0 + growth_per_year, year_offset);
    HourlySeries out;
    out.unit = Unit::CentPerKWh;
    out.values.resize(kHoursPerYear);
    for (int h = 0; h < kHoursPerYear; ++h) {
        double f = calendar.is_peak(h) ? calendar.high_factor : calendar.low_factor;
        out.values[h] = calendar.base_tariff_cent * f * esc;
    }
    return out;
}

HourlySeries scale_irradiance(const HourlySeries& shape, double target_annual_kwh_m2) {
    if (target_annual_kwh_m2 < 0) throw InputError("scale_irradiance: negative target");
    double s = shape.sum();
    if (s <= 0) throw InputError("scale_irradiance: shape sums to zero");
    HourlySeries out = shape;
    double k = target_annual_kwh_m2 / s;
    for (double& v : out.values) v *= k;
    return out;
}

HourlySeries load_series_csv(const std::string& path, Unit unit) {
    util::CsvTable t = util::read_csv(path);
    int ch = t.require_column("hour");
    int cv = t.require_column("value");
    if (t.rows.size() != kHoursPerYear)
        throw InputError(path, -1,
                         "expected 8760 data rows, got " + std::to_string(t.rows.size()));
    HourlySeries out;
    out.unit = unit;
    out.values.resize(kHoursPerYear);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        long h = util::parse_long(t.rows[i][ch], path, static_cast<long>(i + 2));
        if (h != static_cast<long>(i))
            throw InputError(path, static_cast<long>(i + 2), "hours must run 0..8759 in order");
        out.values[i] = util::parse_double(t.rows[i][cv], path, static_cast<long>(i + 2));
    }
    out.validate(path);
    return out;
}

void write_series_csv(const std::string& path, const HourlySeries& s) {
    std::ostringstream os;
    os << "hour,value\n";
    for (int h = 0; h < kHoursPerYear; ++h) os << h << ',' << util::fmt_double(s.values[h]) << '\n';
    util::write_file_atomic(path, os.str());
}

std::array<std::pair<int, int>, 12> month_hour_ranges() {
    static constexpr int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    std::array<std::pair<int, int>, 12> out{};
    int h = 0;
    for (int m = 0; m < 12; ++m) {
        out[m] = {h, h + days[m] * 24};
        h += days[m] * 24;
    }
    return out;
}

} // namespace pvb::profiles
