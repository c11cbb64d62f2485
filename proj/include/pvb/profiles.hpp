#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace pvb::profiles {

inline constexpr int kHoursPerYear = 8760;
inline constexpr int kDaysPerYear = 365;

enum class Unit { kW, kWhPerM2, CentPerKWh, EurPerMWh };

std::string unit_name(Unit u);

/// A fixed-length hourly series over one modeled year (365 days, no leap
/// day, no DST shifts).
struct HourlySeries {
    std::vector<double> values; // length kHoursPerYear
    Unit unit = Unit::kW;

    HourlySeries() = default;
    HourlySeries(std::vector<double> v, Unit u);

    static HourlySeries constant(double value, Unit u);

    double sum() const;
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    /// Throws if length or finiteness requirements are violated; load and
    /// irradiance series must additionally be non-negative.
    void validate(const std::string& what) const;
};

enum class Weekday { Monday = 0, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

/// Dual retail tariff: peak hours Mon-Sat 06:00-22:00 get 107% of the base
/// tariff, all other hours (including all of Sunday) get 71%.
struct TariffCalendar {
    double base_tariff_cent = 0.0; // cent/kWh
    double low_factor = 0.71;
    double high_factor = 1.07;
    Weekday year_start = Weekday::Monday;
    int peak_start_hour = 6;  // inclusive
    int peak_end_hour = 22;   // exclusive

    bool is_peak(int hour_of_year) const;
    /// Per-hour multiplicative factors (0.71 / 1.07), independent of the
    /// base tariff.
    std::vector<double> hour_factors() const;
    int peak_hour_count() const;
};

/// Scales a load profile so that its annual energy equals target_annual
/// (kWh, 1 h steps). Shape-preserving. Throws on a zero-sum profile unless
/// the target is zero too (then returns an all-zero series).
HourlySeries scale_load(const HourlySeries& profile, double target_annual_kwh);

struct PvParams {
    double area_per_kwp = 6.0;     // m^2/kWp
    double eta_module = 0.17;
    double eta_inverter = 0.98;
    double performance_ratio = 0.80;

    /// kW of AC output per kWp per (kW/m^2) of irradiance.
    double yield_factor() const { return area_per_kwp * eta_module * eta_inverter * performance_ratio; }
};

/// Hourly generation ceiling of one PV category: cap * a^pv * eta_mod *
/// eta_inv * eta_pf * I_t. Generation may later be dispatched below this
/// ceiling (curtailment).
HourlySeries pv_ceiling(double cap_kwp, const HourlySeries& irradiance, const PvParams& params);

/// Retail tariff series for a single year: base tariff, calendar factor and
/// geometric growth applied for year_offset years.
HourlySeries retail_series(const TariffCalendar& calendar, int year_offset, double growth_per_year);

/// Scales an irradiance shape so its annual integral (kWh/m^2) matches the
/// target annual irradiation.
HourlySeries scale_irradiance(const HourlySeries& shape, double target_annual_kwh_m2);

/// Loads a 2-column `hour,value` CSV with exactly 8760 data rows.
HourlySeries load_series_csv(const std::string& path, Unit unit);

void write_series_csv(const std::string& path, const HourlySeries& s);

/// First hour index (inclusive) and one-past-last of each calendar month on
/// the 365-day year.
std::array<std::pair<int, int>, 12> month_hour_ranges();

} // namespace pvb::profiles
