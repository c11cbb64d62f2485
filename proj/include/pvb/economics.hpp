#pragma once

#include <array>
#include <string>
#include <vector>

namespace pvb::econ {

inline constexpr int kNumPvBands = 5;

/// PV size categories in kWp. Band p is active on [lower, upper); the last
/// band's upper limit is the global maximum.
inline constexpr std::array<double, kNumPvBands + 1> kPvBandEdges = {0, 6, 10, 30, 100, 50000};
inline constexpr double kGlobalMinKwp = 2.0;
inline constexpr double kGlobalMaxKwp = 50000.0;

enum class CostVariant { Low, Base, High };
CostVariant cost_variant_from_string(const std::string& s);
std::string to_string(CostVariant v);

/// Piecewise-linear cost path over calendar years: linear interpolation
/// between published points, flat beyond both ends.
struct CostPath {
    std::vector<int> years;
    std::vector<double> values;
    double at(double year) const;
};

struct VariantCosts {
    std::array<CostPath, kNumPvBands> pv_inv;  // EUR/kWp
    std::array<CostPath, kNumPvBands> pv_voc;  // cent/kWh
    CostPath bat_inv_e;                        // EUR/kWh
    CostPath bat_inv_p;                        // EUR/kW
    CostPath bat_voc_e;                        // EUR/MWh
    CostPath bat_foc_p;                        // EUR/kW-yr
};

struct CostTables {
    VariantCosts low, base, high;

    const VariantCosts& variant(CostVariant v) const;
    VariantCosts& variant(CostVariant v);

    /// The published cost assumptions this project ships with.
    static CostTables paper_defaults();

    /// True when larger PV bands are never more expensive per kWp nor in
    /// variable O&M; the single-band dominance reduction requires this.
    bool pv_bands_monotone() const;

    /// Returns a copy whose battery investment costs are rescaled by a
    /// single factor so that a reference system (ref_kwh, ref_kw) costs
    /// target_eur in 2020. Battery O&M costs are left unchanged.
    CostTables with_battery_calibration(double target_eur, double ref_kwh, double ref_kw) const;
};

/// Loads `scenario,year,item,band,value,unit` rows. Items: pv_inv, pv_voc
/// (band 1..5), bat_inv_e, bat_inv_p, bat_voc_e, bat_foc_p (band 0).
CostTables load_cost_csv(const std::string& path);
void write_cost_csv(const std::string& path, const CostTables& t);

struct PolicyParams {
    double subsidy_fixed_eur = 909.0;
    std::array<double, kNumPvBands> subsidy_rate_eur_per_kw = {309, 300, 291, 282, 273};
    double subsidy_decay_per_year = 0.02; // applied as (1-decay)^(year-2020)
    int subsidy_expiry_year = 2030;       // last year with subsidy
    int subsidy_base_year = 2020;
    double tax_rebate = 0.20;

    /// Decay factor for a given investment year, zero past expiry.
    double subsidy_factor(int year) const;
};

/// Net PV investment cost: (1 - rebate) * (gross - subsidy). The fixed
/// subsidy component applies once per system when total capacity > 0; the
/// subsidy is clamped at the gross cost (a warning is emitted through the
/// optional flag).
double pv_invest_cost(const std::array<double, kNumPvBands>& caps_kwp, int year,
                      const PolicyParams& policy, const VariantCosts& costs,
                      bool* subsidy_clamped = nullptr);

double battery_invest_cost(double energy_kwh, double power_kw, int year, const VariantCosts& costs);

struct ReplacementSchedule {
    std::vector<int> years;     // 1-based years within the system lifetime
    int residual_lifetime = 0;  // years of battery life left at end of system life
};

ReplacementSchedule replacement_schedule(int l_sys, int l_bat);

/// Annuity factor wacc / (1 - (1+wacc)^-l_bat); the wacc = 0 limit is 1/l_bat.
double annuity_factor(double wacc, int l_bat);

double residual_value(double repl_cost_last, double wacc, int l_bat, int residual_lifetime);

/// Yearly operating cost and revenue of one solved dispatch, in EUR.
struct YearFlows {
    double cost = 0;
    double revenue = 0;
};

/// Inputs that the cash-flow computations need from a solved dispatch.
struct DispatchSummary {
    std::array<double, kNumPvBands> annual_gen_kwh{};  // per PV band
    double annual_discharge_kwh = 0;                   // battery-to-load energy
    double cap_bat_p = 0;                              // kW
    std::vector<double> sc_kw;                         // hourly self-consumption (8760)
    std::vector<double> inj_kw;                        // hourly grid injection (8760)
};

struct EconParams {
    double wacc = 0.04;
    double degradation = 0.005;
    int l_sys = 30;
    int l_bat = 13;
};

struct EconResult {
    double npv = 0;      // EUR
    double pbp = 0;      // years; +inf when first-year inflow <= 0
    double pbp_avg = 0;  // years computed from the mean yearly inflow
    double scr = 0;      // [0,1]
    double ssr = 0;      // [0,1]
    std::vector<double> yearly_cashflows; // revenue - cost per lifetime year
};

class PriceSeriesSource; // defined in scenarios.hpp

/// C_out_y / R_in_y per lifetime year y = 1..l_sys. Retail and injection
/// prices come from the price source; revenues carry the degradation factor
/// (1-delta)^(y-1).
std::vector<YearFlows> annual_flows(const DispatchSummary& d, const PriceSeriesSource& prices,
                                    const VariantCosts& costs, int invest_year,
                                    const EconParams& par);

struct Replacement {
    int year = 0;    // lifetime year of the outlay
    double cost = 0; // EUR
};

/// -invest + sum_y (R-C)/(1+wacc)^y - sum repl/(1+wacc)^y + residual/(1+wacc)^l_sys
double npv(double invest, const std::vector<YearFlows>& flows, const std::vector<Replacement>& repls,
           double residual, double wacc, int l_sys);

struct IndicatorInput {
    double total_sc_kwh = 0;
    double total_gen_kwh = 0;
    double total_load_kwh = 0;
    double invest = 0;
    double first_year_inflow = 0; // undiscounted R-C of lifetime year 1
    double mean_inflow = 0;       // mean undiscounted R-C over the lifetime
};

void indicators(const IndicatorInput& in, EconResult& out);

} // namespace pvb::econ
