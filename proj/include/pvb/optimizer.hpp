#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pvb/economics.hpp"
#include "pvb/lp.hpp"
#include "pvb/prices.hpp"

namespace pvb::opt {

using econ::kNumPvBands;

/// Everything one group-year optimization needs, independent of where the
/// data came from. T is free (8760 in production, small in reduced test
/// instances).
struct ProblemInstance {
    std::string label;

    // hourly data, all length T
    std::vector<double> load_kw;
    std::vector<double> pv_unit_kw;      // AC output of 1 kWp at hour t (yield factor * irradiance)
    std::vector<double> retail_weight;   // EUR/kWh, lifetime-composite price weight
    std::vector<double> inj_weight;      // EUR/kWh, lifetime-composite

    // PV bands: net capacity cost and lifetime O&M weight
    std::array<double, kNumPvBands> pv_cap_cost{};   // EUR/kWp after subsidy and rebate
    std::array<double, kNumPvBands> pv_voc_life{};   // EUR/kWh generated, discounted lifetime sum
    std::array<double, kNumPvBands> band_lo{};       // kWp, minimum when active
    std::array<double, kNumPvBands> band_hi{};       // kWp, band upper edge
    double fixed_subsidy_net = 0;                    // EUR, credited once when anything is built

    double dep_max_kwp = 0;   // rooftop deployment limit
    double sum_min_kwp = econ::kGlobalMinKwp;
    double sum_max_kwp = econ::kGlobalMaxKwp;

    // battery
    bool battery_allowed = true;
    double eta_ch = 0.93;
    double eta_dis = 0.93;       // discharge and battery-inverter efficiency combined
    double dod_max = 1.0;
    double bat_e_cost = 0;       // EUR/kWh incl. replacements and residual value
    double bat_p_cost = 0;       // EUR/kW incl. replacements, residual and fixed O&M
    double bat_voc_life = 0;     // EUR/kWh discharged, discounted lifetime sum

    int hours() const { return static_cast<int>(load_kw.size()); }
    void check() const; // throws on inconsistent sizes / bad parameters
};

/// Bitmask over the five PV bands; bit p set = band p active.
using SubsetMask = std::uint8_t;

struct Dispatch {
    std::vector<double> gen_kw;    // total PV generation
    std::vector<double> ch_kw;     // PV-to-battery power
    std::vector<double> dis_kw;    // battery-to-load power
    std::vector<double> pv2l_kw;
    std::vector<double> inj_kw;
    std::vector<double> g2l_kw;
    std::vector<double> soc_kwh;   // end-of-hour stored energy
    std::array<double, kNumPvBands> annual_gen_kwh{}; // per band
};

struct InvestmentSolution {
    std::array<double, kNumPvBands> cap_pv{};
    std::array<bool, kNumPvBands> active{};
    double cap_bat_e = 0;
    double cap_bat_p = 0;
    Dispatch dispatch;
    double objective = 0;           // EUR lifetime cost; NPV = -objective
    bool invested = false;
    std::vector<int> flagged_hours; // simultaneous charge/discharge kept (negative prices)
    int lps_solved = 0;

    double total_pv() const;
    double c_rate() const; // cap_bat_p / cap_bat_e, 0 when no battery
    double total_sc_kwh() const;
    double total_gen_kwh() const;
};

struct SolveOptions {
    bool full_enumeration = false;  // enumerate all 2^5 activation subsets
    bool use_simplex = false;       // cross-check path for small instances
    lp::IpmOptions ipm;
    double do_nothing_eps = 1e-4;   // EUR; ties go to not investing
    std::string dump_lp_dir;        // when set, write each subproblem in LP format
};

/// Lifetime-composite per-hour price weights:
///   w_t = sum_{y=1..l_sys} price_{y,t} * (1-deg)^(y-1) / (1+wacc)^y
struct CompositeWeights {
    std::vector<double> retail; // EUR/kWh
    std::vector<double> injection;
};
CompositeWeights composite_prices(const econ::PriceSeriesSource& book, double wacc, double degradation,
                                  int l_sys);

/// Builds the investment+dispatch LP for one activation subset. Row order
/// follows the hour blocks, which is what the IPM's banded factorization
/// relies on. Capacity bounds of inactive bands are fixed to zero.
lp::Model build_lp(const ProblemInstance& inst, SubsetMask active, bool battery_allowed,
                   bool with_names = false);

/// Solves one group-year problem: enumerates activation subsets (with a
/// provably-safe dominance reduction unless full_enumeration is set),
/// compares against the do-nothing option and returns the best solution.
InvestmentSolution solve_group(const ProblemInstance& inst, const SolveOptions& opt = {});

struct ValidationReport {
    double max_violation = 0;
    std::string worst;
    bool simultaneous_flow = false;

    bool ok(double tol) const { return max_violation <= tol && !simultaneous_flow; }
};

/// Checks every model constraint directly against the instance data
/// (independent of the LP classes).
ValidationReport validate_solution(const ProblemInstance& inst, const InvestmentSolution& sol);

} // namespace pvb::opt
