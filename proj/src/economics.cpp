#include "pvb/economics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "pvb/prices.hpp"
#include "pvb/util.hpp"

namespace pvb::econ {

using util::InputError;

CostVariant cost_variant_from_string(const std::string& s) {
    std::string v = util::lower(s);
    if (v == "low") return CostVariant::Low;
    if (v == "base" || v == "baseline") return CostVariant::Base;
    if (v == "high") return CostVariant::High;
    throw InputError("unknown cost variant '" + s + "'");
}

std::string to_string(CostVariant v) {
    switch (v) {
    case CostVariant::Low: return "low";
    case CostVariant::Base: return "base";
    case CostVariant::High: return "high";
    }
    return "?";
}

double CostPath::at(double year) const {
    if (years.empty()) throw InputError("empty cost path");
    if (year <= years.front()) return values.front();
    if (year >= years.back()) return values.back();
    for (std::size_t i = 1; i < years.size(); ++i) {
        if (year <= years[i]) {
            double t = (year - years[i - 1]) / static_cast<double>(years[i] - years[i - 1]);
            return values[i - 1] + t * (values[i] - values[i - 1]);
        }
    }
    return values.back();
}

const VariantCosts& CostTables::variant(CostVariant v) const {
    switch (v) {
    case CostVariant::Low: return low;
    case CostVariant::High: return high;
    default: return base;
    }
}

VariantCosts& CostTables::variant(CostVariant v) {
    switch (v) {
    case CostVariant::Low: return low;
    case CostVariant::High: return high;
    default: return base;
    }
}

namespace {

const std::vector<int> kPvYears = {2020, 2030, 2040, 2050};
const std::vector<int> kBatYears = {2020, 2025, 2030, 2035, 2040, 2045, 2050};

CostPath path(const std::vector<int>& years, std::initializer_list<double> vals) {
    CostPath p;
    p.years = years;
    p.values = vals;
    return p;
}

VariantCosts base_costs() {
    VariantCosts c;
    c.pv_inv = {path(kPvYears, {2496, 2060, 1770, 1654}), path(kPvYears, {2393, 1964, 1578, 1204}),
                path(kPvYears, {1916, 1572, 1308, 1102}), path(kPvYears, {1272, 1036, 895, 816}),
                path(kPvYears, {814, 664, 573, 523})};
    c.pv_voc = {path(kPvYears, {2.6, 2.1, 1.9, 1.7}), path(kPvYears, {2.6, 2.1, 1.8, 1.7}),
                path(kPvYears, {2.6, 2.1, 1.8, 1.7}), path(kPvYears, {2.6, 2.1, 1.8, 1.7}),
                path(kPvYears, {1.7, 1.4, 1.2, 1.2})};
    c.bat_inv_e = path(kBatYears, {377, 233, 158, 123, 110, 103, 96});
    c.bat_inv_p = path(kBatYears, {319, 197, 133, 104, 93, 87, 81});
    c.bat_voc_e = path(kBatYears, {1.41, 0.87, 0.59, 0.46, 0.41, 0.38, 0.36});
    c.bat_foc_p = path(kBatYears, {4.70, 2.91, 1.97, 1.54, 1.37, 1.28, 1.20});
    return c;
}

VariantCosts high_costs() {
    VariantCosts c;
    c.pv_inv = {path(kPvYears, {2786, 2322, 2060, 1857}), path(kPvYears, {2546, 2241, 1854, 1411}),
                path(kPvYears, {2066, 1813, 1561, 1308}), path(kPvYears, {1382, 1225, 1083, 989}),
                path(kPvYears, {885, 784, 694, 633})};
    c.pv_voc = {path(kPvYears, {2.6, 2.2, 1.9, 1.7}), path(kPvYears, {2.6, 2.2, 1.9, 1.7}),
                path(kPvYears, {2.6, 2.2, 1.9, 1.7}), path(kPvYears, {2.6, 2.2, 1.9, 1.7}),
                path(kPvYears, {1.7, 1.5, 1.3, 1.2})};
    c.bat_inv_e = path(kBatYears, {459, 329, 247, 206, 178, 171, 158});
    c.bat_inv_p = path(kBatYears, {388, 278, 209, 174, 151, 145, 133});
    c.bat_voc_e = path(kBatYears, {1.72, 1.23, 0.92, 0.77, 0.67, 0.64, 0.59});
    c.bat_foc_p = path(kBatYears, {5.73, 4.10, 3.08, 2.56, 2.22, 2.14, 1.97});
    return c;
}

VariantCosts low_costs() {
    VariantCosts c;
    c.pv_inv = {path(kPvYears, {2351, 1799, 1480, 1422}), path(kPvYears, {2241, 1715, 1300, 996}),
                path(kPvYears, {1790, 1354, 1056, 996}), path(kPvYears, {1178, 864, 691, 644}),
                path(kPvYears, {754, 553, 442, 412})};
    c.pv_voc = {path(kPvYears, {2.6, 2.1, 1.9, 1.7}), path(kPvYears, {2.6, 2.1, 1.8, 1.7}),
                path(kPvYears, {2.6, 2.1, 1.8, 1.7}), path(kPvYears, {2.6, 2.1, 1.8, 1.7}),
                path(kPvYears, {1.7, 1.4, 1.2, 1.1})};
    c.bat_inv_e = path(kBatYears, {295, 137, 69, 41, 41, 34, 34});
    c.bat_inv_p = path(kBatYears, {249, 116, 58, 35, 35, 29, 29});
    c.bat_voc_e = path(kBatYears, {1.10, 0.51, 0.26, 0.15, 0.15, 0.13, 0.13});
    c.bat_foc_p = path(kBatYears, {3.68, 1.71, 0.85, 0.51, 0.51, 0.43, 0.43});
    return c;
}

} // namespace

CostTables CostTables::paper_defaults() {
    CostTables t;
    t.base = base_costs();
    t.high = high_costs();
    t.low = low_costs();
    return t;
}

bool CostTables::pv_bands_monotone() const {
    for (const VariantCosts* v : {&low, &base, &high}) {
        for (int p = 1; p < kNumPvBands; ++p) {
            const CostPath& a_inv = v->pv_inv[p - 1];
            const CostPath& b_inv = v->pv_inv[p];
            const CostPath& a_voc = v->pv_voc[p - 1];
            const CostPath& b_voc = v->pv_voc[p];
            for (int y : a_inv.years)
                if (b_inv.at(y) > a_inv.at(y) + 1e-9) return false;
            for (int y : b_inv.years)
                if (b_inv.at(y) > a_inv.at(y) + 1e-9) return false;
            for (int y : a_voc.years)
                if (b_voc.at(y) > a_voc.at(y) + 1e-9) return false;
            for (int y : b_voc.years)
                if (b_voc.at(y) > a_voc.at(y) + 1e-9) return false;
        }
    }
    return true;
}

CostTables CostTables::with_battery_calibration(double target_eur, double ref_kwh, double ref_kw) const {
    CostTables t = *this;
    for (CostVariant v : {CostVariant::Low, CostVariant::Base, CostVariant::High}) {
        VariantCosts& c = t.variant(v);
        double cost2020 = c.bat_inv_e.at(2020) * ref_kwh + c.bat_inv_p.at(2020) * ref_kw;
        if (cost2020 <= 0) throw InputError("battery calibration: zero 2020 reference cost");
        double f = target_eur / cost2020;
        for (double& x : c.bat_inv_e.values) x *= f;
        for (double& x : c.bat_inv_p.values) x *= f;
    }
    return t;
}

CostTables load_cost_csv(const std::string& path) {
    util::CsvTable t = util::read_csv(path);
    int cs = t.require_column("scenario");
    int cy = t.require_column("year");
    int ci = t.require_column("item");
    int cb = t.require_column("band");
    int cv = t.require_column("value");
    t.require_column("unit");

    std::map<std::tuple<std::string, std::string, int>, std::map<int, double>> cells;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        long line = static_cast<long>(i + 2);
        std::string scen = util::lower(t.rows[i][cs]);
        int year = static_cast<int>(util::parse_long(t.rows[i][cy], path, line));
        std::string item = util::lower(t.rows[i][ci]);
        int band = static_cast<int>(util::parse_long(t.rows[i][cb], path, line));
        double val = util::parse_double(t.rows[i][cv], path, line);
        if (val < 0) throw InputError(path, line, "negative cost value");
        cells[{scen, item, band}][year] = val;
    }

    auto fetch = [&](const std::string& scen, const std::string& item, int band) {
        auto it = cells.find({scen, item, band});
        if (it == cells.end())
            throw InputError(path, -1, "missing series " + scen + "/" + item + "/band" + std::to_string(band));
        CostPath p;
        for (auto& [y, v] : it->second) {
            p.years.push_back(y);
            p.values.push_back(v);
        }
        return p;
    };

    CostTables out;
    for (const std::string scen : {"low", "base", "high"}) {
        VariantCosts& c = out.variant(cost_variant_from_string(scen));
        for (int p = 0; p < kNumPvBands; ++p) {
            c.pv_inv[p] = fetch(scen, "pv_inv", p + 1);
            c.pv_voc[p] = fetch(scen, "pv_voc", p + 1);
        }
        c.bat_inv_e = fetch(scen, "bat_inv_e", 0);
        c.bat_inv_p = fetch(scen, "bat_inv_p", 0);
        c.bat_voc_e = fetch(scen, "bat_voc_e", 0);
        c.bat_foc_p = fetch(scen, "bat_foc_p", 0);
    }
    return out;
}

void write_cost_csv(const std::string& path, const CostTables& t) {
    std::ostringstream os;
    os << "scenario,year,item,band,value,unit\n";
    auto emit = [&os](const std::string& scen, const std::string& item, int band, const CostPath& p,
                      const std::string& unit) {
        for (std::size_t i = 0; i < p.years.size(); ++i)
            os << scen << ',' << p.years[i] << ',' << item << ',' << band << ','
               << util::fmt_double(p.values[i]) << ',' << unit << '\n';
    };
    for (const std::string scen : {"low", "base", "high"}) {
        const VariantCosts& c = t.variant(cost_variant_from_string(scen));
        for (int p = 0; p < kNumPvBands; ++p) {
            emit(scen, "pv_inv", p + 1, c.pv_inv[p], "EUR/kWp");
            emit(scen, "pv_voc", p + 1, c.pv_voc[p], "cent/kWh");
        }
        emit(scen, "bat_inv_e", 0, c.bat_inv_e, "EUR/kWh");
        emit(scen, "bat_inv_p", 0, c.bat_inv_p, "EUR/kW");
        emit(scen, "bat_voc_e", 0, c.bat_voc_e, "EUR/MWh");
        emit(scen, "bat_foc_p", 0, c.bat_foc_p, "EUR/kW-yr");
    }
    util::write_file_atomic(path, os.str());
}

double PolicyParams::subsidy_factor(int year) const {
    if (year > subsidy_expiry_year) return 0.0;
    int n = std::max(0, year - subsidy_base_year);
    return std::pow(1.0 - subsidy_decay_per_year, n);
}

double pv_invest_cost(const std::array<double, kNumPvBands>& caps_kwp, int year,
                      const PolicyParams& policy, const VariantCosts& costs, bool* subsidy_clamped) {
    if (subsidy_clamped) *subsidy_clamped = false;
    double gross = 0, rated = 0, total_cap = 0;
    for (int p = 0; p < kNumPvBands; ++p) {
        if (caps_kwp[p] < 0) throw InputError("pv_invest_cost: negative capacity");
        gross += costs.pv_inv[p].at(year) * caps_kwp[p];
        rated += policy.subsidy_rate_eur_per_kw[p] * caps_kwp[p];
        total_cap += caps_kwp[p];
    }
    double subsidy = policy.subsidy_factor(year) * (rated + (total_cap > 0 ? policy.subsidy_fixed_eur : 0.0));
    if (subsidy > gross) {
        subsidy = gross;
        if (subsidy_clamped) *subsidy_clamped = true;
    }
    return (1.0 - policy.tax_rebate) * (gross - subsidy);
}

double battery_invest_cost(double energy_kwh, double power_kw, int year, const VariantCosts& costs) {
    if (energy_kwh < 0 || power_kw < 0) throw InputError("battery_invest_cost: negative capacity");
    return costs.bat_inv_e.at(year) * energy_kwh + costs.bat_inv_p.at(year) * power_kw;
}

ReplacementSchedule replacement_schedule(int l_sys, int l_bat) {
    if (l_sys < 1 || l_bat < 1) throw InputError("replacement_schedule: lifetimes must be >= 1");
    ReplacementSchedule out;
    int n = (l_sys - 1) / l_bat;
    for (int i = 1; i <= n; ++i) out.years.push_back(l_bat * i + 1);
    out.residual_lifetime = l_bat * (n + 1) - l_sys;
    return out;
}

double annuity_factor(double wacc, int l_bat) {
    if (wacc == 0.0) return 1.0 / l_bat;
    return wacc / (1.0 - std::pow(1.0 + wacc, -l_bat));
}

double residual_value(double repl_cost_last, double wacc, int l_bat, int residual_lifetime) {
    return annuity_factor(wacc, l_bat) * residual_lifetime * repl_cost_last;
}

std::vector<YearFlows> annual_flows(const DispatchSummary& d, const PriceSeriesSource& prices,
                                    const VariantCosts& costs, int invest_year, const EconParams& par) {
    // O&M cost parameters are fixed at the investment-year table for the
    // whole lifetime; replacement costs (handled by the caller) are not.
    double cost_year = 0;
    for (int p = 0; p < kNumPvBands; ++p)
        cost_year += costs.pv_voc[p].at(invest_year) / 100.0 * d.annual_gen_kwh[p];
    cost_year += costs.bat_voc_e.at(invest_year) / 1000.0 * d.annual_discharge_kwh;
    cost_year += costs.bat_foc_p.at(invest_year) * d.cap_bat_p;

    std::vector<double> sc_dots = prices.retail_dots(d.sc_kw);
    std::vector<double> inj_dots = prices.injection_dots(d.inj_kw);

    std::vector<YearFlows> out(par.l_sys);
    double deg = 1.0;
    for (int y = 1; y <= par.l_sys; ++y) {
        out[y - 1].cost = cost_year;
        out[y - 1].revenue = (sc_dots[y - 1] + inj_dots[y - 1]) / 100.0 * deg;
        deg *= (1.0 - par.degradation);
    }
    return out;
}

double npv(double invest, const std::vector<YearFlows>& flows, const std::vector<Replacement>& repls,
           double residual, double wacc, int l_sys) {
    double v = -invest;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        int y = static_cast<int>(i) + 1;
        v += (flows[i].revenue - flows[i].cost) / std::pow(1.0 + wacc, y);
    }
    for (const auto& r : repls) v -= r.cost / std::pow(1.0 + wacc, r.year);
    v += residual / std::pow(1.0 + wacc, l_sys);
    return v;
}

void indicators(const IndicatorInput& in, EconResult& out) {
    out.scr = in.total_gen_kwh > 0 ? in.total_sc_kwh / in.total_gen_kwh : 0.0;
    out.ssr = in.total_load_kwh > 0 ? in.total_sc_kwh / in.total_load_kwh : 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (in.invest <= 0) {
        out.pbp = inf;
        out.pbp_avg = inf;
        return;
    }
    out.pbp = in.first_year_inflow > 0 ? in.invest / in.first_year_inflow : inf;
    out.pbp_avg = in.mean_inflow > 0 ? in.invest / in.mean_inflow : inf;
}

} // namespace pvb::econ
