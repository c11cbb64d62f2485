#pragma once

#include <vector>

namespace pvb::econ {

/// Access to the retail and injection price paths over a system lifetime.
/// Lifetime years are 1-based; implementations expose both materialized
/// series (for audits and tests) and year-wise dot products against an
/// hourly vector (the fast path for cash-flow computations).
class PriceSeriesSource {
public:
    virtual ~PriceSeriesSource() = default;

    virtual int lifetime_years() const = 0;

    /// out[y-1] = sum_t x_t * retail_{y,t}, prices in cent/kWh.
    virtual std::vector<double> retail_dots(const std::vector<double>& x) const = 0;
    virtual std::vector<double> injection_dots(const std::vector<double>& x) const = 0;

    /// Hourly price series of lifetime year y (8760 values, cent/kWh).
    virtual std::vector<double> retail_year(int y) const = 0;
    virtual std::vector<double> injection_year(int y) const = 0;
};

} // namespace pvb::econ
