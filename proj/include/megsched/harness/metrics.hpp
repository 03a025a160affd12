#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "megsched/coordinator/horizon.hpp"

namespace megsched {

struct CdfPoint {
    std::size_t iterations = 0;
    double fraction = 0.0;  ///< share of slots converging in at most `iterations`
};

/// Empirical right-continuous CDF over slots, one point per distinct count.
std::vector<CdfPoint> iteration_cdf(std::span<const std::size_t> counts);
std::vector<CdfPoint> iteration_cdf(const ScheduleResult& r);

/// Fraction of slots with at most `n` iterations under a CDF.
double cdf_at(const std::vector<CdfPoint>& cdf, std::size_t n) noexcept;

std::vector<std::size_t> iteration_counts(const ScheduleResult& r);
double median(std::vector<double> v);
double median_iterations(const ScheduleResult& r);

/// Executed cost summed per hour of day (slot t falls in hour t mod 24).
std::array<double, 24> hourly_costs(const ScheduleResult& r);

/// Mean executed storage rates over the horizon, summed over plants per carrier.
struct MeanStorageRates {
    double charge_e = 0.0;
    double discharge_e = 0.0;
    double charge_h = 0.0;
    double discharge_h = 0.0;
};
/// Per-plant mean executed rates.
std::vector<MeanStorageRates> mean_storage_rates(const ScheduleResult& r);

/// Mean battery charge and discharge (all plants) over slots whose purchase
/// price lies in the top or bottom quartile.
struct QuartileRates {
    double top_charge = 0.0;
    double top_discharge = 0.0;
    double bottom_charge = 0.0;
    double bottom_discharge = 0.0;
};
QuartileRates price_quartile_rates(const ScheduleResult& r, const TraceSet& traces);

} // namespace megsched
