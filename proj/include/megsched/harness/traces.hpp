#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "megsched/core/params.hpp"

namespace megsched {

/// Exogenous series for T consecutive one-hour slots. Slot t (0-based) falls
/// in hour-of-day t mod 24.
struct TraceSet {
    std::vector<SlotExogenous> slots;

    std::size_t size() const noexcept { return slots.size(); }
};

/// Column layout of a trace CSV:
///   t,p_e,p_o,p_g,R_1..R_K,X_1..X_I[,A_1..A_Q]
/// `t` counts slots from 1; A_q optionally overrides elastic load q's utility slope.
struct TraceSchema {
    std::size_t megps = 0;
    std::size_t users = 0;
    std::size_t elastic = 0;  ///< only used when the A_q columns are present

    std::vector<std::string> header(bool with_alpha) const;
};

/// Every invariant violation of the trace set against the park layout.
std::vector<std::string> validate(const TraceSet& traces, const ParkParams& park);

/// Parses a trace CSV and checks the park-independent invariants (finite,
/// non-negative, p_o <= p_e). Throws ParseError (with row/column) on malformed
/// content and ValidationError naming the broken invariant.
TraceSet load_traces(const std::filesystem::path& path, const TraceSchema& schema);
TraceSet parse_traces(std::istream& in, const TraceSchema& schema);

void write_traces(std::ostream& out, const TraceSet& traces);

/// Shape of the synthetic benchmark series: time-of-use electricity tariff,
/// daylight solar bump, two-peak factory load.
struct SynthProfile {
    std::size_t megps = 2;
    std::size_t users = 3;

    double price_valley = 0.35;  ///< 23:00-08:00
    double price_flat = 0.65;    ///< 12:00-17:00 and 21:00-23:00
    double price_peak = 1.05;    ///< 08:00-12:00 and 17:00-21:00
    double price_noise = 0.02;   ///< relative
    double price_sale = 0.30;    ///< capped at the purchase price
    double price_gas = 0.40;

    int daylight_start = 6;      ///< first hour with solar output
    int daylight_end = 18;       ///< first hour without
    std::vector<double> solar_peak{1.2, 1.0};  ///< per MEGP, MWh at solar noon on a clear day
    double cloud_min = 0.5;      ///< daily clear-sky factor drawn from [cloud_min, 1]

    std::vector<double> load_base{0.9, 0.8, 0.7};  ///< per user, MWh
    double load_morning = 0.5;   ///< relative amplitude of the 10:00 peak
    double load_evening = 0.6;   ///< relative amplitude of the 19:00 peak
    double load_noise = 0.05;    ///< relative
};

bool is_daylight(const SynthProfile& profile, int hour) noexcept;
bool is_peak_hour(int hour) noexcept;
bool is_valley_hour(int hour) noexcept;

/// Deterministic in (seed, slots, profile).
TraceSet synth_traces(std::uint64_t seed, std::size_t slots, const SynthProfile& profile);

} // namespace megsched
