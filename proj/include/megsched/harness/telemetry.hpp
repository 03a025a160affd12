#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "megsched/coordinator/horizon.hpp"
#include "megsched/harness/metrics.hpp"

namespace megsched {

// All writers print numbers in shortest round-trip form, so re-reading a file
// reproduces the in-memory values exactly.

/// One row per slot: cost, iterations, multipliers, storage levels, projection figures.
void write_telemetry_csv(std::ostream& out, const ScheduleResult& r);
void write_telemetry_json(std::ostream& out, const ScheduleResult& r);

void write_costs_csv(std::ostream& out, const ScheduleResult& r);
void write_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& cdf);

/// Executed dispatch per slot, with the purchase price for context.
void write_dispatch_csv(std::ostream& out, const ScheduleResult& r, const TraceSet& traces);

struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;  ///< throws ParseError if absent
};

/// Reads a header plus all-numeric rows. Throws ParseError with row/column.
NumericTable read_numeric_csv(std::istream& in);

} // namespace megsched
