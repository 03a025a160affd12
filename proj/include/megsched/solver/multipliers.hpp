#pragma once

#include <cstddef>
#include <vector>

#include "megsched/core/carrier.hpp"

namespace megsched {

/// Multipliers seen by the per-micro-slot subproblem.
/// `lambda_e`/`lambda_h` price the long-run charge = discharge balance of each
/// plant's battery and tank; `tau` prices each plant's supply = allocation
/// balance per carrier. Both dualise equalities, so either sign is valid.
struct Multipliers {
    std::vector<double> lambda_e;
    std::vector<double> lambda_h;
    std::vector<CarrierVector> tau;

    static Multipliers zeros(std::size_t megp_count) {
        return {std::vector<double>(megp_count, 0.0), std::vector<double>(megp_count, 0.0),
                std::vector<CarrierVector>(megp_count)};
    }

    bool finite() const noexcept;
};

/// Max-norm distance between two tau vectors of equal shape.
double tau_distance(const std::vector<CarrierVector>& a, const std::vector<CarrierVector>& b) noexcept;

} // namespace megsched
