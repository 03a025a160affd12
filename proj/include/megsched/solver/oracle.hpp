#pragma once

#include <cstddef>

#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"
#include "megsched/solver/allocation.hpp"
#include "megsched/solver/multipliers.hpp"

namespace megsched {

struct OracleResult {
    double objective = 0.0;
    SlotDecision decision;
    std::size_t points = 0;  ///< grid points evaluated
};

/// Brute-force reference for solve_subproblem: enumerates every feasible point
/// of a grid with spacing `grid_step` (box endpoints always included) and
/// returns the best one. Plants are enumerated independently and joined under
/// the park trade caps; users and elastic loads are enumerated separately
/// since nothing couples them once the multipliers are fixed.
/// Throws ValidationError when the plant grids exceed `max_points`.
OracleResult oracle_subproblem(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                               double grid_step, const SubproblemOptions& opts = {},
                               std::size_t max_points = 100'000'000);

/// Grid over [0, upper]: 0, h, 2h, ... plus `upper` itself.
std::vector<double> box_grid(double upper, double step);

} // namespace megsched
