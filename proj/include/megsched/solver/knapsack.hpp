#pragma once

#include <span>
#include <vector>

namespace megsched {

/// One bounded variable of a single-carrier balance: it costs `cost` per unit,
/// lies in [0, cap], and moves the carrier total by `weight` per unit.
struct KnapsackItem {
    double cost = 0.0;
    double weight = 1.0;
    double cap = 0.0;
    int order = 0;  ///< tie-break rank among items with equal marginal cost
};

struct KnapsackResult {
    std::vector<double> values;
    /// Multiplier of the balance constraint: derivative of the optimal value
    /// with respect to `offset`. Positive when the upper bound binds.
    double multiplier = 0.0;
    double objective = 0.0;
    double total = 0.0;  ///< offset + sum(weight * value)
};

/// Minimises sum(cost*v + smoothing/2 * v^2) over v in the item boxes subject to
/// lo <= offset + sum(weight*v) <= hi.
///
/// With smoothing == 0 this is the continuous knapsack: every item starts at
/// its box extreme by cost sign (zero on ties) and, if the total leaves
/// [lo, hi], items are evicted or filled in order of marginal cost per unit of
/// carrier until the violated bound is met exactly. Evictions precede fills at
/// equal marginal cost, then lower `order`, then lower position.
/// With smoothing > 0 the same multiplier search runs on the piecewise-linear
/// response v(m) = clamp(-(cost + m*weight)/smoothing, 0, cap).
///
/// Throws InfeasibleError naming the bound that cannot be reached.
KnapsackResult solve_knapsack(std::span<const KnapsackItem> items, double offset, double lo, double hi,
                              double smoothing);

} // namespace megsched
