#pragma once

#include "megsched/core/params.hpp"

namespace megsched {

struct StorageRates {
    double charge_e = 0.0;
    double discharge_e = 0.0;
    double charge_h = 0.0;
    double discharge_h = 0.0;
};

/// Advances battery and tank by one slot. Rates outside [0, cap] throw
/// ValidationError; the resulting levels are not clamped.
MegpState storage_step(const MegpState& state, const MegpParams& params, const StorageRates& rates);

struct ChpOutput {
    double electricity = 0.0;
    double heat = 0.0;
};

/// Electricity and heat from burning `gas` in the CHP unit. Throws
/// ValidationError on negative fuel or when either output exceeds its cap.
ChpOutput chp_output(const MegpParams& params, double gas);

/// Heat from burning `gas` in the boiler, bounded by the boiler cap.
double boiler_output(const MegpParams& params, double gas);

/// A user's best response to incentive price `price`: the curtailment that
/// maximises price*x - a*x^2 over [0, ratio*load]. The price must lie in
/// [0, 2*a*ratio*load], where the answer is price/(2a).
double optimal_curtailment(const UserParams& user, double load, double price);

/// Incentive price that makes `curtailed` the user's best response.
inline double incentive_price(const UserParams& user, double curtailed) noexcept {
    return 2.0 * user.unsatisfaction * curtailed;
}

} // namespace megsched
