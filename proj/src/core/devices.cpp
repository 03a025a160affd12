#include "megsched/core/devices.hpp"

#include <cmath>
#include <string>

#include "megsched/core/error.hpp"

namespace megsched {
namespace {

void check_rate(const char* name, double v, double cap) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError(std::string(name) + " must be >= 0");
    if (v > cap) throw ValidationError(std::string(name) + " exceeds its cap");
}

} // namespace

MegpState storage_step(const MegpState& s, const MegpParams& p, const StorageRates& r) {
    check_rate("charge_e", r.charge_e, p.charge_e_max);
    check_rate("discharge_e", r.discharge_e, p.discharge_e_max);
    check_rate("charge_h", r.charge_h, p.charge_h_max);
    check_rate("discharge_h", r.discharge_h, p.discharge_h_max);
    return {
        s.battery + p.eta_charge_e * r.charge_e - r.discharge_e / p.eta_discharge_e,
        s.tank + p.eta_charge_h * r.charge_h - r.discharge_h / p.eta_discharge_h,
    };
}

ChpOutput chp_output(const MegpParams& p, double gas) {
    if (!std::isfinite(gas) || gas < 0.0) throw ValidationError("CHP gas input must be >= 0");
    ChpOutput out{p.eta_chp_e * gas, p.eta_chp_h * gas};
    if (out.electricity > p.chp_e_max) throw ValidationError("CHP electricity output exceeds chp_e_max");
    if (out.heat > p.chp_h_max) throw ValidationError("CHP heat output exceeds chp_h_max");
    return out;
}

double boiler_output(const MegpParams& p, double gas) {
    if (!std::isfinite(gas) || gas < 0.0) throw ValidationError("boiler gas input must be >= 0");
    const double heat = p.eta_boiler * gas;
    if (heat > p.boiler_h_max) throw ValidationError("boiler heat output exceeds boiler_h_max");
    return heat;
}

double optimal_curtailment(const UserParams& user, double load, double price) {
    const double upper = 2.0 * user.unsatisfaction * user.curtail_ratio * load;
    if (!std::isfinite(price) || price < 0.0 || price > upper)
        throw ValidationError("incentive price outside [0, 2*a*ratio*load]");
    return price / (2.0 * user.unsatisfaction);
}

} // namespace megsched
