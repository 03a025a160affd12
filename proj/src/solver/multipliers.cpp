#include "megsched/solver/multipliers.hpp"
#include "megsched/solver/marginal_costs.hpp"

#include <algorithm>
#include <cmath>

namespace megsched {

bool Multipliers::finite() const noexcept {
    auto ok = [](double v) { return std::isfinite(v); };
    if (!std::all_of(lambda_e.begin(), lambda_e.end(), ok)) return false;
    if (!std::all_of(lambda_h.begin(), lambda_h.end(), ok)) return false;
    for (const auto& t : tau)
        if (!std::all_of(t.values.begin(), t.values.end(), ok)) return false;
    return true;
}

double tau_distance(const std::vector<CarrierVector>& a, const std::vector<CarrierVector>& b) noexcept {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, (a[k] - b[k]).max_abs());
    return d;
}

MarginalCosts marginal_costs(const MegpParams& p, const SlotExogenous& exo, const Multipliers& mult,
                             std::size_t k) noexcept {
    const auto& tau = mult.tau[k];
    const double te = tau[Carrier::Electricity];
    const double th = tau[Carrier::Heat];
    const double tg = tau[Carrier::Gas];
    const double le = mult.lambda_e[k];
    const double lh = mult.lambda_h[k];

    MarginalCosts c;
    c.chp = exo.price_g - te * p.eta_chp_e - th * p.eta_chp_h;
    c.boiler = exo.price_g - th * p.eta_boiler;
    c.charge_e = le + te;
    c.discharge_e = -(le + te);
    c.charge_h = lh + th;
    c.discharge_h = -(lh + th);
    c.import_e = exo.price_e - te;
    c.export_e = te - exo.price_o;
    c.gas_to_loads = exo.price_g - tg;
    c.renewable = -te;
    return c;
}

} // namespace megsched
