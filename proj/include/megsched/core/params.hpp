#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "megsched/core/carrier.hpp"

namespace megsched {

// Units: energy in MWh per one-hour slot, prices in CNY/kWh. Money computed
// from these is therefore in thousands of CNY.

/// Device parameters of one multi-energy generation plant (MEGP).
/// Defaults reproduce the benchmark plant: 35% CHP, 80% boiler, 98% storage,
/// 4 MWh battery and tank, 1 MWh/slot charge and discharge rates.
struct MegpParams {
    double eta_charge_e = 0.98;
    double eta_discharge_e = 0.98;
    double eta_charge_h = 0.98;
    double eta_discharge_h = 0.98;
    double eta_chp_e = 0.35;
    double eta_chp_h = 0.35;
    double eta_boiler = 0.80;

    double battery_min = 0.0;
    double battery_max = 4.0;
    double tank_min = 0.0;
    double tank_max = 4.0;

    double charge_e_max = 1.0;
    double discharge_e_max = 1.0;
    double charge_h_max = 1.0;
    double discharge_h_max = 1.0;

    double chp_e_max = 1.0;
    double chp_h_max = 1.0;
    double boiler_h_max = 1.5;

    /// Per-carrier availability cap on the plant's declared supply.
    CarrierVector supply_max{{4.0, 3.0, 2.0}};
};

/// Stored electricity (battery) and heat (water tank).
struct MegpState {
    double battery = 0.0;
    double tank = 0.0;
};

/// Factory with an inelastic electricity load that may be curtailed for an incentive.
struct UserParams {
    double unsatisfaction = 1.0;   ///< a_i, quadratic discomfort coefficient
    double curtail_ratio = 0.15;   ///< maximum curtailable fraction of the load
    double served_value = 0.1;     ///< linear revenue per served MWh of inelastic load
    std::vector<std::size_t> suppliers;  ///< MEGP indices able to serve this user
};

/// Elastic load served by one MEGP with concave utility alpha*x - beta*x^2.
struct ElasticLoadParams {
    Carrier carrier = Carrier::Electricity;
    double alpha = 1.0;
    double beta = 0.5;
    double max = 1.0;
    std::size_t megp = 0;
};

struct ParkParams {
    double import_max = 6.0;   ///< park electricity purchase cap per slot
    double gas_max = 10.0;     ///< park gas purchase cap per slot
    double export_max = 3.0;   ///< park electricity sale cap per slot
    std::vector<MegpParams> megps;
    std::vector<UserParams> users;
    std::vector<ElasticLoadParams> elastic_loads;
};

/// Exogenous data of one slot.
struct SlotExogenous {
    double price_e = 0.0;  ///< purchase price of electricity
    double price_o = 0.0;  ///< sale price of electricity
    double price_g = 0.0;  ///< purchase price of gas
    std::vector<double> renewable;  ///< per MEGP
    std::vector<double> load;       ///< inelastic electricity load per user
    /// Optional per-load override of the elastic utility slope; empty means use params.
    std::vector<double> elastic_alpha;
};

/// Effective linear utility coefficient of elastic load q in this slot.
inline double elastic_alpha(const ParkParams& park, const SlotExogenous& exo, std::size_t q) {
    return exo.elastic_alpha.empty() ? park.elastic_loads[q].alpha : exo.elastic_alpha[q];
}

// Validation returns every violated invariant as a human-readable line, so
// callers can list them all. require_valid throws ValidationError on the first set.
std::vector<std::string> validate(const MegpParams& p, const std::string& where = "megp");
std::vector<std::string> validate(const MegpState& s, const MegpParams& p, const std::string& where = "state");
std::vector<std::string> validate(const UserParams& u, std::size_t megp_count, const std::string& where = "user");
std::vector<std::string> validate(const ElasticLoadParams& q, std::size_t megp_count, const std::string& where = "elastic");
std::vector<std::string> validate(const ParkParams& park);
std::vector<std::string> validate(const SlotExogenous& exo, const ParkParams& park, const std::string& where = "slot");

void require_valid(const std::vector<std::string>& violations);

} // namespace megsched
