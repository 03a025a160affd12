#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"
#include "megsched/solver/allocation.hpp"
#include "megsched/solver/marginal_costs.hpp"
#include "megsched/solver/multipliers.hpp"

namespace megsched::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Multiple of `step` drawn from {0, step, ..., n*step}.
inline double grid_cap(std::mt19937_64& rng, int n, double step = 0.05) {
    return step * std::uniform_int_distribution<int>(0, n)(rng);
}

/// Park small enough for the brute-force oracle: one or two plants with caps of
/// at most a few grid steps, two users and one elastic load.
inline ParkParams small_park(std::mt19937_64& rng) {
    ParkParams park;
    const std::size_t K = std::uniform_int_distribution<int>(1, 2)(rng);
    park.import_max = grid_cap(rng, 3);
    park.export_max = grid_cap(rng, 2);
    park.gas_max = grid_cap(rng, 4);
    for (std::size_t k = 0; k < K; ++k) {
        MegpParams p;
        p.eta_charge_e = uniform(rng, 0.8, 1.0);
        p.eta_discharge_e = uniform(rng, 0.8, 1.0);
        p.eta_charge_h = uniform(rng, 0.8, 1.0);
        p.eta_discharge_h = uniform(rng, 0.8, 1.0);
        p.eta_chp_e = uniform(rng, 0.3, 0.5);
        p.eta_chp_h = uniform(rng, 0.3, 0.5);
        p.eta_boiler = uniform(rng, 0.6, 0.9);
        p.charge_e_max = grid_cap(rng, 2);
        p.discharge_e_max = grid_cap(rng, 2);
        p.charge_h_max = grid_cap(rng, 2);
        p.discharge_h_max = grid_cap(rng, 2);
        p.chp_e_max = grid_cap(rng, 1);
        p.chp_h_max = grid_cap(rng, 1);
        p.boiler_h_max = grid_cap(rng, 1);
        p.supply_max = CarrierVector{{grid_cap(rng, 4, 0.1) + 0.05, grid_cap(rng, 3, 0.1) + 0.05, grid_cap(rng, 2)}};
        park.megps.push_back(p);
    }
    for (int i = 0; i < 2; ++i) {
        UserParams u;
        u.unsatisfaction = uniform(rng, 0.5, 2.0);
        u.curtail_ratio = uniform(rng, 0.0, 0.3);
        u.served_value = uniform(rng, 0.0, 0.5);
        u.suppliers = {static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(K) - 1)(rng))};
        if (K == 2 && i == 1) u.suppliers = {0, 1};
        park.users.push_back(u);
    }
    ElasticLoadParams q;
    q.carrier = kCarriers[std::uniform_int_distribution<int>(0, 2)(rng)];
    q.alpha = uniform(rng, 0.0, 1.5);
    q.beta = uniform(rng, 0.2, 1.0);
    q.max = grid_cap(rng, 4);
    q.megp = std::uniform_int_distribution<std::size_t>(0, K - 1)(rng);
    park.elastic_loads.push_back(q);
    return park;
}

inline SlotExogenous random_exo(std::mt19937_64& rng, const ParkParams& park, double renewable_max = 0.1) {
    SlotExogenous exo;
    exo.price_e = uniform(rng, 0.3, 1.1);
    exo.price_o = uniform(rng, 0.0, exo.price_e);
    exo.price_g = uniform(rng, 0.2, 0.6);
    for (std::size_t k = 0; k < park.megps.size(); ++k)
        exo.renewable.push_back(renewable_max > 0.0 ? std::round(uniform(rng, 0.0, renewable_max) / 0.05) * 0.05 : 0.0);
    for (std::size_t i = 0; i < park.users.size(); ++i) exo.load.push_back(uniform(rng, 0.0, 1.0));
    return exo;
}

inline Multipliers random_mult(std::mt19937_64& rng, std::size_t K, double lo = -1.0, double hi = 1.0) {
    auto m = Multipliers::zeros(K);
    for (std::size_t k = 0; k < K; ++k) {
        m.lambda_e[k] = uniform(rng, lo, hi);
        m.lambda_h[k] = uniform(rng, lo, hi);
        for (auto c : kCarriers) m.tau[k][c] = uniform(rng, lo, hi);
    }
    return m;
}

/// Sum of objective slopes over every decision box: bounds how much rounding
/// each variable to the grid can move the objective, per unit of grid step.
inline double lipschitz_bound(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                              const SubproblemOptions& opts) {
    double L = 0.0;
    for (std::size_t k = 0; k < park.megps.size(); ++k) {
        const auto& p = park.megps[k];
        const auto mc = marginal_costs(p, exo, mult, k);
        const double mu = opts.smoothing;
        const double g_cap = std::min(p.chp_e_max / p.eta_chp_e, p.chp_h_max / p.eta_chp_h);
        const double b_cap = p.boiler_h_max / p.eta_boiler;
        const std::pair<double, double> terms[] = {
            {mc.chp, g_cap},           {mc.boiler, b_cap},         {mc.charge_e, p.charge_e_max},
            {mc.discharge_e, p.discharge_e_max}, {mc.charge_h, p.charge_h_max}, {mc.discharge_h, p.discharge_h_max},
            {mc.import_e, park.import_max}, {mc.export_e, park.export_max}, {mc.gas_to_loads, p.supply_max[Carrier::Gas]},
            {mc.renewable, exo.renewable[k]}};
        for (const auto& [c, cap] : terms) L += std::abs(c) + mu * cap;
    }
    for (std::size_t i = 0; i < park.users.size(); ++i) {
        const auto& u = park.users[i];
        double tmax = 0.0;
        for (auto k : u.suppliers) tmax = std::max(tmax, std::abs(mult.tau[k][Carrier::Electricity]));
        L += tmax + u.served_value + 4.0 * u.unsatisfaction * u.curtail_ratio * exo.load[i];
    }
    for (const auto& q : park.elastic_loads)
        L += std::abs(q.alpha) + std::abs(mult.tau[q.megp][q.carrier]) + 2.0 * q.beta * q.max;
    return L;
}

/// Largest violation of any box, cap or balance in a solver output.
inline double constraint_violation(const ParkParams& park, const SlotExogenous& exo, const SlotDecision& d) {
    double v = 0.0;
    auto box = [&](double x, double hi) { v = std::max({v, -x, x - hi}); };
    double ie = 0, ee = 0, ig = 0;
    for (std::size_t k = 0; k < park.megps.size(); ++k) {
        const auto& p = park.megps[k];
        const auto& m = d.megps[k];
        box(m.charge_e, p.charge_e_max);
        box(m.discharge_e, p.discharge_e_max);
        box(m.charge_h, p.charge_h_max);
        box(m.discharge_h, p.discharge_h_max);
        box(p.eta_chp_e * m.chp_gas, p.chp_e_max);
        box(p.eta_chp_h * m.chp_gas, p.chp_h_max);
        box(p.eta_boiler * m.boiler_gas, p.boiler_h_max);
        box(m.import_e, park.import_max);
        box(m.export_e, park.export_max);
        box(m.gas_to_loads, p.supply_max[Carrier::Gas]);
        box(m.renewable_used, exo.renewable[k]);
        for (auto c : kCarriers) box(m.supply[c], p.supply_max[c]);
        const auto implied = implied_supply(p, m);
        for (auto c : kCarriers) v = std::max(v, std::abs(implied[c] - m.supply[c]));
        ie += m.import_e;
        ee += m.export_e;
        ig += m.gas_import();
    }
    box(ie, park.import_max);
    box(ee, park.export_max);
    box(ig, park.gas_max);
    for (std::size_t i = 0; i < park.users.size(); ++i) {
        const auto& u = d.users[i];
        box(u.curtailed, park.users[i].curtail_ratio * exo.load[i]);
        double served = 0.0;
        for (double x : u.supplied) {
            v = std::max(v, -x);
            served += x;
        }
        v = std::max(v, std::abs(served + u.curtailed - exo.load[i]));
    }
    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q) box(d.elastic[q], park.elastic_loads[q].max);
    return v;
}

} // namespace megsched::testing
