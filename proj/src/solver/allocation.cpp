#include "megsched/solver/allocation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "megsched/core/devices.hpp"
#include "megsched/core/error.hpp"
#include "megsched/solver/knapsack.hpp"
#include "megsched/solver/marginal_costs.hpp"

namespace megsched {
namespace {

// Fixed tie-break rank of plant variables.
enum Rank : int { kChp, kBoiler, kDischarge, kImport, kRenewable, kCharge, kExport };

constexpr double kCapTol = 1e-12;
constexpr int kBisectionSteps = 200;

double safe_div(double num, double den) {
    return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

struct PlantProblem {
    const MegpParams& p;
    MarginalCosts cost;
    double smoothing;
    double renewable;
    TradeCaps caps;

    double chp_cap() const {
        return std::min({safe_div(p.chp_e_max, p.eta_chp_e), safe_div(p.chp_h_max, p.eta_chp_h), caps.gas});
    }
    double boiler_cap() const { return std::min(safe_div(p.boiler_h_max, p.eta_boiler), caps.gas); }
    double gas_load_cap() const { return std::min(p.supply_max[Carrier::Gas], caps.gas); }

    std::array<KnapsackItem, 5> electricity_items() const {
        return {{
            {cost.discharge_e, 1.0, p.discharge_e_max, kDischarge},
            {cost.import_e, 1.0, caps.import_e, kImport},
            {cost.renewable, 1.0, renewable, kRenewable},
            {cost.charge_e, -1.0, p.charge_e_max, kCharge},
            {cost.export_e, -1.0, caps.export_e, kExport},
        }};
    }
    std::array<KnapsackItem, 3> heat_items(double boiler_cost) const {
        return {{
            {boiler_cost, p.eta_boiler, boiler_cap(), kBoiler},
            {cost.discharge_h, 1.0, p.discharge_h_max, kDischarge},
            {cost.charge_h, -1.0, p.charge_h_max, kCharge},
        }};
    }

    double box_response(double c, double cap) const {
        if (smoothing > 0.0) return std::clamp(-c / smoothing, 0.0, cap);
        return c < 0.0 && cap > 0.0 ? cap : 0.0;
    }

    // Solves the plant problem with an extra price `gas_penalty` on every unit of gas bought.
    MegpDispatch solve(double gas_penalty) const {
        const double c_chp = cost.chp + gas_penalty;
        const double c_boiler = cost.boiler + gas_penalty;
        const double x_e = p.supply_max[Carrier::Electricity];
        const double x_h = p.supply_max[Carrier::Heat];
        const auto e_items = electricity_items();
        const auto h_items = heat_items(c_boiler);

        // CHP output is the only variable shared by the electricity and heat
        // balances. For fixed CHP gas g both balances are independent
        // knapsacks; the optimal value is convex in g with subgradient below.
        const double g_max = std::min({chp_cap(), safe_div(x_e + p.charge_e_max + caps.export_e, p.eta_chp_e),
                                       safe_div(x_h + p.charge_h_max, p.eta_chp_h)});
        auto subgradient = [&](double g) {
            const auto e = solve_knapsack(e_items, p.eta_chp_e * g, 0.0, x_e, smoothing);
            const auto h = solve_knapsack(h_items, p.eta_chp_h * g, 0.0, x_h, smoothing);
            return c_chp + smoothing * g + p.eta_chp_e * e.multiplier + p.eta_chp_h * h.multiplier;
        };

        double g = 0.0;
        if (g_max > 0.0 && subgradient(0.0) < 0.0) {
            if (subgradient(g_max) < 0.0) {
                g = g_max;
            } else {
                double lo = 0.0, hi = g_max;
                for (int i = 0; i < kBisectionSteps && hi - lo > 1e-15 * g_max; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    (subgradient(mid) < 0.0 ? lo : hi) = mid;
                }
                g = hi;
            }
        }

        const auto e = solve_knapsack(e_items, p.eta_chp_e * g, 0.0, x_e, smoothing);
        const auto h = solve_knapsack(h_items, p.eta_chp_h * g, 0.0, x_h, smoothing);

        MegpDispatch d;
        d.chp_gas = g;
        d.discharge_e = e.values[0];
        d.import_e = e.values[1];
        d.renewable_used = e.values[2];
        d.charge_e = e.values[3];
        d.export_e = e.values[4];
        d.boiler_gas = h.values[0];
        d.discharge_h = h.values[1];
        d.charge_h = h.values[2];
        d.gas_to_loads = box_response(cost.gas_to_loads + gas_penalty, gas_load_cap());
        d.supply = implied_supply(p, d);
        return d;
    }
};

} // namespace

MegpDispatch solve_megp(const MegpParams& params, const SlotExogenous& exo, const Multipliers& mult, std::size_t k,
                        const TradeCaps& caps, const SubproblemOptions& opts) {
    if (!mult.finite() || !std::isfinite(exo.price_e) || !std::isfinite(exo.price_g) || !std::isfinite(exo.price_o))
        throw ValidationError("multipliers and prices must be finite");
    const PlantProblem problem{params, marginal_costs(params, exo, mult, k), opts.smoothing, exo.renewable[k], caps};

    auto d = problem.solve(0.0);
    if (d.gas_import() <= caps.gas + kCapTol) return d;

    // Gas cap binds: price it with the smallest penalty that restores it.
    double hi = 1.0;
    for (int i = 0; i < 64 && problem.solve(hi).gas_import() > caps.gas + kCapTol; ++i) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < kBisectionSteps && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (problem.solve(mid).gas_import() > caps.gas + kCapTol ? lo : hi) = mid;
    }
    return problem.solve(hi);
}

UserResponse solve_user(const UserParams& user, double load, std::span<const CarrierVector> tau) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < user.suppliers.size(); ++j) {
        const double tj = tau[user.suppliers[j]][Carrier::Electricity];
        const double tb = tau[user.suppliers[best]][Carrier::Electricity];
        if (tj < tb || (tj == tb && user.suppliers[j] < user.suppliers[best])) best = j;
    }
    const double t = tau[user.suppliers[best]][Carrier::Electricity];
    UserResponse r;
    r.curtailed = std::clamp((t - user.served_value) / (4.0 * user.unsatisfaction), 0.0, user.curtail_ratio * load);
    r.supplied.assign(user.suppliers.size(), 0.0);
    r.supplied[best] = load - r.curtailed;
    return r;
}

double solve_elastic(const ElasticLoadParams& load, double alpha, double tau) {
    return std::clamp((alpha - tau) / (2.0 * load.beta), 0.0, load.max);
}

SlotDecision solve_subproblem(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                              const SubproblemOptions& opts) {
    const auto K = park.megps.size();
    SlotDecision d = SlotDecision::zero(park);
    std::vector<TradeCaps> caps(K, TradeCaps{park.import_max, park.export_max, park.gas_max});

    // Per-plant problems see the park caps. If a park sum overshoots, every
    // plant's cap on that trade is scaled to its proportional share and the
    // plants are re-solved; caps only shrink, so this settles in a few rounds.
    for (int round = 0;; ++round) {
        for (std::size_t k = 0; k < K; ++k) d.megps[k] = solve_megp(park.megps[k], exo, mult, k, caps[k], opts);
        const auto t = [&] {
            double ie = 0, ee = 0, ig = 0;
            for (const auto& m : d.megps) {
                ie += m.import_e;
                ee += m.export_e;
                ig += m.gas_import();
            }
            return std::array<double, 3>{ie, ee, ig};
        }();
        const bool over_import = t[0] > park.import_max + kCapTol;
        const bool over_export = t[1] > park.export_max + kCapTol;
        const bool over_gas = t[2] > park.gas_max + kCapTol;
        if (!over_import && !over_export && !over_gas) break;
        if (round == 8) throw InfeasibleError("park trade caps could not be met by proportional scaling");
        for (std::size_t k = 0; k < K; ++k) {
            if (over_import) caps[k].import_e = d.megps[k].import_e * (park.import_max / t[0]);
            if (over_export) caps[k].export_e = d.megps[k].export_e * (park.export_max / t[1]);
            if (over_gas) caps[k].gas = d.megps[k].gas_import() * (park.gas_max / t[2]);
        }
    }

    for (std::size_t i = 0; i < park.users.size(); ++i) {
        auto r = solve_user(park.users[i], exo.load[i], mult.tau);
        d.users[i].curtailed = r.curtailed;
        d.users[i].supplied = std::move(r.supplied);
    }
    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q) {
        const auto& el = park.elastic_loads[q];
        d.elastic[q] = solve_elastic(el, elastic_alpha(park, exo, q), mult.tau[el.megp][el.carrier]);
    }
    return d;
}

double subproblem_objective(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                            const SlotDecision& d, const SubproblemOptions& opts) {
    double obj = 0.0;
    for (std::size_t k = 0; k < park.megps.size(); ++k) {
        const auto& m = d.megps[k];
        const auto supply = implied_supply(park.megps[k], m);
        obj += exo.price_e * m.import_e + exo.price_g * m.gas_import() - exo.price_o * m.export_e;
        obj += mult.lambda_e[k] * (m.charge_e - m.discharge_e) + mult.lambda_h[k] * (m.charge_h - m.discharge_h);
        for (auto c : kCarriers) obj -= mult.tau[k][c] * supply[c];
        const double sq = m.charge_e * m.charge_e + m.discharge_e * m.discharge_e + m.charge_h * m.charge_h +
                          m.discharge_h * m.discharge_h + m.chp_gas * m.chp_gas + m.boiler_gas * m.boiler_gas +
                          m.import_e * m.import_e + m.export_e * m.export_e + m.gas_to_loads * m.gas_to_loads +
                          m.renewable_used * m.renewable_used;
        obj += 0.5 * opts.smoothing * sq;
    }
    for (std::size_t i = 0; i < park.users.size(); ++i) {
        const auto& user = park.users[i];
        const auto& u = d.users[i];
        obj += incentive_price(user, u.curtailed) * u.curtailed - user.served_value * (exo.load[i] - u.curtailed);
        for (std::size_t j = 0; j < user.suppliers.size(); ++j)
            obj += mult.tau[user.suppliers[j]][Carrier::Electricity] * u.supplied[j];
    }
    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q) {
        const auto& el = park.elastic_loads[q];
        const double x = d.elastic[q];
        obj += mult.tau[el.megp][el.carrier] * x - (elastic_alpha(park, exo, q) * x - el.beta * x * x);
    }
    return obj;
}

} // namespace megsched
