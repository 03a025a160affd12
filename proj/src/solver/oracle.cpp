#include "megsched/solver/oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "megsched/core/error.hpp"

namespace megsched {
namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

using TradeKey = std::array<long long, 3>;

TradeKey key_of(double import_e, double export_e, double gas) {
    return {std::llround(import_e * 1e9), std::llround(export_e * 1e9), std::llround(gas * 1e9)};
}

struct PlantEntry {
    double objective = kInf;
    MegpDispatch dispatch;
    double import_e = 0.0, export_e = 0.0, gas = 0.0;
};

double cap_div(double a, double b) { return b > 0.0 ? a / b : kInf; }

std::map<TradeKey, PlantEntry> enumerate_plant(const ParkParams& park, const SlotExogenous& exo,
                                               const Multipliers& mult, std::size_t k, double h,
                                               double smoothing, std::size_t& points) {
    const auto& p = park.megps[k];
    const auto g_grid = box_grid(std::min({cap_div(p.chp_e_max, p.eta_chp_e), cap_div(p.chp_h_max, p.eta_chp_h),
                                           park.gas_max}), h);
    const auto b_grid = box_grid(std::min(cap_div(p.boiler_h_max, p.eta_boiler), park.gas_max), h);
    const auto ce_grid = box_grid(p.charge_e_max, h);
    const auto de_grid = box_grid(p.discharge_e_max, h);
    const auto ch_grid = box_grid(p.charge_h_max, h);
    const auto dh_grid = box_grid(p.discharge_h_max, h);
    const auto im_grid = box_grid(park.import_max, h);
    const auto ex_grid = box_grid(park.export_max, h);
    const auto r_grid = box_grid(exo.renewable[k], h);
    const auto xg_grid = box_grid(std::min(p.supply_max[Carrier::Gas], park.gas_max), h);

    const double te = mult.tau[k][Carrier::Electricity];
    const double th = mult.tau[k][Carrier::Heat];
    const double tg = mult.tau[k][Carrier::Gas];
    const double le = mult.lambda_e[k];
    const double lh = mult.lambda_h[k];
    const double xe_max = p.supply_max[Carrier::Electricity];
    const double xh_max = p.supply_max[Carrier::Heat];

    std::map<TradeKey, PlantEntry> best;
    for (double g : g_grid)
    for (double b : b_grid)
    for (double ch : ch_grid)
    for (double dh : dh_grid) {
        const double heat = p.eta_chp_h * g + p.eta_boiler * b + dh - ch;
        points += ce_grid.size() * de_grid.size() * im_grid.size() * ex_grid.size() * r_grid.size() * xg_grid.size();
        if (heat < -kTol || heat > xh_max + kTol) continue;
        const double heat_part = lh * (ch - dh) - th * heat;
        for (double xg : xg_grid) {
            const double gas = g + b + xg;
            if (gas > park.gas_max + kTol) continue;
            const double gas_part = exo.price_g * gas - tg * xg;
            for (double ce : ce_grid)
            for (double de : de_grid)
            for (double im : im_grid)
            for (double ex : ex_grid)
            for (double r : r_grid) {
                const double elec = p.eta_chp_e * g + de - ce + r + im - ex;
                if (elec < -kTol || elec > xe_max + kTol) continue;
                double obj = exo.price_e * im - exo.price_o * ex + le * (ce - de) - te * elec + heat_part + gas_part;
                if (smoothing > 0.0) {
                    obj += 0.5 * smoothing *
                           (g * g + b * b + ce * ce + de * de + ch * ch + dh * dh + im * im + ex * ex + r * r + xg * xg);
                }
                auto& e = best[key_of(im, ex, gas)];
                if (obj < e.objective) {
                    e.objective = obj;
                    e.import_e = im;
                    e.export_e = ex;
                    e.gas = gas;
                    auto& d = e.dispatch;
                    d.chp_gas = g;
                    d.boiler_gas = b;
                    d.charge_e = ce;
                    d.discharge_e = de;
                    d.charge_h = ch;
                    d.discharge_h = dh;
                    d.import_e = im;
                    d.export_e = ex;
                    d.renewable_used = r;
                    d.gas_to_loads = xg;
                    d.supply[Carrier::Electricity] = elec;
                    d.supply[Carrier::Heat] = heat;
                    d.supply[Carrier::Gas] = xg;
                }
            }
        }
    }
    return best;
}

struct Joint {
    double objective = kInf;
    double import_e = 0.0, export_e = 0.0, gas = 0.0;
    std::vector<MegpDispatch> plants;
};

} // namespace

std::vector<double> box_grid(double upper, double step) {
    if (!(step > 0.0)) throw ValidationError("grid step must be > 0");
    std::vector<double> g;
    if (!(upper > 0.0)) return {0.0};
    const auto n = static_cast<std::size_t>(std::floor(upper / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) g.push_back(std::min(upper, static_cast<double>(i) * step));
    if (upper - g.back() > 1e-12) g.push_back(upper);
    return g;
}

OracleResult oracle_subproblem(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                               double h, const SubproblemOptions& opts, std::size_t max_points) {
    // Size check before any work.
    double estimate = 0.0;
    for (std::size_t k = 0; k < park.megps.size(); ++k) {
        const auto& p = park.megps[k];
        double n = 1.0;
        for (double u : {std::min({cap_div(p.chp_e_max, p.eta_chp_e), cap_div(p.chp_h_max, p.eta_chp_h), park.gas_max}),
                         std::min(cap_div(p.boiler_h_max, p.eta_boiler), park.gas_max), p.charge_e_max,
                         p.discharge_e_max, p.charge_h_max, p.discharge_h_max, park.import_max, park.export_max,
                         exo.renewable[k], std::min(p.supply_max[Carrier::Gas], park.gas_max)})
            n *= static_cast<double>(box_grid(u, h).size());
        estimate += n;
    }
    if (estimate > static_cast<double>(max_points))
        throw ValidationError("oracle instance too large: " + std::to_string(estimate) + " grid points");

    OracleResult out;
    out.decision = SlotDecision::zero(park);

    // Plants, joined under the park trade caps.
    std::map<TradeKey, Joint> joint;
    joint[key_of(0, 0, 0)] = Joint{0.0, 0.0, 0.0, 0.0, {}};
    for (std::size_t k = 0; k < park.megps.size(); ++k) {
        const auto plant = enumerate_plant(park, exo, mult, k, h, opts.smoothing, out.points);
        std::map<TradeKey, Joint> next;
        for (const auto& [jk, j] : joint) {
            for (const auto& [pk, e] : plant) {
                const double ie = j.import_e + e.import_e;
                const double ee = j.export_e + e.export_e;
                const double ig = j.gas + e.gas;
                if (ie > park.import_max + kTol || ee > park.export_max + kTol || ig > park.gas_max + kTol) continue;
                auto& slot = next[key_of(ie, ee, ig)];
                const double obj = j.objective + e.objective;
                if (obj < slot.objective) {
                    slot.objective = obj;
                    slot.import_e = ie;
                    slot.export_e = ee;
                    slot.gas = ig;
                    slot.plants = j.plants;
                    slot.plants.push_back(e.dispatch);
                }
            }
        }
        joint = std::move(next);
    }
    const Joint* best = nullptr;
    for (const auto& [key, j] : joint)
        if (!best || j.objective < best->objective) best = &j;
    if (!best || best->plants.size() != park.megps.size()) throw InfeasibleError("oracle found no feasible plant grid point");
    out.objective = best->objective;
    out.decision.megps = best->plants;

    // Users: curtailment grid times allocation grid over the supplier set.
    for (std::size_t i = 0; i < park.users.size(); ++i) {
        const auto& user = park.users[i];
        const double load = exo.load[i];
        double user_best = kInf;
        UserDispatch chosen;
        std::vector<double> split(user.suppliers.size(), 0.0);
        for (double r : box_grid(user.curtail_ratio * load, h)) {
            const double served = load - r;
            const double base = 2.0 * user.unsatisfaction * r * r - user.served_value * served;
            // Enumerate splits recursively; the last supplier takes the remainder.
            auto recurse = [&](auto&& self, std::size_t j, double left, double acc) -> void {
                const double tj = mult.tau[user.suppliers[j]][Carrier::Electricity];
                if (j + 1 == user.suppliers.size()) {
                    split[j] = left;
                    const double obj = base + acc + tj * left;
                    ++out.points;
                    if (obj < user_best) {
                        user_best = obj;
                        chosen.curtailed = r;
                        chosen.supplied = split;
                    }
                    return;
                }
                for (double x : box_grid(left, h)) {
                    split[j] = x;
                    self(self, j + 1, left - x, acc + tj * x);
                }
            };
            recurse(recurse, 0, served, 0.0);
        }
        out.objective += user_best;
        out.decision.users[i] = chosen;
    }

    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q) {
        const auto& el = park.elastic_loads[q];
        const double alpha = exo.elastic_alpha.empty() ? el.alpha : exo.elastic_alpha[q];
        const double tau = mult.tau[el.megp][el.carrier];
        double el_best = kInf;
        for (double x : box_grid(el.max, h)) {
            ++out.points;
            const double obj = tau * x - (alpha * x - el.beta * x * x);
            if (obj < el_best) {
                el_best = obj;
                out.decision.elastic[q] = x;
            }
        }
        out.objective += el_best;
    }
    return out;
}

} // namespace megsched
