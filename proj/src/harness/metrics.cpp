#include "megsched/harness/metrics.hpp"

#include <algorithm>

#include "megsched/core/error.hpp"

namespace megsched {

std::vector<CdfPoint> iteration_cdf(std::span<const std::size_t> counts) {
    if (counts.empty()) throw ValidationError("iteration CDF needs at least one slot");
    std::vector<std::size_t> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CdfPoint> cdf;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

std::vector<CdfPoint> iteration_cdf(const ScheduleResult& r) {
    const auto counts = iteration_counts(r);
    return iteration_cdf(counts);
}

double cdf_at(const std::vector<CdfPoint>& cdf, std::size_t n) noexcept {
    double f = 0.0;
    for (const auto& p : cdf) {
        if (p.iterations > n) break;
        f = p.fraction;
    }
    return f;
}

std::vector<std::size_t> iteration_counts(const ScheduleResult& r) {
    std::vector<std::size_t> out;
    out.reserve(r.slots.size());
    for (const auto& s : r.slots) out.push_back(s.iterations);
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double median_iterations(const ScheduleResult& r) {
    std::vector<double> v;
    for (const auto& s : r.slots) v.push_back(static_cast<double>(s.iterations));
    return median(std::move(v));
}

std::array<double, 24> hourly_costs(const ScheduleResult& r) {
    std::array<double, 24> h{};
    for (const auto& s : r.slots) h[s.t % 24] += s.cost;
    return h;
}

std::vector<MeanStorageRates> mean_storage_rates(const ScheduleResult& r) {
    std::vector<MeanStorageRates> out;
    if (r.slots.empty()) return out;
    out.resize(r.slots.front().executed.megps.size());
    for (const auto& s : r.slots)
        for (std::size_t k = 0; k < out.size(); ++k) {
            const auto& m = s.executed.megps[k];
            out[k].charge_e += m.charge_e;
            out[k].discharge_e += m.discharge_e;
            out[k].charge_h += m.charge_h;
            out[k].discharge_h += m.discharge_h;
        }
    const double n = static_cast<double>(r.slots.size());
    for (auto& o : out) {
        o.charge_e /= n;
        o.discharge_e /= n;
        o.charge_h /= n;
        o.discharge_h /= n;
    }
    return out;
}

QuartileRates price_quartile_rates(const ScheduleResult& r, const TraceSet& traces) {
    std::vector<double> prices;
    for (const auto& s : r.slots) prices.push_back(traces.slots[s.t].price_e);
    if (prices.empty()) return {};
    std::vector<double> sorted = prices;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t q = sorted.size() / 4;
    const double low = sorted[q > 0 ? q - 1 : 0];
    const double high = sorted[sorted.size() - 1 - (q > 0 ? q - 1 : 0)];

    QuartileRates out;
    std::size_t n_top = 0, n_bottom = 0;
    for (std::size_t j = 0; j < r.slots.size(); ++j) {
        double c = 0.0, d = 0.0;
        for (const auto& m : r.slots[j].executed.megps) {
            c += m.charge_e;
            d += m.discharge_e;
        }
        if (prices[j] >= high) {
            out.top_charge += c;
            out.top_discharge += d;
            ++n_top;
        }
        if (prices[j] <= low) {
            out.bottom_charge += c;
            out.bottom_discharge += d;
            ++n_bottom;
        }
    }
    if (n_top) {
        out.top_charge /= n_top;
        out.top_discharge /= n_top;
    }
    if (n_bottom) {
        out.bottom_charge /= n_bottom;
        out.bottom_discharge /= n_bottom;
    }
    return out;
}

} // namespace megsched
