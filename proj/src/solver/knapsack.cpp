#include "megsched/solver/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "megsched/core/error.hpp"

namespace megsched {
namespace {

constexpr double kFeasTol = 1e-12;

struct Event {
    double multiplier;  // value of m at which the item switches
    int kind;           // 0 = eviction (item leaves its extreme), 1 = fill
    int order;
    std::size_t index;
};

bool event_before(const Event& a, const Event& b, bool ascending) {
    if (a.multiplier != b.multiplier) return ascending ? a.multiplier < b.multiplier : a.multiplier > b.multiplier;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.order != b.order) return a.order < b.order;
    return a.index < b.index;
}

double finish(std::span<const KnapsackItem> items, KnapsackResult& r, double offset, double smoothing) {
    r.objective = 0.0;
    r.total = offset;
    for (std::size_t j = 0; j < items.size(); ++j) {
        const double v = r.values[j];
        r.objective += items[j].cost * v + 0.5 * smoothing * v * v;
        r.total += items[j].weight * v;
    }
    return r.objective;
}

// Exact continuous knapsack: bang-bang start, then greedy repair of the
// violated bound in order of marginal cost per unit of carrier.
KnapsackResult solve_linear(std::span<const KnapsackItem> items, double offset, double lo, double hi) {
    KnapsackResult r;
    r.values.assign(items.size(), 0.0);
    double total = offset;
    for (std::size_t j = 0; j < items.size(); ++j) {
        if (items[j].cost < 0.0 && items[j].cap > 0.0) {
            r.values[j] = items[j].cap;
            total += items[j].weight * items[j].cap;
        }
    }
    if (total >= lo && total <= hi) {
        finish(items, r, offset, 0.0);
        return r;
    }

    const bool reduce = total > hi;
    double remaining = reduce ? total - hi : lo - total;
    std::vector<Event> events;
    for (std::size_t j = 0; j < items.size(); ++j) {
        const auto& it = items[j];
        if (it.cap <= 0.0 || it.weight == 0.0) continue;
        const bool on = r.values[j] > 0.0;
        // When reducing, items with positive weight leave and items with
        // negative weight enter; the opposite when increasing.
        const bool moves_down = it.weight > 0.0 ? on : !on;
        if (moves_down != reduce) continue;
        events.push_back({-it.cost / it.weight, on ? 0 : 1, it.order, j});
    }
    std::sort(events.begin(), events.end(),
              [reduce](const Event& a, const Event& b) { return event_before(a, b, reduce); });

    for (const auto& e : events) {
        const auto& it = items[e.index];
        const double amount = std::abs(it.weight) * it.cap;
        r.multiplier = e.multiplier;
        if (amount >= remaining) {
            const double delta = remaining / std::abs(it.weight);
            r.values[e.index] = e.kind == 0 ? it.cap - delta : delta;
            remaining = 0.0;
            break;
        }
        r.values[e.index] = e.kind == 0 ? 0.0 : it.cap;
        remaining -= amount;
    }
    if (remaining > kFeasTol)
        throw InfeasibleError(reduce ? "carrier balance cannot be brought down to its upper bound"
                                     : "carrier balance cannot be raised to its lower bound");
    finish(items, r, offset, 0.0);
    return r;
}

double response(const KnapsackItem& it, double m, double smoothing) {
    return std::clamp(-(it.cost + m * it.weight) / smoothing, 0.0, it.cap);
}

double total_at(std::span<const KnapsackItem> items, double offset, double m, double smoothing) {
    double x = offset;
    for (const auto& it : items) {
        if (it.cap > 0.0) x += it.weight * response(it, m, smoothing);
    }
    return x;
}

KnapsackResult solve_smooth(std::span<const KnapsackItem> items, double offset, double lo, double hi,
                            double smoothing) {
    KnapsackResult r;
    const double x0 = total_at(items, offset, 0.0, smoothing);
    double m = 0.0;
    if (x0 > hi || x0 < lo) {
        const bool reduce = x0 > hi;
        const double target = reduce ? hi : lo;
        // total_at is continuous, non-increasing and linear between breakpoints.
        std::vector<double> breaks;
        for (const auto& it : items) {
            if (it.cap <= 0.0 || it.weight == 0.0) continue;
            for (double b : {-it.cost / it.weight, (-it.cost - smoothing * it.cap) / it.weight}) {
                if (reduce ? b > 0.0 : b < 0.0) breaks.push_back(b);
            }
        }
        std::sort(breaks.begin(), breaks.end());
        if (!reduce) std::reverse(breaks.begin(), breaks.end());

        double prev_m = 0.0;
        double prev_x = x0;
        bool found = false;
        for (double b : breaks) {
            const double xb = total_at(items, offset, b, smoothing);
            const bool crossed = reduce ? xb <= target : xb >= target;
            if (crossed) {
                m = xb == prev_x ? b : prev_m + (prev_x - target) * (b - prev_m) / (prev_x - xb);
                found = true;
                break;
            }
            prev_m = b;
            prev_x = xb;
        }
        if (!found) {
            if (std::abs(prev_x - target) > kFeasTol)
                throw InfeasibleError(reduce ? "carrier balance cannot be brought down to its upper bound"
                                             : "carrier balance cannot be raised to its lower bound");
            m = prev_m;
        }
    }
    r.multiplier = m;
    r.values.resize(items.size());
    for (std::size_t j = 0; j < items.size(); ++j)
        r.values[j] = items[j].cap > 0.0 ? response(items[j], m, smoothing) : 0.0;
    finish(items, r, offset, smoothing);
    return r;
}

} // namespace

KnapsackResult solve_knapsack(std::span<const KnapsackItem> items, double offset, double lo, double hi,
                              double smoothing) {
    if (smoothing > 0.0) return solve_smooth(items, offset, lo, hi, smoothing);
    return solve_linear(items, offset, lo, hi);
}

} // namespace megsched
