#include <doctest.h>

#include <cmath>
#include <limits>

#include "megsched/coordinator/fista.hpp"
#include "megsched/coordinator/horizon.hpp"
#include "megsched/coordinator/inner_loop.hpp"
#include "megsched/core/error.hpp"
#include "megsched/harness/benchmark.hpp"
#include "megsched/harness/traces.hpp"
#include "support.hpp"

using namespace megsched;

namespace {

constexpr double kExact = 1e-12;

TauVector scalar(double v) { return {CarrierVector{{v, 0.0, 0.0}}}; }

ParkParams idle_park() {
    ParkParams park;
    park.megps.resize(1);
    park.users.push_back({1.0, 0.15, 0.0, {0}});
    return park;
}

SlotExogenous idle_slot() {
    SlotExogenous exo;
    exo.renewable = {0.0};
    exo.load = {0.0};
    return exo;
}

InnerLoopConfig benchmark_inner() {
    InnerLoopConfig cfg;
    cfg.subproblem.smoothing = 5.0;
    return cfg;
}

} // namespace

TEST_CASE("tau_gradient is allocated demand minus declared supply") {
    const auto park = idle_park();
    auto d = SlotDecision::zero(park);
    CHECK(tau_gradient(park, d)[0].max_abs() == 0.0);

    d.users[0].supplied = {1.2};
    d.megps[0].supply[Carrier::Electricity] = 1.0;
    CHECK(std::abs(tau_gradient(park, d)[0][Carrier::Electricity] - 0.2) < kExact);

    d.megps[0].supply[Carrier::Electricity] = 1.2;
    CHECK(tau_gradient(park, d)[0].max_abs() == 0.0);
}

TEST_CASE("plain_tau_step") {
    CHECK(std::abs(plain_tau_step(scalar(0.5), 0.2, scalar(0.2))[0][Carrier::Electricity] - 0.54) < kExact);
    CHECK(plain_tau_step(scalar(0.5), 0.2, scalar(0.0))[0][Carrier::Electricity] == 0.5);
    const auto two = plain_tau_step(plain_tau_step(scalar(0.5), 0.2, scalar(0.3)), 0.2, scalar(0.3));
    CHECK(std::abs(two[0][Carrier::Electricity] - (0.5 + 2 * 0.2 * 0.3)) < kExact);
}

TEST_CASE("fista_weight") {
    CHECK(fista_weight(1.0) == doctest::Approx(1.618034).epsilon(1e-6));
    CHECK(std::abs(fista_weight(1.0) - (1.0 + std::sqrt(5.0)) / 2.0) < kExact);
    // (1 + sqrt(1 + 4 * 1.618034^2)) / 2 = 2.1935271 to seven places.
    CHECK(std::abs(fista_weight(1.618034) - 2.1935270960796585) < kExact);
    CHECK(fista_weight(1.618034) == doctest::Approx(2.19338).epsilon(1e-4));

    double theta = 1.0;
    for (int n = 1; n <= 1000; ++n) {
        const double next = fista_weight(theta);
        CHECK(next > theta);
        CHECK(next >= (n + 2) / 2.0);
        theta = next;
    }
}

TEST_CASE("fista_combine") {
    CHECK(fista_combine(scalar(0.7), scalar(0.1), 1.0, 1.618034)[0][Carrier::Electricity] == 0.7);
    const auto bar = fista_combine(scalar(1.0), scalar(0.0), 1.618034, 2.193380)[0][Carrier::Electricity];
    CHECK(std::abs(bar - (1.0 + 0.618034 / 2.193380)) < kExact);
    CHECK(bar == doctest::Approx(1.281775).epsilon(1e-5));
    CHECK(std::abs(fista_combine(scalar(0.3), scalar(0.3), 5.0, 7.0)[0][Carrier::Electricity] - 0.3) < kExact);
}

TEST_CASE("fast_tau_step") {
    SUBCASE("zero gradient at a fixed point stays put") {
        auto s = FistaState::start(scalar(0.4));
        for (int n = 0; n < 5; ++n) s = fast_tau_step(s, 0.2, scalar(0.0));
        CHECK(std::abs(s.tau[0][Carrier::Electricity] - 0.4) < kExact);
        CHECK(s.n == 5);
    }
    SUBCASE("the first step from theta = 1 is a plain step") {
        const auto s = fast_tau_step(FistaState::start(scalar(0.5)), 0.2, scalar(0.2));
        CHECK(std::abs(s.tau[0][Carrier::Electricity] - 0.54) < kExact);
        CHECK(s.tau_prev[0][Carrier::Electricity] == 0.5);
    }
    SUBCASE("weights grow strictly") {
        auto s = FistaState::start(scalar(0.0));
        double prev = s.theta;
        for (int n = 0; n < 20; ++n) {
            s = fast_tau_step(s, 0.1, scalar(1.0));
            CHECK(s.theta > prev);
            prev = s.theta;
        }
    }
}

TEST_CASE("momentum beats plain ascent on an ill-conditioned concave quadratic") {
    // Dual -(tau - 1)^2, ascent direction 2 (1 - tau). A small step makes the
    // plain iteration slow enough for momentum to pay off.
    const double sigma = 0.02;
    auto grad = [](const TauVector& t) { return scalar(2.0 * (1.0 - t[0][Carrier::Electricity])); };
    TauVector plain = scalar(0.0);
    auto fast = FistaState::start(scalar(0.0));
    for (int n = 1; n <= 20; ++n) {
        plain = plain_tau_step(plain, sigma, grad(plain));
        fast = fast_tau_step(fast, sigma, grad(fast.lookahead()));
    }
    const double plain_err = std::abs(plain[0][Carrier::Electricity] - 1.0);
    const double fast_err = std::abs(fast.tau[0][Carrier::Electricity] - 1.0);
    CHECK(fast_err < plain_err);

    // Plain ascent converges geometrically below the curvature bound.
    TauVector t = scalar(0.0);
    double prev = 1.0;
    for (int n = 0; n < 50; ++n) {
        t = plain_tau_step(t, sigma, grad(t));
        const double err = std::abs(t[0][Carrier::Electricity] - 1.0);
        CHECK(err == doctest::Approx(prev * (1.0 - 2.0 * sigma)).epsilon(1e-9));
        prev = err;
    }
}

TEST_CASE("run_inner_loop") {
    SUBCASE("infinite tolerance stops after one iteration") {
        const auto park = benchmark_park();
        const auto traces = synth_traces(1, 1, SynthProfile{});
        auto cfg = benchmark_inner();
        cfg.tol = std::numeric_limits<double>::infinity();
        for (auto mode : {InnerMode::Plain, InnerMode::Fast}) {
            cfg.mode = mode;
            const auto r = run_inner_loop(park, traces.slots[0], {0, 0}, {0, 0}, TauVector(2), cfg);
            CHECK(r.iterations == 1);
        }
    }
    SUBCASE("a balanced instance converges at once") {
        const auto park = idle_park();
        for (auto mode : {InnerMode::Plain, InnerMode::Fast}) {
            InnerLoopConfig cfg;
            cfg.mode = mode;
            const auto r = run_inner_loop(park, idle_slot(), {0}, {0}, TauVector(1), cfg);
            CHECK(r.iterations <= 2);
            CHECK(r.last_step == 0.0);
        }
    }
    SUBCASE("the iteration cap is reported, not thrown") {
        const auto park = benchmark_park();
        const auto traces = synth_traces(1, 1, SynthProfile{});
        auto cfg = benchmark_inner();
        cfg.max_iters = 3;
        cfg.tol = 1e-12;
        const auto r = run_inner_loop(park, traces.slots[0], {0, 0}, {0, 0}, TauVector(2), cfg);
        CHECK(r.iterations == 3);
    }
    SUBCASE("invalid configuration is rejected") {
        InnerLoopConfig cfg;
        cfg.sigma = 0.0;
        CHECK_THROWS_AS(validate(cfg), ValidationError);
        cfg = {};
        cfg.tol = -1.0;
        CHECK_THROWS_AS(validate(cfg), ValidationError);
    }
}

TEST_CASE("inner loop output is feasible and its residual gradient is small") {
    const auto park = benchmark_park();
    const auto traces = synth_traces(3, 48, SynthProfile{});
    auto cfg = benchmark_inner();
    for (auto mode : {InnerMode::Plain, InnerMode::Fast}) {
        cfg.mode = mode;
        for (const auto& exo : traces.slots) {
            const auto r = run_inner_loop(park, exo, {0.1, -0.1}, {0.0, 0.2}, TauVector(2), cfg);
            CHECK(testing::constraint_violation(park, exo, r.decision) <= 1e-9);
            if (r.iterations < cfg.max_iters) {
                double g = 0.0;
                for (const auto& v : tau_gradient(park, r.decision)) g = std::max(g, v.max_abs());
                CHECK(g <= 10.0 * cfg.tol / cfg.sigma);
            }
        }
    }
}

TEST_CASE("lambda_update") {
    ParkParams park;
    park.megps.resize(1);
    auto d = SlotDecision::zero(park);
    std::vector<double> le{0.5}, lh{0.5};

    d.megps[0].charge_e = 0.3;
    d.megps[0].discharge_e = 0.1;
    lambda_update(le, lh, 0.1, d);
    CHECK(std::abs(le[0] - 0.52) < kExact);
    CHECK(lh[0] == 0.5);

    d.megps[0].charge_e = d.megps[0].discharge_e = 0.4;
    lambda_update(le, lh, 0.1, d);
    CHECK(std::abs(le[0] - 0.52) < kExact);

    d.megps[0].discharge_e = 0.0;
    double prev = le[0];
    for (int n = 0; n < 10; ++n) {
        lambda_update(le, lh, 0.1, d);
        CHECK(le[0] > prev);
        prev = le[0];
    }
}

TEST_CASE("run_horizon") {
    const auto park = benchmark_park();
    auto inner = benchmark_inner();
    OuterLoopConfig outer;
    outer.rho = 5.0;
    outer.warm_start = false;

    SUBCASE("a single slot runs one inner loop and one multiplier update") {
        const auto traces = synth_traces(2, 1, SynthProfile{});
        const auto r = run_horizon(park, traces, mid_storage(park), inner, outer);
        REQUIRE(r.slots.size() == 1);
        const auto& s = r.slots[0];
        CHECK(s.lambda_e == std::vector<double>{0.0, 0.0});
        CHECK(s.iterations >= 1);
    }
    SUBCASE("horizon longer than the trace is rejected") {
        const auto traces = synth_traces(2, 5, SynthProfile{});
        outer.horizon = 6;
        CHECK_THROWS_AS(run_horizon(park, traces, mid_storage(park), inner, outer), ValidationError);
        outer.horizon = 3;
        CHECK(run_horizon(park, traces, mid_storage(park), inner, outer).slots.size() == 3);
    }
    SUBCASE("wrong initial storage count is rejected") {
        const auto traces = synth_traces(2, 2, SynthProfile{});
        CHECK_THROWS_AS(run_horizon(park, traces, {MegpState{}}, inner, outer), ValidationError);
    }
    SUBCASE("constant traces drive the slow multipliers to rest") {
        // Needs accurate inner solves: a coarse stopping rule leaves noise in
        // C - D that rho turns into a small limit cycle.
        inner.tol = 1e-8;
        inner.max_iters = 20000;
        auto traces = synth_traces(2, 1, SynthProfile{});
        traces.slots.resize(300, traces.slots[0]);
        const auto r = run_horizon(park, traces, mid_storage(park), inner, outer);
        const auto& a = r.slots[r.slots.size() - 2];
        const auto& b = r.slots.back();
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(std::abs(b.lambda_e[k] - a.lambda_e[k]) < 1e-3);
            CHECK(std::abs(b.lambda_h[k] - a.lambda_h[k]) < 1e-3);
        }
    }
    SUBCASE("slow multipliers stay bounded and runs are bit-identical") {
        const auto traces = synth_traces(42, 480, SynthProfile{});
        const auto a = run_horizon(park, traces, mid_storage(park), inner, outer);
        const auto b = run_horizon(park, traces, mid_storage(park), inner, outer);
        double pmax = 0.0;
        for (const auto& s : traces.slots) pmax = std::max({pmax, s.price_e, s.price_g});
        REQUIRE(a.slots.size() == b.slots.size());
        for (std::size_t t = 0; t < a.slots.size(); ++t) {
            for (std::size_t k = 0; k < 2; ++k) {
                CHECK(std::abs(a.slots[t].lambda_e[k]) <= 10.0 * pmax);
                CHECK(std::abs(a.slots[t].lambda_h[k]) <= 10.0 * pmax);
            }
            CHECK(a.slots[t].cost == b.slots[t].cost);
            CHECK(a.slots[t].iterations == b.slots[t].iterations);
            CHECK(a.slots[t].lambda_e == b.slots[t].lambda_e);
        }
    }
    SUBCASE("warm starts need no more iterations than cold starts overall") {
        const auto traces = synth_traces(42, 96, SynthProfile{});
        const auto cold = run_horizon(park, traces, mid_storage(park), inner, outer);
        outer.warm_start = true;
        const auto warm = run_horizon(park, traces, mid_storage(park), inner, outer);
        std::size_t nc = 0, nw = 0;
        for (const auto& s : cold.slots) nc += s.iterations;
        for (const auto& s : warm.slots) nw += s.iterations;
        CHECK(nw <= nc);
    }
}
