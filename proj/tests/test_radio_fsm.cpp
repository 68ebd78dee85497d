#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "drxsim/error.hpp"
#include "drxsim/radio_fsm.hpp"
#include "oracles.hpp"

using namespace drxsim;

namespace {

PowerProfile test_profile() {
    PowerProfile p;
    p.p_cr_w = 1.2;
    p.short_drx = {0.02, 0.004, 0.8, 0.025};
    p.long_drx = {0.32, 0.032, 0.8, 0.02};
    p.idle = {1.28, 0.032, 0.5, 0.008};
    p.timers = {0.55, 1.2, 3.0};
    return p;
}

const FsmTimers kTimers{0.55, 1.2, 3.0};

}  // namespace

TEST_CASE("fsm_advance walks the inactivity ladder") {
    CHECK(fsm_advance(RadioState::cr, 10.0, 10.0, kTimers) == RadioState::cr);
    CHECK(fsm_advance(RadioState::cr, 0.0, kTimers.t1_s - 1e-9, kTimers) == RadioState::cr);
    CHECK(fsm_advance(RadioState::cr, 0.0, kTimers.t1_s, kTimers) == RadioState::short_drx);
    CHECK(fsm_advance(RadioState::cr, 0.0, kTimers.t2_s + 0.1, kTimers) == RadioState::long_drx);
    CHECK(fsm_advance(RadioState::cr, 0.0, kTimers.t3_s, kTimers) == RadioState::idle);
    CHECK(fsm_advance(RadioState::cr, 0.0, 100.0, kTimers) == RadioState::idle);
}

TEST_CASE("fsm_advance rejects negative elapsed time") {
    CHECK_THROWS_AS(fsm_advance(RadioState::cr, 5.0, 4.0, kTimers), Error);
}

TEST_CASE("fsm_advance rejects invalid timers") {
    CHECK_THROWS_AS(fsm_advance(RadioState::cr, 0.0, 1.0, FsmTimers{1.0, 1.0, 2.0}), Error);
    CHECK_THROWS_AS(fsm_advance(RadioState::cr, 0.0, 1.0, FsmTimers{0.0, 1.0, 2.0}), Error);
}

TEST_CASE("on_packet promotes any state to CR") {
    CHECK(on_packet(RadioState::idle, 3.0) == RadioState::cr);
    CHECK(on_packet(RadioState::cr, 3.0) == RadioState::cr);
    CHECK(on_packet(RadioState::long_drx, 3.0) == RadioState::cr);
    CHECK(on_packet(RadioState::short_drx, 3.0) == RadioState::cr);
}

TEST_CASE("empty trace stays idle for the whole horizon") {
    const StateTimeline timeline = build_state_timeline(EventTrace{}, kTimers, 42.0);
    REQUIRE(timeline.intervals.size() == 1);
    CHECK(timeline.intervals[0].state == RadioState::idle);
    CHECK(timeline.intervals[0].start_s == 0.0);
    CHECK(timeline.intervals[0].end_s == 42.0);
}

TEST_CASE("single packet at t=0 produces the full cascade") {
    EventTrace trace;
    trace.events.push_back({0.0, Direction::up, 100});
    trace.horizon_s = 20.0;
    const StateTimeline timeline = build_state_timeline(trace, kTimers, 20.0);
    REQUIRE(timeline.intervals.size() == 4);
    CHECK(timeline.intervals[0].state == RadioState::cr);
    CHECK(timeline.intervals[0].start_s == 0.0);
    CHECK(timeline.intervals[0].end_s == kTimers.t1_s);
    CHECK(timeline.intervals[1].state == RadioState::short_drx);
    CHECK(timeline.intervals[1].end_s == kTimers.t2_s);
    CHECK(timeline.intervals[2].state == RadioState::long_drx);
    CHECK(timeline.intervals[2].end_s == kTimers.t3_s);
    CHECK(timeline.intervals[3].state == RadioState::idle);
    CHECK(timeline.intervals[3].end_s == 20.0);
}

TEST_CASE("dense periodic packets below t1 merge into one CR interval") {
    EventTrace trace;
    for (int i = 0; i < 40; ++i) trace.events.push_back({i * 0.25, Direction::down, 1460});
    trace.horizon_s = 40 * 0.25;  // 0.25 s past the last packet, still below t1
    const StateTimeline timeline = build_state_timeline(trace, kTimers, trace.horizon_s);
    REQUIRE(timeline.intervals.size() == 1);
    CHECK(timeline.intervals[0].state == RadioState::cr);

    // Agrees with the event-by-event replay oracle.
    const auto replay = oracles::replay_trace(trace, test_profile(), trace.horizon_s);
    CHECK(replay.residence_s[state_index(RadioState::cr)] ==
          doctest::Approx(trace.horizon_s).epsilon(1e-12));
}

TEST_CASE("timeline boundaries are packet events or timer expiries") {
    auto rng = oracles::rng(7101);
    std::uniform_real_distribution<double> gap(0.0, 4.0);
    for (int rep = 0; rep < 50; ++rep) {
        EventTrace trace;
        double t = 0.0;
        while (true) {
            t += gap(rng);
            if (t >= 30.0) break;
            trace.events.push_back({t, Direction::down, 100});
        }
        trace.horizon_s = 30.0;
        const StateTimeline timeline = build_state_timeline(trace, kTimers, 30.0);

        REQUIRE(!timeline.intervals.empty());
        CHECK(timeline.intervals.front().start_s == 0.0);
        CHECK(timeline.intervals.back().end_s == 30.0);
        for (std::size_t i = 0; i + 1 < timeline.intervals.size(); ++i) {
            CHECK(timeline.intervals[i].end_s == timeline.intervals[i + 1].start_s);
            CHECK(timeline.intervals[i].state != timeline.intervals[i + 1].state);
        }
        for (const auto& interval : timeline.intervals) {
            CHECK(interval.end_s > interval.start_s);
            if (interval.start_s == 0.0) continue;
            bool explained = false;
            for (const auto& ev : trace.events) {
                if (interval.start_s == ev.t_s || interval.start_s == ev.t_s + kTimers.t1_s ||
                    interval.start_s == ev.t_s + kTimers.t2_s ||
                    interval.start_s == ev.t_s + kTimers.t3_s) {
                    explained = true;
                    break;
                }
            }
            CHECK(explained);
        }
    }
}

TEST_CASE("unsorted trace is rejected") {
    EventTrace trace;
    trace.events.push_back({2.0, Direction::up, 10});
    trace.events.push_back({1.0, Direction::up, 10});
    trace.horizon_s = 5.0;
    CHECK_THROWS_AS(build_state_timeline(trace, kTimers, 5.0), Error);
}

TEST_CASE("events beyond the horizon are rejected") {
    EventTrace trace;
    trace.events.push_back({6.0, Direction::up, 10});
    CHECK_THROWS_AS(build_state_timeline(trace, kTimers, 5.0), Error);
}

TEST_CASE("CR interval energy is constant power times duration") {
    PowerProfile profile = test_profile();
    const StateInterval interval{RadioState::cr, 0.0, 10.0};
    CHECK(energy_of_interval(interval, profile, AccountingMode::average) == 12.0);
    CHECK(energy_of_interval(interval, profile, AccountingMode::exact_cycle) == 12.0);
}

TEST_CASE("two whole short-DRX cycles in exact-cycle mode") {
    PowerProfile profile = test_profile();
    profile.short_drx = {0.08, 0.01, 0.8, 0.02};
    const StateInterval interval{RadioState::short_drx, 0.0, 0.16};
    const double energy = energy_of_interval(interval, profile, AccountingMode::exact_cycle);
    CHECK(energy == doctest::Approx(0.0188).epsilon(1e-12));
}

TEST_CASE("exact-cycle energy matches microsecond integration for ragged durations") {
    // Microsecond-quantized parameters keep the grid oracle exact.
    const std::int64_t cycle_us = 20000;
    const std::int64_t on_us = 4000;
    const DutyCycle dc{cycle_us * 1e-6, on_us * 1e-6, 0.8, 0.025};
    for (const std::int64_t duration_us : {1, 3999, 4000, 4001, 19999, 20001, 50123, 777777}) {
        const double expected =
            oracles::integrate_duty_cycle_us(cycle_us, on_us, dc.p_on_w, dc.p_sleep_w, duration_us);
        const double actual = duty_cycle_energy_exact(dc, duration_us * 1e-6, 0.0);
        CHECK(actual == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("average-mode additivity is exact for dyadic inputs") {
    DutyCycle dc{0.25, 0.0625, 0.5, 0.03125};
    const double avg = dc.avg_power_w();
    const double t0 = 0.125, t1 = 0.375, t2 = 1.625;
    CHECK(avg * (t2 - t0) == avg * (t1 - t0) + avg * (t2 - t1));
}

TEST_CASE("exact-cycle additivity holds when the phase is threaded") {
    auto rng = oracles::rng(2024);
    std::uniform_real_distribution<double> len(0.001, 2.0);
    std::uniform_real_distribution<double> cut(0.05, 0.95);
    const DutyCycle dc{0.02, 0.004, 0.8, 0.025};
    for (int rep = 0; rep < 500; ++rep) {
        const double total = len(rng);
        const double first = total * cut(rng);
        const double whole = duty_cycle_energy_exact(dc, total, 0.0);
        const double split = duty_cycle_energy_exact(dc, first, 0.0) +
                             duty_cycle_energy_exact(dc, total - first,
                                                     std::fmod(first, dc.cycle_s));
        CHECK(std::fabs(whole - split) <= 1e-9 * whole);
    }
}

TEST_CASE("average and exact-cycle agree exactly on whole cycles (dyadic)") {
    const DutyCycle dc{0.25, 0.0625, 0.5, 0.03125};
    for (int cycles = 1; cycles <= 64; cycles *= 2) {
        const double duration = cycles * dc.cycle_s;
        CHECK(duty_cycle_energy_exact(dc, duration, 0.0) == dc.avg_power_w() * duration);
    }
}

TEST_CASE("duty-cycle energy is bounded by sleep and on power") {
    auto rng = oracles::rng(99);
    std::uniform_real_distribution<double> len(1e-4, 3.0);
    const DutyCycle dc{0.32, 0.032, 0.8, 0.02};
    for (int rep = 0; rep < 300; ++rep) {
        const double duration = len(rng);
        const double energy = duty_cycle_energy_exact(dc, duration, 0.0);
        CHECK(energy >= dc.p_sleep_w * duration * (1.0 - 1e-12));
        CHECK(energy <= dc.p_on_w * duration * (1.0 + 1e-12));
    }
}

TEST_CASE("cascade residences for a lone packet") {
    auto rng = oracles::rng(55);
    std::uniform_real_distribution<double> at(0.0, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = at(rng);
        EventTrace trace;
        trace.events.push_back({t, Direction::up, 50});
        trace.horizon_s = t + kTimers.t3_s + 2.0;
        const StateTimeline timeline = build_state_timeline(trace, kTimers, trace.horizon_s);
        std::array<double, radio_state_count> residence{};
        for (const auto& itv : timeline.intervals) residence[state_index(itv.state)] += itv.duration_s();
        CHECK(residence[state_index(RadioState::cr)] ==
              doctest::Approx(kTimers.t1_s).epsilon(1e-12));
        CHECK(residence[state_index(RadioState::short_drx)] ==
              doctest::Approx(kTimers.t2_s - kTimers.t1_s).epsilon(1e-12));
        CHECK(residence[state_index(RadioState::long_drx)] ==
              doctest::Approx(kTimers.t3_s - kTimers.t2_s).epsilon(1e-12));
    }
}

TEST_CASE("power ordering implies energy ordering for equal durations") {
    const PowerProfile profile = test_profile();
    const double duration = 2.5;
    double previous = std::numeric_limits<double>::infinity();
    for (const RadioState state : all_radio_states) {
        const double energy =
            energy_of_interval({state, 0.0, duration}, profile, AccountingMode::average);
        CHECK(energy <= previous);
        previous = energy;
    }
}

TEST_CASE("profile validation enforces the orderings") {
    PowerProfile profile = test_profile();
    CHECK_NOTHROW(profile.validate());

    PowerProfile wrong_power = profile;
    wrong_power.p_cr_w = 0.01;  // below short DRX average
    CHECK_THROWS_AS(wrong_power.validate(), Error);

    PowerProfile wrong_sleep = profile;
    wrong_sleep.idle.on_s = 1.0;  // idle now sleeps less than long DRX
    CHECK_THROWS_AS(wrong_sleep.validate(), Error);

    PowerProfile bad_duty = profile;
    bad_duty.short_drx.on_s = 1.0;  // exceeds the cycle
    CHECK_THROWS_AS(bad_duty.validate(), Error);
}

TEST_CASE("energy_of_interval rejects empty intervals") {
    CHECK_THROWS_AS(
        energy_of_interval({RadioState::cr, 1.0, 1.0}, test_profile(), AccountingMode::average),
        Error);
}
