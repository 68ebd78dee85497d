#include "drxsim/radio_fsm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drxsim/error.hpp"

namespace drxsim {

std::string_view to_string(RadioState state) {
    switch (state) {
        case RadioState::cr: return "cr";
        case RadioState::short_drx: return "short_drx";
        case RadioState::long_drx: return "long_drx";
        case RadioState::idle: return "idle";
    }
    return "?";
}

void DutyCycle::validate(std::string_view name) const {
    auto fail = [&](const char* what) {
        throw Error(errc::invalid_input, std::string(name) + ": " + what);
    };
    if (!(cycle_s > 0.0)) fail("cycle_s must be positive");
    if (on_s < 0.0 || on_s > cycle_s) fail("on_s must lie in [0, cycle_s]");
    if (p_on_w < 0.0) fail("p_on_w must be non-negative");
    if (p_sleep_w < 0.0 || p_sleep_w > p_on_w) fail("p_sleep_w must lie in [0, p_on_w]");
}

void FsmTimers::validate() const {
    if (!(0.0 < t1_s && t1_s < t2_s && t2_s < t3_s))
        throw Error(errc::invalid_input, "timers must satisfy 0 < t1 < t2 < t3");
}

double PowerProfile::average_power_w(RadioState state) const {
    if (state == RadioState::cr) return p_cr_w;
    return duty_cycle_for(state)->avg_power_w();
}

const DutyCycle* PowerProfile::duty_cycle_for(RadioState state) const {
    switch (state) {
        case RadioState::short_drx: return &short_drx;
        case RadioState::long_drx: return &long_drx;
        case RadioState::idle: return &idle;
        case RadioState::cr: return nullptr;
    }
    return nullptr;
}

void PowerProfile::validate() const {
    short_drx.validate("short_drx");
    long_drx.validate("long_drx");
    idle.validate("idle");
    timers.validate();
    if (!(p_cr_w > 0.0))
        throw Error(errc::invalid_input, "p_cr_w must be positive");
    if (!(nominal_voltage_v > 0.0))
        throw Error(errc::invalid_input, "nominal_voltage_v must be positive");
    if (!(p_cr_w > short_drx.avg_power_w() && short_drx.avg_power_w() > long_drx.avg_power_w() &&
          long_drx.avg_power_w() > idle.avg_power_w()))
        throw Error(errc::invalid_input,
                    "average power must be ordered CR > SHORT DRX > LONG DRX > IDLE");
    if (!(idle.sleep_fraction() > long_drx.sleep_fraction() &&
          long_drx.sleep_fraction() > short_drx.sleep_fraction()))
        throw Error(errc::invalid_input,
                    "sleep fraction must be ordered IDLE > LONG DRX > SHORT DRX");
}

RadioState fsm_advance(RadioState /*current*/, double last_activity_s, double now_s,
                       const FsmTimers& timers) {
    timers.validate();
    const double elapsed = now_s - last_activity_s;
    if (elapsed < 0.0)
        throw Error(errc::invalid_input, "fsm_advance: now precedes last activity");
    if (elapsed >= timers.t3_s) return RadioState::idle;
    if (elapsed >= timers.t2_s) return RadioState::long_drx;
    if (elapsed >= timers.t1_s) return RadioState::short_drx;
    return RadioState::cr;
}

RadioState on_packet(RadioState /*current*/, double /*t_s*/) {
    return RadioState::cr;
}

StateTimeline build_state_timeline(const EventTrace& trace, const FsmTimers& timers,
                                   double horizon_s) {
    timers.validate();
    if (!(horizon_s > 0.0))
        throw Error(errc::invalid_input, "build_state_timeline: horizon must be positive");

    // Distinct activity timestamps; simultaneous events collapse to one.
    std::vector<double> activity;
    activity.reserve(trace.events.size());
    double prev = -1.0;
    for (const auto& ev : trace.events) {
        if (ev.t_s < 0.0)
            throw Error(errc::invalid_input, "build_state_timeline: negative event timestamp");
        if (ev.t_s < prev)
            throw Error(errc::invalid_input, "build_state_timeline: event trace is not sorted");
        if (ev.t_s > horizon_s)
            throw Error(errc::invalid_input, "build_state_timeline: event beyond horizon");
        if (ev.t_s != prev) activity.push_back(ev.t_s);
        prev = ev.t_s;
    }

    StateTimeline timeline;
    timeline.horizon_s = horizon_s;
    auto emit = [&](RadioState state, double from, double to) {
        if (to <= from) return;
        auto& out = timeline.intervals;
        if (!out.empty() && out.back().state == state && out.back().end_s == from) {
            out.back().end_s = to;
        } else {
            out.push_back({state, from, to});
        }
    };

    if (activity.empty()) {
        emit(RadioState::idle, 0.0, horizon_s);
        return timeline;
    }

    emit(RadioState::idle, 0.0, std::min(activity.front(), horizon_s));
    for (std::size_t i = 0; i < activity.size(); ++i) {
        const double at = activity[i];
        if (at >= horizon_s) break;
        const double next = std::min(i + 1 < activity.size() ? activity[i + 1] : horizon_s,
                                     horizon_s);
        const double b1 = std::min(at + timers.t1_s, next);
        const double b2 = std::min(at + timers.t2_s, next);
        const double b3 = std::min(at + timers.t3_s, next);
        emit(RadioState::cr, at, b1);
        emit(RadioState::short_drx, b1, b2);
        emit(RadioState::long_drx, b2, b3);
        emit(RadioState::idle, b3, next);
    }
    return timeline;
}

double duty_cycle_energy_exact(const DutyCycle& dc, double duration_s, double phase_s) {
    dc.validate();
    if (duration_s < 0.0)
        throw Error(errc::invalid_input, "duty_cycle_energy_exact: negative duration");
    if (duration_s == 0.0) return 0.0;

    double phase = std::fmod(phase_s, dc.cycle_s);
    if (phase < 0.0) phase += dc.cycle_s;

    const double per_cycle = dc.p_on_w * dc.on_s + dc.p_sleep_w * (dc.cycle_s - dc.on_s);
    // Energy accumulated from cycle position 0 to x, for x in [0, cycle].
    auto within_cycle = [&](double x) {
        return dc.p_on_w * std::min(x, dc.on_s) + dc.p_sleep_w * std::max(0.0, x - dc.on_s);
    };
    auto cumulative = [&](double x) {
        double whole = std::floor(x / dc.cycle_s);
        double rest = x - whole * dc.cycle_s;
        if (rest < 0.0) {
            rest += dc.cycle_s;
            whole -= 1.0;
        } else if (rest >= dc.cycle_s) {
            rest -= dc.cycle_s;
            whole += 1.0;
        }
        return whole * per_cycle + within_cycle(rest);
    };
    return cumulative(phase + duration_s) - cumulative(phase);
}

double energy_of_interval(const StateInterval& interval, const PowerProfile& profile,
                          AccountingMode mode) {
    if (!(interval.end_s > interval.start_s))
        throw Error(errc::invalid_input, "energy_of_interval: interval must have positive duration");
    const double duration = interval.duration_s();
    if (interval.state == RadioState::cr) return profile.p_cr_w * duration;

    const DutyCycle& dc = *profile.duty_cycle_for(interval.state);
    if (mode == AccountingMode::average) return dc.avg_power_w() * duration;
    return duty_cycle_energy_exact(dc, duration, 0.0);
}

}  // namespace drxsim
