#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "drxsim/events.hpp"

namespace drxsim {

/// DRX ladder of an LTE radio interface. Any packet activity puts the
/// interface in CR; elapsed inactivity walks it down towards IDLE.
enum class RadioState { cr, short_drx, long_drx, idle };

inline constexpr std::size_t radio_state_count = 4;

inline constexpr std::array<RadioState, radio_state_count> all_radio_states = {
    RadioState::cr, RadioState::short_drx, RadioState::long_drx, RadioState::idle};

constexpr std::size_t state_index(RadioState state) {
    return static_cast<std::size_t>(state);
}

std::string_view to_string(RadioState state);

/// Sleep/wake alternation within a DRX or IDLE state. The on-fraction of the
/// cycle determines the average power draw.
struct DutyCycle {
    double cycle_s = 0.0;
    double on_s = 0.0;
    double p_on_w = 0.0;
    double p_sleep_w = 0.0;

    double avg_power_w() const {
        return (p_on_w * on_s + p_sleep_w * (cycle_s - on_s)) / cycle_s;
    }
    double sleep_fraction() const { return (cycle_s - on_s) / cycle_s; }

    void validate(std::string_view name = "duty_cycle") const;
};

/// Inactivity thresholds, cumulative since the last packet: the interface is
/// in CR below t1, SHORT DRX below t2, LONG DRX below t3 and IDLE beyond.
struct FsmTimers {
    double t1_s = 0.0;
    double t2_s = 0.0;
    double t3_s = 0.0;

    void validate() const;
};

struct PowerProfile {
    double p_cr_w = 0.0;  // CR draws constant power, no duty cycle
    DutyCycle short_drx;
    DutyCycle long_drx;
    DutyCycle idle;
    FsmTimers timers;
    double nominal_voltage_v = 3.85;  // for current conversion only

    double average_power_w(RadioState state) const;
    const DutyCycle* duty_cycle_for(RadioState state) const;  // nullptr for CR

    // Enforces the power ordering CR > SHORT DRX > LONG DRX > IDLE and the
    // sleep-fraction ordering IDLE > LONG DRX > SHORT DRX.
    void validate() const;
};

struct StateInterval {
    RadioState state = RadioState::idle;
    double start_s = 0.0;
    double end_s = 0.0;

    double duration_s() const { return end_s - start_s; }
};

/// Gapless, non-overlapping intervals covering [0, horizon_s].
struct StateTimeline {
    std::vector<StateInterval> intervals;
    double horizon_s = 0.0;
};

enum class AccountingMode { average, exact_cycle };

/// State after `now - last_activity` seconds of inactivity. Under cumulative
/// timers the state is fully determined by the elapsed time.
RadioState fsm_advance(RadioState current, double last_activity_s, double now_s,
                       const FsmTimers& timers);

/// A packet at time t puts the interface in CR regardless of current state.
/// Callers are responsible for resetting their last-activity clock to t.
RadioState on_packet(RadioState current, double t_s);

/// Replays a sorted event trace from an IDLE start at t = 0. Every interval
/// boundary is a packet event or a timer expiry; adjacent intervals with the
/// same state are merged.
StateTimeline build_state_timeline(const EventTrace& trace, const FsmTimers& timers,
                                   double horizon_s);

/// Energy of `duration_s` spent in a duty-cycled state, integrating the
/// on/off square wave exactly. `phase_s` is the position within the cycle at
/// the start of the interval (state entry starts a fresh cycle, on-phase
/// first, i.e. phase 0).
double duty_cycle_energy_exact(const DutyCycle& dc, double duration_s, double phase_s = 0.0);

double energy_of_interval(const StateInterval& interval, const PowerProfile& profile,
                          AccountingMode mode);

}  // namespace drxsim
