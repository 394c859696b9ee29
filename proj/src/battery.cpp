#include "pvopt/battery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pvopt::battery {

namespace {

double positive_part(double x) { return x > kFlowEpsilonKwh ? x : 0.0; }

}  // namespace

void BatteryUnitSpec::validate() const {
    if (!(capacity_kwh > 0.0)) throw std::invalid_argument("battery capacity must be positive");
    if (!(eol_capacity_kwh > 0.0 && eol_capacity_kwh <= capacity_kwh))
        throw std::invalid_argument("end-of-life capacity out of (0, capacity]");
    if (!(cycle_life > 0.0)) throw std::invalid_argument("cycle life must be positive");
    if (!(max_dod > 0.0 && max_dod <= 1.0)) throw std::invalid_argument("max depth of discharge out of (0, 1]");
    if (!(rate_kwh_per_hour > 0.0)) throw std::invalid_argument("continuous rate must be positive");
    if (!(roundtrip_efficiency > 0.0 && roundtrip_efficiency <= 1.0))
        throw std::invalid_argument("round-trip efficiency out of (0, 1]");
    if (unit_price < 0.0) throw std::invalid_argument("unit price must be >= 0");
}

DispatchMode dispatch_mode_from_int(int mode) {
    if (mode < 1 || mode > 4) throw std::invalid_argument("dispatch mode must be 1..4");
    return static_cast<DispatchMode>(mode);
}

BatteryBankState BatteryBankState::fresh(const BatteryUnitSpec& spec, int units) {
    if (units < 0) throw std::invalid_argument("unit count must be >= 0");
    if (units == 0) return {};
    spec.validate();
    BatteryBankState s;
    s.units = units;
    s.max_capacity_kwh = spec.capacity_kwh * units;
    s.available_kwh = (1.0 - spec.max_dod) * s.max_capacity_kwh;
    s.cycles = 0.0;
    return s;
}

double loss_factor(double roundtrip_efficiency) {
    if (!(roundtrip_efficiency > 0.0 && roundtrip_efficiency <= 1.0))
        throw std::invalid_argument("round-trip efficiency out of (0, 1]");
    return (1.0 - roundtrip_efficiency) / 2.0;
}

double degradation_rate(const BatteryUnitSpec& spec) {
    spec.validate();
    return (spec.capacity_kwh - spec.eol_capacity_kwh) / spec.cycle_life;
}

std::pair<BatteryBankState, HourFlows> step_hour(const BatteryBankState& state, const BatteryUnitSpec& spec,
                                                 DispatchMode mode, const tariff::TariffPeriodFlags& flags,
                                                 double pv_kwh, double load_kwh) {
    if (pv_kwh < 0.0 || load_kwh < 0.0) throw std::invalid_argument("hourly energies must be >= 0");
    if (!flags.valid()) throw std::invalid_argument("exactly one tariff period flag must be active");

    if (state.units == 0) return {state, HourFlows{}};
    spec.validate();

    const double f = loss_factor(spec.roundtrip_efficiency);
    const double one_minus_f = 1.0 - f;
    const double rate = spec.rate_kwh_per_hour * state.units;
    const double eol_floor = spec.eol_capacity_kwh * state.units;

    const bool grid_charge_window =
        (mode == DispatchMode::ArbitragePeakOnly || mode == DispatchMode::ArbitrageShoulderPeak) && flags.offpeak;
    const bool discharge_window =
        flags.peak || ((mode == DispatchMode::PvShiftShoulderPeak || mode == DispatchMode::ArbitrageShoulderPeak) &&
                       flags.shoulder);

    const double headroom = state.max_capacity_kwh - state.available_kwh;
    const double usable = state.available_kwh - state.max_capacity_kwh * (1.0 - spec.max_dod);
    const double surplus = pv_kwh - load_kwh;
    const double deficit = load_kwh - pv_kwh;

    HourFlows flows;

    // PV-surplus charging is unconditional; charge flows are net of losses.
    flows.pv_charge = positive_part(std::min({headroom, surplus * one_minus_f, rate * one_minus_f}));
    flows.pv_charge_loss = positive_part(std::min({headroom / one_minus_f, surplus, rate})) * f;

    // Grid charging tops the bank up on top of any concurrent PV charge; the
    // matching loss is the loss on the grid leg's gross draw.
    if (grid_charge_window) {
        flows.grid_charge = positive_part(std::min(headroom, rate * one_minus_f) - flows.pv_charge);
        flows.grid_charge_loss = flows.grid_charge * f / one_minus_f;
    }

    // Discharge covers the load deficit, grossed up for the discharge-leg
    // loss; the loss term applies the factor to the unscaled deficit.
    if (discharge_window) {
        flows.discharge = positive_part(std::min({usable, deficit / one_minus_f, rate}));
        flows.discharge_loss = positive_part(std::min({deficit, rate, usable})) * f;
    }

    // Partial-cycle throughput against the capacity at the start of the hour.
    const double cycle_increment =
        state.max_capacity_kwh > 0.0
            ? (flows.pv_charge + flows.grid_charge + flows.discharge) / (2.0 * spec.max_dod * state.max_capacity_kwh)
            : 0.0;

    BatteryBankState next = state;
    next.available_kwh = state.available_kwh - flows.discharge + flows.pv_charge + flows.grid_charge;
    next.cycles = state.cycles + cycle_increment;
    next.max_capacity_kwh =
        std::max(state.max_capacity_kwh - cycle_increment * degradation_rate(spec) * state.units, eol_floor);
    // Fade can pull the ceiling a hair under a just-filled bank.
    next.available_kwh = std::clamp(next.available_kwh, (1.0 - spec.max_dod) * next.max_capacity_kwh,
                                    next.max_capacity_kwh);

    return {next, flows};
}

double battery_cost(const BatteryUnitSpec& spec, int units) {
    if (units < 0) throw std::invalid_argument("unit count must be >= 0");
    return spec.unit_price * units;
}

}  // namespace pvopt::battery
