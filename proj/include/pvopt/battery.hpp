#pragma once

#include <string>
#include <utility>

#include "pvopt/tariff.hpp"

namespace pvopt::battery {

// Comparison epsilon for the max/min cascades, kWh. Keeps flow signs stable
// when surplus or headroom sits at the edge of zero.
inline constexpr double kFlowEpsilonKwh = 1e-12;

struct BatteryUnitSpec {
    std::string id;
    std::string name;
    double capacity_kwh = 0.0;      // initial maximum capacity, per unit
    double eol_capacity_kwh = 0.0;  // end-of-life maximum capacity, per unit
    double cycle_life = 0.0;        // rated full cycles to end of life
    double max_dod = 1.0;           // usable fraction of maximum capacity
    double rate_kwh_per_hour = 0.0; // continuous charge/discharge rate, per unit
    double roundtrip_efficiency = 1.0;
    double unit_price = 0.0;        // $ installed, per unit

    void validate() const;
};

// Four dispatch policies. All charge from PV surplus; grid charging and the
// discharge window vary:
//   Mode 1: PV shifting, discharge in peak hours only.
//   Mode 2: PV shifting, discharge in shoulder and peak hours.
//   Mode 3: adds off-peak grid charging (arbitrage), discharge in peak only.
//   Mode 4: arbitrage plus discharge in shoulder and peak hours.
enum class DispatchMode { PvShiftPeakOnly = 1, PvShiftShoulderPeak = 2, ArbitragePeakOnly = 3, ArbitrageShoulderPeak = 4 };

DispatchMode dispatch_mode_from_int(int mode);

// Aggregate state of X identical units treated as one store.
struct BatteryBankState {
    double max_capacity_kwh = 0.0;  // current (faded) bank maximum
    double available_kwh = 0.0;     // energy in the cells now
    double cycles = 0.0;            // cumulative equivalent cycles
    int units = 0;

    // Fresh bank at the empty end of the usable window.
    static BatteryBankState fresh(const BatteryUnitSpec& spec, int units);
};

// One hour of flows, all kWh. Charges are net into the cells, discharge is
// gross out of the cells; every flow carries its matching conversion loss.
struct HourFlows {
    double pv_charge = 0.0;
    double grid_charge = 0.0;
    double discharge = 0.0;
    double pv_charge_loss = 0.0;
    double grid_charge_loss = 0.0;
    double discharge_loss = 0.0;

    double total_loss() const { return pv_charge_loss + grid_charge_loss + discharge_loss; }
};

// Symmetric split of the round-trip loss across the charge and discharge legs.
double loss_factor(double roundtrip_efficiency);

// Capacity fade per equivalent full cycle, kWh/cycle for a single unit.
double degradation_rate(const BatteryUnitSpec& spec);

// Advances the bank by one hour: PV-surplus charging first, then tariff-gated
// grid charging (net of the PV charge), then tariff-gated discharging, with
// per-leg losses, partial-cycle accounting and capacity fade floored at the
// bank end-of-life capacity. A zero-unit bank passes energy straight through.
std::pair<BatteryBankState, HourFlows> step_hour(const BatteryBankState& state, const BatteryUnitSpec& spec,
                                                 DispatchMode mode, const tariff::TariffPeriodFlags& flags,
                                                 double pv_kwh, double load_kwh);

// Installed cost of X units.
double battery_cost(const BatteryUnitSpec& spec, int units);

}  // namespace pvopt::battery
