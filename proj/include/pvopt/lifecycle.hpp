#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvopt/battery.hpp"
#include "pvopt/economics.hpp"
#include "pvopt/ingest.hpp"
#include "pvopt/pv.hpp"
#include "pvopt/solar.hpp"
#include "pvopt/tariff.hpp"

namespace pvopt::lifecycle {

// A candidate system: array geometry, sizes, battery dispatch and the retail
// plan it is billed on. Angles are whole degrees.
struct SystemDesign {
    int tilt_deg = 0;
    int azimuth_deg = 0;
    int panel_count = 0;
    int battery_count = 0;
    std::string battery_product_id;
    battery::DispatchMode mode = battery::DispatchMode::PvShiftShoulderPeak;
    std::string plan_id;
};

struct QuarterRow {
    double cost_base = 0.0;
    double cost_pvbatt = 0.0;
    double savings = 0.0;
    double maintenance = 0.0;
};

struct AnnualAggregates {
    double pv_generation_kwh = 0.0;
    double self_consumed_kwh = 0.0;
    double exported_kwh = 0.0;
    double battery_throughput_kwh = 0.0;  // gross energy discharged
    double battery_losses_kwh = 0.0;
};

struct SimulationReport {
    double npv = 0.0;
    std::optional<double> mirr_annual;
    std::optional<double> payback_years;  // nullopt = never within the horizon
    double capital_pv = 0.0;
    double capital_battery = 0.0;
    std::vector<QuarterRow> quarters;
    AnnualAggregates first_year;
    double final_battery_capacity_kwh = 0.0;
};

// Per-hour record handed to an optional sink; used by diagnostics and tests.
struct HourRecord {
    int quarter = 0;    // 1-based billing period
    int day_of_year = 0;  // 1-based within the tiled year
    int hour = 0;
    double load_kwh = 0.0;
    double pv_kwh = 0.0;
    double balance_kwh = 0.0;
    double import_kwh = 0.0;
    double export_kwh = 0.0;
    battery::HourFlows flows;
    battery::BatteryBankState state_after;
};

using HourSink = std::function<void(const HourRecord&)>;

// Everything a simulation reads besides the design itself. Immutable once
// built; safe to share across threads.
struct ScenarioContext {
    ingest::LoadProfile load;
    solar::GeoLocation location;
    ingest::WeatherYear weather;  // per-slot average across supplied years
    ingest::PlanSet plans;
    std::string base_plan_id;
    ingest::BatteryCatalogue batteries;
    pv::PvPanelSpec panel;
    pv::PvCostSchedule pv_pricing;
    pv::BalanceOfPlant bop;
    economics::EconomicAssumptions assumptions;
    economics::MaintenanceParams maintenance;
    ingest::SolarSettings solar_settings;
    double battery_price_factor = 1.0;
    int z_max = 1000000;
    int x_max = 1000000;

    static ScenarioContext from_config(const ingest::RunConfig& config);
};

// Hourly insolation on the design's plane for each slot of the tiled year.
std::vector<double> tilted_slot_series(const ScenarioContext& ctx, const solar::PlaneOrientation& orientation);

// Runs the design over the full billing horizon: solar transposition, PV
// output with lifetime fade, battery dispatch with replacement at the
// 10-year marks, per-quarter billing on the tested plan against the base
// plan, and the NPV/MIRR/payback roll-up.
SimulationReport simulate(const SystemDesign& design, const ScenarioContext& ctx, const HourSink* sink = nullptr);

// The optimization objective: the design's NPV.
double objective(const SystemDesign& design, const ScenarioContext& ctx);

}  // namespace pvopt::lifecycle
