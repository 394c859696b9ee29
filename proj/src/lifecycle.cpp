#include "pvopt/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pvopt::lifecycle {

namespace {

void validate_design(const SystemDesign& design, const ScenarioContext& ctx) {
    if (design.tilt_deg < 0 || design.tilt_deg > 180) throw std::invalid_argument("design tilt out of [0, 180]");
    if (design.azimuth_deg <= -180 || design.azimuth_deg > 180)
        throw std::invalid_argument("design azimuth out of (-180, 180]");
    if (design.panel_count < 0 || design.panel_count > ctx.z_max)
        throw std::invalid_argument("panel count out of [0, Z_max]");
    if (design.battery_count < 0 || design.battery_count > ctx.x_max)
        throw std::invalid_argument("battery count out of [0, X_max]");
}

}  // namespace

ScenarioContext ScenarioContext::from_config(const ingest::RunConfig& config) {
    ScenarioContext ctx;
    ctx.load = ingest::load_profile(config.load_path, config.gap_fill_max_hours);
    ingest::WeatherSeries weather = ingest::load_weather(config.weather_path);
    ctx.location = weather.location;
    ctx.weather = weather.averaged();
    ctx.plans = ingest::load_plans(config.plans_dir);
    ctx.base_plan_id = config.base_plan_id;
    ctx.plans.require(config.base_plan_id);
    for (const auto& id : config.candidate_plan_ids) ctx.plans.require(id);
    ctx.batteries = ingest::load_battery_catalogue(config.battery_catalogue_path);
    for (const auto& id : config.battery_product_ids) ctx.batteries.require(id);
    const ingest::PvCatalogue pv_cat = ingest::load_pv_catalogue(config.pv_catalogue_path);
    ctx.panel = pv_cat.require(config.pv_panel_id);
    ctx.pv_pricing = pv_cat.pricing;
    ctx.bop.efficiency = config.bop_efficiency;
    ctx.bop.validate();
    ctx.assumptions = config.assumptions;
    ctx.maintenance = config.maintenance;
    ctx.solar_settings = config.solar_settings;
    ctx.battery_price_factor = config.battery_price_factor;
    ctx.z_max = config.bounds.z_max;
    ctx.x_max = config.bounds.x_max;
    return ctx;
}

std::vector<double> tilted_slot_series(const ScenarioContext& ctx, const solar::PlaneOrientation& orientation) {
    std::vector<double> tilted(kHoursPerYear, 0.0);
    for (int s = 0; s < kHoursPerYear; ++s) {
        const int day_of_year = s / 24 + 1;
        const int hour = s % 24;
        solar::HorizontalIrradiance irr;
        irr.global_whm2 = ctx.weather.global_whm2[s];
        irr.beam_whm2 = ctx.weather.beam_whm2[s];
        irr.diffuse_whm2 = ctx.weather.diffuse_whm2[s];
        irr.extraterrestrial_whm2 = solar::extraterrestrial_hourly(ctx.location, day_of_year, hour);
        const double rb = solar::beam_ratio(ctx.location, day_of_year, hour, orientation,
                                            ctx.solar_settings.beam_ratio_max);
        tilted[s] = solar::hdkr_transpose(irr, orientation, rb, ctx.solar_settings.ground_reflectance).total_whm2;
    }
    return tilted;
}

SimulationReport simulate(const SystemDesign& design, const ScenarioContext& ctx, const HourSink* sink) {
    validate_design(design, ctx);
    const tariff::TouPlan& plan = ctx.plans.require(design.plan_id);
    const tariff::TouPlan& base_plan = ctx.plans.require(ctx.base_plan_id);

    battery::BatteryUnitSpec battery_spec;
    if (design.battery_count > 0) {
        battery_spec = ctx.batteries.require(design.battery_product_id);
        battery_spec.unit_price *= ctx.battery_price_factor;
    }

    const solar::PlaneOrientation orientation{static_cast<double>(design.tilt_deg),
                                              static_cast<double>(design.azimuth_deg)};
    orientation.validate();

    // Per-slot plane-of-array insolation and the PV energy before lifetime
    // fade; the fade factor is applied per billing period.
    const std::vector<double> tilted = tilted_slot_series(ctx, orientation);
    std::vector<double> pv_fresh(kHoursPerYear, 0.0);
    for (int s = 0; s < kHoursPerYear; ++s) {
        const double cell_c = pv::cell_temperature(ctx.weather.ambient_c[s], tilted[s], ctx.panel);
        const double eta = pv::operating_efficiency(ctx.weather.ambient_c[s], cell_c, ctx.panel);
        pv_fresh[s] = pv::pv_hourly_energy(ctx.panel, design.panel_count, tilted[s], eta, ctx.bop, 0.0);
    }

    if (ctx.assumptions.periods_per_year != 4)
        throw std::invalid_argument("only quarterly billing calendars are supported");
    tariff::BillingCalendar calendar;
    calendar.horizon_periods = ctx.assumptions.horizon_periods();
    calendar.validate();

    const SimYear sim_year(ctx.load.start_date);
    const int t = ctx.assumptions.periods_per_year;
    const int horizon = calendar.horizon_periods;
    const int replacement_interval = 10 * t;

    const double rated_watts = ctx.panel.rated_w * design.panel_count;
    const double capital_pv = pv::pv_system_cost(rated_watts, ctx.pv_pricing);
    const double capital_battery = design.battery_count > 0
                                       ? battery::battery_cost(battery_spec, design.battery_count)
                                       : 0.0;
    const bool null_system = design.panel_count == 0 && design.battery_count == 0;

    battery::BatteryBankState bank = battery::BatteryBankState::fresh(battery_spec, design.battery_count);

    SimulationReport report;
    report.capital_pv = capital_pv;
    report.capital_battery = capital_battery;
    report.quarters.reserve(horizon);

    std::vector<double> balance_buffer;
    std::vector<double> load_buffer;

    int day_of_year_index = 0;  // 0..364, tiles across the horizon
    for (int q = 1; q <= horizon; ++q) {
        // Batteries and inverter are replaced after each 10-year service life;
        // the bank restarts fresh at the start of the following quarter.
        if (design.battery_count > 0 && q > 1 && (q - 1) % replacement_interval == 0)
            bank = battery::BatteryBankState::fresh(battery_spec, design.battery_count);

        const double years_elapsed = static_cast<double>(q - 1) / t;
        const double fade = pv::degradation_factor(ctx.panel, years_elapsed);
        const int days = calendar.period_lengths[(q - 1) % t];

        balance_buffer.clear();
        load_buffer.clear();
        const CivilDate first_day = sim_year.date_at(day_of_year_index);

        for (int d = 0; d < days; ++d) {
            const CivilDate date = sim_year.date_at(day_of_year_index);
            for (int h = 0; h < 24; ++h) {
                const int s = day_of_year_index * 24 + h;
                const double load_kwh = ctx.load.kwh[s];
                const double pv_kwh = pv_fresh[s] * fade;
                const tariff::TariffPeriodFlags flags = tariff::classify_hour(plan, date, h);

                auto [next_bank, flows] = battery::step_hour(bank, battery_spec, design.mode, flags, pv_kwh, load_kwh);
                const double balance = load_kwh - pv_kwh - flows.discharge + flows.pv_charge + flows.grid_charge +
                                       flows.total_loss();
                balance_buffer.push_back(balance);
                load_buffer.push_back(load_kwh);

                if (q <= t) {
                    report.first_year.pv_generation_kwh += pv_kwh;
                    report.first_year.exported_kwh += std::max(0.0, -balance);
                    report.first_year.battery_throughput_kwh += flows.discharge;
                    report.first_year.battery_losses_kwh += flows.total_loss();
                }
                if (sink) {
                    HourRecord rec;
                    rec.quarter = q;
                    rec.day_of_year = day_of_year_index + 1;
                    rec.hour = h;
                    rec.load_kwh = load_kwh;
                    rec.pv_kwh = pv_kwh;
                    rec.balance_kwh = balance;
                    rec.import_kwh = std::max(0.0, balance);
                    rec.export_kwh = std::max(0.0, -balance);
                    rec.flows = flows;
                    rec.state_after = next_bank;
                    (*sink)(rec);
                }
                bank = next_bank;
            }
            day_of_year_index = (day_of_year_index + 1) % kDaysPerYear;
        }

        QuarterRow row;
        row.cost_base = tariff::base_period_cost(base_plan, load_buffer, first_day);
        row.cost_pvbatt = tariff::pvbatt_period_cost(plan, balance_buffer, first_day);
        row.savings = row.cost_base - row.cost_pvbatt;
        row.maintenance = null_system ? 0.0
                                      : economics::maintenance_cost(q, ctx.maintenance, rated_watts, capital_battery, t);
        report.quarters.push_back(row);
    }

    report.final_battery_capacity_kwh = bank.max_capacity_kwh;
    report.first_year.self_consumed_kwh = report.first_year.pv_generation_kwh - report.first_year.exported_kwh;

    std::vector<double> savings(horizon), maintenance(horizon);
    for (int q = 0; q < horizon; ++q) {
        savings[q] = report.quarters[q].savings;
        maintenance[q] = report.quarters[q].maintenance;
    }
    report.npv = economics::npv(savings, maintenance, capital_pv, capital_battery, ctx.assumptions);

    // Secondary metrics share the NPV's cashflow convention: capital out at
    // t=0, escalated savings net of maintenance per quarter.
    const double rd = economics::quarterly_effective_rate(ctx.assumptions.real_discount_annual, t);
    const double re = economics::quarterly_effective_rate(ctx.assumptions.electricity_growth_annual, t);
    std::vector<double> cashflows(horizon + 1);
    cashflows[0] = -(capital_pv + capital_battery);
    for (int q = 1; q <= horizon; ++q)
        cashflows[q] = savings[q - 1] * std::pow(1.0 + re, q) - maintenance[q - 1];
    report.mirr_annual = economics::mirr(cashflows, rd, rd, t);
    report.payback_years = economics::discounted_payback(cashflows, rd, t);

    return report;
}

double objective(const SystemDesign& design, const ScenarioContext& ctx) {
    return simulate(design, ctx).npv;
}

}  // namespace pvopt::lifecycle
