#pragma once

#include <optional>
#include <span>

namespace pvopt::economics {

struct EconomicAssumptions {
    double real_discount_annual = 0.0392;
    double electricity_growth_annual = 0.02;
    int lifespan_years = 20;
    int periods_per_year = 4;

    void validate() const;
    int horizon_periods() const { return lifespan_years * periods_per_year; }
};

struct MaintenanceParams {
    double minor_service_cost = 200.0;
    double major_service_cost = 400.0;
    double inverter_unit_cost_per_w = 0.41;  // $/W_ac replacement price
    double kappa_inverter = 0.69;            // forecast cost reduction factors
    double kappa_battery = 0.47;

    void validate() const;
};

// Per-billing-period effective rate for a compounding annual rate.
double quarterly_effective_rate(double annual, int periods_per_year);

// Scheduled service and replacement outlay for billing period q (1-based):
// a minor service every 5 years, and at the 10-year marks a major service
// plus inverter and battery replacement at their forecast-deflated prices.
// The inverter term prices the system's rated AC watts.
double maintenance_cost(int period_q, const MaintenanceParams& params, double rated_ac_watts,
                        double battery_capital, int periods_per_year);

// Net present value of the savings stream against capital and maintenance:
// savings escalate with electricity price growth and both streams discount
// at the real rate, quarter by quarter.
double npv(std::span<const double> savings_per_period, std::span<const double> maintenance_per_period,
           double capital_pv, double capital_battery, const EconomicAssumptions& assumptions);

// Modified internal rate of return of a period-indexed cashflow stream
// (element 0 is t=0), annualized from the per-period root. Undefined unless
// the stream has at least one negative and one positive entry.
std::optional<double> mirr(std::span<const double> cashflows, double finance_rate_per_period,
                           double reinvest_rate_per_period, int periods_per_year);

// Years until the cumulative discounted cashflow first reaches zero, with
// linear interpolation inside the crossing period. nullopt when the horizon
// ends negative. cashflows[0] is the (non-positive) capital outlay at t=0.
std::optional<double> discounted_payback(std::span<const double> cashflows, double discount_rate_per_period,
                                         int periods_per_year);

}  // namespace pvopt::economics
