#include "pvopt/economics.hpp"

#include <cmath>
#include <stdexcept>

namespace pvopt::economics {

void EconomicAssumptions::validate() const {
    if (!(real_discount_annual > -1.0)) throw std::invalid_argument("discount rate must exceed -100%");
    if (!(electricity_growth_annual > -1.0)) throw std::invalid_argument("growth rate must exceed -100%");
    if (lifespan_years < 1) throw std::invalid_argument("lifespan must be >= 1 year");
    if (periods_per_year < 1) throw std::invalid_argument("billing periods per year must be >= 1");
}

void MaintenanceParams::validate() const {
    if (minor_service_cost < 0.0 || major_service_cost < 0.0 || inverter_unit_cost_per_w < 0.0)
        throw std::invalid_argument("maintenance costs must be >= 0");
    if (kappa_inverter < 0.0 || kappa_inverter > 1.0 || kappa_battery < 0.0 || kappa_battery > 1.0)
        throw std::invalid_argument("cost reduction factors out of [0, 1]");
}

double quarterly_effective_rate(double annual, int periods_per_year) {
    if (!(annual > -1.0)) throw std::invalid_argument("annual rate must exceed -100%");
    if (periods_per_year < 1) throw std::invalid_argument("periods per year must be >= 1");
    return std::pow(1.0 + annual, 1.0 / periods_per_year) - 1.0;
}

namespace {

// (q-1)/n is a positive integer: q lands on a service anniversary.
bool on_anniversary(int period_q, int every_periods) {
    const int offset = period_q - 1;
    return offset > 0 && offset % every_periods == 0;
}

}  // namespace

double maintenance_cost(int period_q, const MaintenanceParams& params, double rated_ac_watts,
                        double battery_capital, int periods_per_year) {
    if (period_q < 1) throw std::invalid_argument("billing period index is 1-based");
    params.validate();

    if (on_anniversary(period_q, 10 * periods_per_year)) {
        return params.major_service_cost + params.kappa_inverter * params.inverter_unit_cost_per_w * rated_ac_watts +
               params.kappa_battery * battery_capital;
    }
    if (on_anniversary(period_q, 5 * periods_per_year)) {
        return params.minor_service_cost;
    }
    return 0.0;
}

double npv(std::span<const double> savings_per_period, std::span<const double> maintenance_per_period,
           double capital_pv, double capital_battery, const EconomicAssumptions& assumptions) {
    assumptions.validate();
    if (savings_per_period.size() != maintenance_per_period.size())
        throw std::invalid_argument("savings and maintenance series must have equal length");

    const double rd = quarterly_effective_rate(assumptions.real_discount_annual, assumptions.periods_per_year);
    const double re = quarterly_effective_rate(assumptions.electricity_growth_annual, assumptions.periods_per_year);

    double total = 0.0;
    for (size_t i = 0; i < savings_per_period.size(); ++i) {
        const double q = static_cast<double>(i + 1);
        const double discount = std::pow(1.0 + rd, q);
        total += savings_per_period[i] * std::pow(1.0 + re, q) / discount;
        total -= maintenance_per_period[i] / discount;
    }
    return total - (capital_pv + capital_battery);
}

std::optional<double> mirr(std::span<const double> cashflows, double finance_rate_per_period,
                           double reinvest_rate_per_period, int periods_per_year) {
    if (cashflows.size() < 2) return std::nullopt;

    const auto n = static_cast<double>(cashflows.size() - 1);
    double pv_out = 0.0;  // negatives discounted to t = 0
    double fv_in = 0.0;   // positives compounded to t = n
    for (size_t t = 0; t < cashflows.size(); ++t) {
        const double c = cashflows[t];
        if (c < 0.0) pv_out += c / std::pow(1.0 + finance_rate_per_period, static_cast<double>(t));
        if (c > 0.0) fv_in += c * std::pow(1.0 + reinvest_rate_per_period, n - static_cast<double>(t));
    }
    if (pv_out == 0.0 || fv_in == 0.0) return std::nullopt;

    const double per_period = std::pow(fv_in / -pv_out, 1.0 / n) - 1.0;
    return std::pow(1.0 + per_period, static_cast<double>(periods_per_year)) - 1.0;
}

std::optional<double> discounted_payback(std::span<const double> cashflows, double discount_rate_per_period,
                                         int periods_per_year) {
    if (cashflows.empty()) return std::nullopt;
    if (cashflows[0] > 0.0) throw std::invalid_argument("cashflows[0] must be the non-positive capital outlay");

    double cumulative = cashflows[0];
    if (cumulative >= 0.0) return 0.0;
    for (size_t t = 1; t < cashflows.size(); ++t) {
        const double discounted = cashflows[t] / std::pow(1.0 + discount_rate_per_period, static_cast<double>(t));
        const double before = cumulative;
        cumulative += discounted;
        if (cumulative >= 0.0) {
            const double fraction = discounted > 0.0 ? -before / discounted : 1.0;
            return (static_cast<double>(t - 1) + fraction) / periods_per_year;
        }
    }
    return std::nullopt;
}

}  // namespace pvopt::economics
