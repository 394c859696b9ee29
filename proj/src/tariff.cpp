#include "pvopt/tariff.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pvopt::tariff {

const char* period_name(Period p) {
    switch (p) {
        case Period::OffPeak: return "offpeak";
        case Period::Shoulder: return "shoulder";
        case Period::Peak: return "peak";
    }
    return "?";
}

std::optional<Period> period_from_name(const std::string& name) {
    if (name == "offpeak") return Period::OffPeak;
    if (name == "shoulder") return Period::Shoulder;
    if (name == "peak") return Period::Peak;
    return std::nullopt;
}

Period TouPlan::period_at(const CivilDate& date, int hour_slot) const {
    if (hour_slot < 0 || hour_slot > 23) throw std::invalid_argument("hour_slot out of [0, 23]");
    const bool weekend = is_weekend(date);
    for (const auto& season : seasons) {
        if (season.months[date.month - 1]) {
            return (weekend ? season.weekend : season.weekday).period_by_hour[hour_slot];
        }
    }
    return (weekend ? this->weekend : weekday).period_by_hour[hour_slot];
}

void TouPlan::validate() const {
    if (plan_id.empty()) throw std::invalid_argument("plan_id must not be empty");
    for (double r : import_rates)
        if (r < 0.0) throw std::invalid_argument("import rates must be >= 0");
    if (feed_in_tariff < 0.0) throw std::invalid_argument("feed-in tariff must be >= 0");
    for (const auto& o : feed_in_overrides)
        if (o && *o < 0.0) throw std::invalid_argument("feed-in override must be >= 0");
    if (daily_supply_charge < 0.0) throw std::invalid_argument("daily supply charge must be >= 0");
}

void BillingCalendar::validate() const {
    if (periods_per_year < 1) throw std::invalid_argument("periods_per_year must be >= 1");
    if (static_cast<int>(period_lengths.size()) != periods_per_year)
        throw std::invalid_argument("period_lengths must have one entry per billing period");
    const int total = std::accumulate(period_lengths.begin(), period_lengths.end(), 0);
    if (total != kDaysPerYear) throw std::invalid_argument("period lengths must sum to 365 days");
    if (horizon_periods < 1) throw std::invalid_argument("horizon must be >= 1 period");
}

TariffPeriodFlags classify_hour(const TouPlan& plan, const CivilDate& date, int hour_slot) {
    return TariffPeriodFlags::from(plan.period_at(date, hour_slot));
}

double base_period_cost(const TouPlan& plan, std::span<const double> load_kwh, const CivilDate& first_day) {
    if (load_kwh.size() % 24 != 0) throw std::invalid_argument("load series must cover whole days");
    const auto days = static_cast<int>(load_kwh.size() / 24);
    const std::int64_t day0 = days_from_civil(first_day);

    double cost = 0.0;
    for (int d = 0; d < days; ++d) {
        const CivilDate date = civil_from_days(day0 + d);
        for (int h = 0; h < 24; ++h) {
            cost += plan.import_rate(plan.period_at(date, h)) * load_kwh[static_cast<size_t>(d) * 24 + h];
        }
        cost += plan.daily_supply_charge;
    }
    return cost;
}

double pvbatt_period_cost(const TouPlan& plan, std::span<const double> net_balance_kwh, const CivilDate& first_day) {
    if (net_balance_kwh.size() % 24 != 0) throw std::invalid_argument("balance series must cover whole days");
    const auto days = static_cast<int>(net_balance_kwh.size() / 24);
    const std::int64_t day0 = days_from_civil(first_day);

    double cost = 0.0;
    for (int d = 0; d < days; ++d) {
        const CivilDate date = civil_from_days(day0 + d);
        for (int h = 0; h < 24; ++h) {
            const double bal = net_balance_kwh[static_cast<size_t>(d) * 24 + h];
            const Period p = plan.period_at(date, h);
            cost += plan.import_rate(p) * std::max(0.0, bal) - plan.feed_in_rate(p) * std::max(0.0, -bal);
        }
        cost += plan.daily_supply_charge;
    }
    return cost;
}

}  // namespace pvopt::tariff
