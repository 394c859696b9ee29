#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvopt/calendar.hpp"

namespace pvopt::tariff {

enum class Period { OffPeak = 0, Shoulder = 1, Peak = 2 };

const char* period_name(Period p);
std::optional<Period> period_from_name(const std::string& name);

// Indicator flags for the tariff period an hour falls in. Exactly one is set.
struct TariffPeriodFlags {
    bool offpeak = false;
    bool shoulder = false;
    bool peak = false;

    static TariffPeriodFlags from(Period p) {
        TariffPeriodFlags f;
        if (p == Period::OffPeak) f.offpeak = true;
        if (p == Period::Shoulder) f.shoulder = true;
        if (p == Period::Peak) f.peak = true;
        return f;
    }

    bool valid() const { return (offpeak ? 1 : 0) + (shoulder ? 1 : 0) + (peak ? 1 : 0) == 1; }
    Period period() const { return peak ? Period::Peak : (shoulder ? Period::Shoulder : Period::OffPeak); }
};

// One day-type's hour-by-hour period assignment. Always covers all 24 slots.
struct DaySchedule {
    std::array<Period, 24> period_by_hour{};
};

// Optional month-scoped override of the weekday/weekend schedules.
struct SeasonRule {
    std::array<bool, 12> months{};  // index 0 = January
    DaySchedule weekday;
    DaySchedule weekend;
};

// A retail electricity plan: TOU import rates, feed-in credit, daily supply
// charge and the schedule that classifies each hour. Flat plans are TOU plans
// with identical rates.
struct TouPlan {
    std::string plan_id;
    std::string retailer;
    std::array<double, 3> import_rates{};               // $/kWh indexed by Period
    double feed_in_tariff = 0.0;                        // $/kWh, constant default
    std::array<std::optional<double>, 3> feed_in_overrides{};  // optional per-period FiT
    double daily_supply_charge = 0.0;                   // $/day
    DaySchedule weekday;
    DaySchedule weekend;
    std::vector<SeasonRule> seasons;

    Period period_at(const CivilDate& date, int hour_slot) const;
    double import_rate(Period p) const { return import_rates[static_cast<int>(p)]; }
    double feed_in_rate(Period p) const {
        const auto& o = feed_in_overrides[static_cast<int>(p)];
        return o ? *o : feed_in_tariff;
    }

    void validate() const;
};

struct BillingCalendar {
    int periods_per_year = 4;
    std::vector<int> period_lengths = {90, 91, 92, 92};  // days per period, sums to 365
    int horizon_periods = 80;

    void validate() const;
};

TariffPeriodFlags classify_hour(const TouPlan& plan, const CivilDate& date, int hour_slot);

// Billing-period electricity cost without a PV-battery system: TOU import
// rate on every load hour plus the daily supply charge. The series must hold
// a whole number of days starting at first_day.
double base_period_cost(const TouPlan& plan, std::span<const double> load_kwh, const CivilDate& first_day);

// Billing-period cost with a PV-battery system: positive net balance imports
// at the TOU rate, negative balance exports at the feed-in rate, plus the
// daily supply charge.
double pvbatt_period_cost(const TouPlan& plan, std::span<const double> net_balance_kwh, const CivilDate& first_day);

}  // namespace pvopt::tariff
