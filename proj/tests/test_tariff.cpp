#include "doctest.h"

#include <random>
#include <vector>

#include "pvopt/tariff.hpp"

using namespace pvopt;
using namespace pvopt::tariff;

namespace {

// Weekday: off-peak 22-7, shoulder 7-14 and 20-22, peak 14-20. Weekend: all
// off-peak.
TouPlan tou_plan() {
    TouPlan p;
    p.plan_id = "test_tou";
    p.retailer = "Test";
    p.import_rates = {0.13, 0.21, 0.50};
    p.feed_in_tariff = 0.06;
    p.daily_supply_charge = 1.0;
    for (int h = 0; h < 24; ++h) {
        Period period = Period::OffPeak;
        if (h >= 7 && h < 14) period = Period::Shoulder;
        if (h >= 14 && h < 20) period = Period::Peak;
        if (h >= 20 && h < 22) period = Period::Shoulder;
        p.weekday.period_by_hour[h] = period;
        p.weekend.period_by_hour[h] = Period::OffPeak;
    }
    return p;
}

const CivilDate kWednesday{2015, 1, 7};
const CivilDate kSunday{2015, 1, 4};

}  // namespace

TEST_CASE("hours classify by schedule and day type") {
    const TouPlan plan = tou_plan();

    const TariffPeriodFlags peak = classify_hour(plan, kWednesday, 15);
    CHECK(peak.peak);
    CHECK_FALSE(peak.offpeak);
    CHECK_FALSE(peak.shoulder);

    const TariffPeriodFlags weekend = classify_hour(plan, kSunday, 15);
    CHECK(weekend.offpeak);
}

TEST_CASE("every hour of the week classifies into exactly one period") {
    const TouPlan plan = tou_plan();
    for (int day = 0; day < 7; ++day) {
        const CivilDate date = civil_from_days(days_from_civil({2015, 3, 2}) + day);
        for (int h = 0; h < 24; ++h) {
            CHECK(classify_hour(plan, date, h).valid());
        }
    }
}

TEST_CASE("seasonal overrides swap the schedule by month") {
    TouPlan plan = tou_plan();
    SeasonRule summer;
    summer.months[0] = summer.months[1] = summer.months[11] = true;  // Dec-Feb
    for (int h = 0; h < 24; ++h) {
        summer.weekday.period_by_hour[h] = Period::Peak;
        summer.weekend.period_by_hour[h] = Period::Peak;
    }
    plan.seasons.push_back(summer);

    CHECK(classify_hour(plan, {2015, 1, 7}, 3).peak);     // January: override
    CHECK(classify_hour(plan, {2015, 6, 10}, 3).offpeak); // June: default
}

TEST_CASE("base cost with zero load is the supply charge") {
    const TouPlan plan = tou_plan();
    const std::vector<double> load(90 * 24, 0.0);
    CHECK(base_period_cost(plan, load, {2015, 1, 1}) == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("base cost prices a single peak hour at the peak rate") {
    TouPlan plan = tou_plan();
    plan.daily_supply_charge = 0.0;
    std::vector<double> load(24, 0.0);
    load[15] = 1.0;  // Wednesday slot 15 is peak
    CHECK(base_period_cost(plan, load, kWednesday) == doctest::Approx(0.50).epsilon(1e-12));
}

TEST_CASE("base cost matches a brute-force re-accumulation") {
    const TouPlan plan = tou_plan();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::vector<double> load(3 * 24);
    for (auto& v : load) v = u(rng);

    const CivilDate first{2015, 1, 3};  // Saturday; spans a weekend boundary
    double expected = 0.0;
    for (int d = 0; d < 3; ++d) {
        const CivilDate date = civil_from_days(days_from_civil(first) + d);
        for (int h = 0; h < 24; ++h) {
            const auto flags = classify_hour(plan, date, h);
            const double rate = flags.peak ? 0.50 : (flags.shoulder ? 0.21 : 0.13);
            expected += rate * load[d * 24 + h];
        }
        expected += plan.daily_supply_charge;
    }
    CHECK(base_period_cost(plan, load, first) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("pv-battery cost credits exports at the feed-in rate") {
    TouPlan plan = tou_plan();
    plan.daily_supply_charge = 0.0;
    std::vector<double> balance(24, 0.0);
    balance[15] = -2.0;
    CHECK(pvbatt_period_cost(plan, balance, kWednesday) == doctest::Approx(-0.12).epsilon(1e-12));
}

TEST_CASE("pv-battery cost with zero balance is the supply charge") {
    const TouPlan plan = tou_plan();
    const std::vector<double> balance(7 * 24, 0.0);
    CHECK(pvbatt_period_cost(plan, balance, kSunday) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("pv-battery cost reduces to the base cost when balance equals load") {
    const TouPlan plan = tou_plan();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<double> load(14 * 24);
    for (auto& v : load) v = u(rng);

    const double base = base_period_cost(plan, load, {2015, 7, 1});
    const double pvbatt = pvbatt_period_cost(plan, load, {2015, 7, 1});
    CHECK(pvbatt == base);  // bitwise identical accumulation
}

TEST_CASE("per-period feed-in overrides take precedence") {
    TouPlan plan = tou_plan();
    plan.daily_supply_charge = 0.0;
    plan.feed_in_overrides[static_cast<int>(Period::Peak)] = 0.10;
    std::vector<double> balance(24, 0.0);
    balance[15] = -1.0;  // peak export
    balance[3] = -1.0;   // off-peak export at the default FiT
    CHECK(pvbatt_period_cost(plan, balance, kWednesday) == doctest::Approx(-0.16).epsilon(1e-12));
}

TEST_CASE("period cost is additive over disjoint day blocks") {
    const TouPlan plan = tou_plan();
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<double> load(6 * 24);
    for (auto& v : load) v = u(rng);

    const CivilDate first{2015, 2, 10};
    const double whole = base_period_cost(plan, load, first);
    const double part1 = base_period_cost(plan, std::span(load).subspan(0, 2 * 24), first);
    const double part2 = base_period_cost(plan, std::span(load).subspan(2 * 24),
                                          civil_from_days(days_from_civil(first) + 2));
    CHECK(whole == doctest::Approx(part1 + part2).epsilon(1e-12));
}

TEST_CASE("import cost is non-decreasing in each rate") {
    std::vector<double> load(24, 1.0);
    TouPlan plan = tou_plan();
    const double before = base_period_cost(plan, load, kWednesday);
    plan.import_rates[2] += 0.1;
    CHECK(base_period_cost(plan, load, kWednesday) > before);
}

TEST_CASE("series length must cover whole days") {
    const TouPlan plan = tou_plan();
    const std::vector<double> bad(25, 0.0);
    CHECK_THROWS_AS(base_period_cost(plan, bad, kWednesday), std::invalid_argument);
    CHECK_THROWS_AS(pvbatt_period_cost(plan, bad, kWednesday), std::invalid_argument);
}

TEST_CASE("billing calendar validation") {
    BillingCalendar cal;
    CHECK_NOTHROW(cal.validate());
    cal.period_lengths = {90, 91, 92, 91};
    CHECK_THROWS_AS(cal.validate(), std::invalid_argument);
}
