#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <vector>

#include "pvopt/economics.hpp"

using namespace pvopt::economics;

TEST_CASE("quarterly effective rates reproduce the reference figures") {
    CHECK(quarterly_effective_rate(0.0, 4) == 0.0);

    // 3.92%/yr -> 0.97%/quarter, 2%/yr -> 0.50%/quarter at two decimals.
    const double rd = quarterly_effective_rate(0.0392, 4);
    const double re = quarterly_effective_rate(0.02, 4);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", rd * 100.0);
    CHECK(std::string(buf) == "0.97");
    std::snprintf(buf, sizeof(buf), "%.2f", re * 100.0);
    CHECK(std::string(buf) == "0.50");
}

TEST_CASE("maintenance schedule over an 80-quarter horizon") {
    const MaintenanceParams params;
    int nonzero = 0;
    for (int q = 1; q <= 80; ++q) {
        const double w = maintenance_cost(q, params, 5000.0, 10000.0, 4);
        if (q == 21 || q == 61) {
            CHECK(w == doctest::Approx(200.0));
            ++nonzero;
        } else if (q == 41) {
            // 400 + 0.69*0.41*5000 + 0.47*10000
            CHECK(w == doctest::Approx(6514.50).epsilon(1e-12));
            ++nonzero;
        } else {
            CHECK(w == 0.0);
        }
    }
    CHECK(nonzero == 3);
}

TEST_CASE("no maintenance falls in the first period") {
    CHECK(maintenance_cost(1, MaintenanceParams{}, 5000.0, 10000.0, 4) == 0.0);
}

TEST_CASE("minor service lands every five years") {
    CHECK(maintenance_cost(21, MaintenanceParams{}, 0.0, 0.0, 4) == doctest::Approx(200.0));
}

TEST_CASE("npv of an empty project is zero") {
    const std::vector<double> zero(8, 0.0);
    CHECK(npv(zero, zero, 0.0, 0.0, EconomicAssumptions{}) == 0.0);
}

TEST_CASE("npv degenerates to arithmetic with zero rates") {
    EconomicAssumptions a;
    a.real_discount_annual = 0.0;
    a.electricity_growth_annual = 0.0;
    const std::vector<double> savings{100.0};
    const std::vector<double> maint{0.0};
    CHECK(npv(savings, maint, 50.0, 0.0, a) == doctest::Approx(50.0).epsilon(1e-12));

    const std::vector<double> s8(8, 100.0), m8(8, 10.0);
    CHECK(npv(s8, m8, 300.0, 100.0, a) == doctest::Approx(8 * 100.0 - 8 * 10.0 - 400.0).epsilon(1e-12));
}

TEST_CASE("npv matches a term-by-term summation oracle") {
    // Q=8, constant $100 savings, rd=0.97%, re=0.50%, capital $500.
    EconomicAssumptions a;
    a.lifespan_years = 2;
    const double rd = quarterly_effective_rate(a.real_discount_annual, 4);
    const double re = quarterly_effective_rate(a.electricity_growth_annual, 4);
    double expected = -500.0;
    for (int q = 1; q <= 8; ++q) expected += 100.0 * std::pow(1.0 + re, q) / std::pow(1.0 + rd, q);

    const std::vector<double> savings(8, 100.0), maint(8, 0.0);
    CHECK(npv(savings, maint, 500.0, 0.0, a) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected > 290.0);  // sanity: escalation nearly offsets discounting
    CHECK(expected < 310.0);
}

TEST_CASE("npv decreases in capital") {
    const std::vector<double> savings(8, 100.0), maint(8, 0.0);
    const EconomicAssumptions a;
    CHECK(npv(savings, maint, 100.0, 0.0, a) > npv(savings, maint, 200.0, 0.0, a));
}

TEST_CASE("mirr closed form on a three-quarter stream") {
    const std::vector<double> flows{-100.0, 0.0, 0.0, 121.0};
    const auto result = mirr(flows, 0.0, 0.0, 4);
    REQUIRE(result.has_value());
    const double quarterly = std::pow(1.21, 1.0 / 3.0) - 1.0;
    CHECK(*result == doctest::Approx(std::pow(1.0 + quarterly, 4) - 1.0).epsilon(1e-12));
}

TEST_CASE("mirr is undefined for one-signed streams") {
    CHECK_FALSE(mirr(std::vector<double>{100.0, 10.0, 10.0}, 0.0, 0.0, 4).has_value());
    CHECK_FALSE(mirr(std::vector<double>{-100.0, -10.0}, 0.0, 0.0, 4).has_value());
}

TEST_CASE("mirr recovers the rate of a pure compounding stream") {
    // Outlay grows at exactly 2% per quarter and pays out at the horizon.
    const double rate = 0.02;
    const int n = 12;
    std::vector<double> flows(n + 1, 0.0);
    flows[0] = -1000.0;
    flows[n] = 1000.0 * std::pow(1.0 + rate, n);
    const auto result = mirr(flows, rate, rate, 4);
    REQUIRE(result.has_value());
    CHECK(*result == doctest::Approx(std::pow(1.0 + rate, 4) - 1.0).epsilon(1e-9));
}

TEST_CASE("payback of a zero outlay is immediate") {
    const std::vector<double> flows{0.0, 10.0};
    CHECK(discounted_payback(flows, 0.0, 4) == doctest::Approx(0.0));
}

TEST_CASE("payback crosses exactly after one year of equal returns") {
    std::vector<double> flows{-1000.0, 250.0, 250.0, 250.0, 250.0, 250.0};
    CHECK(*discounted_payback(flows, 0.0, 4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("payback matches a cumulative-sum oracle under discounting") {
    const double rd = 0.0097;
    std::vector<double> flows(41, 100.0);
    flows[0] = -1000.0;

    // Independent cumulative scan.
    double cum = -1000.0;
    double expected = -1.0;
    for (int t = 1; t <= 40; ++t) {
        const double inc = 100.0 / std::pow(1.0 + rd, t);
        if (cum + inc >= 0.0) {
            expected = (t - 1 + (-cum / inc)) / 4.0;
            break;
        }
        cum += inc;
    }
    REQUIRE(expected > 0.0);
    CHECK(*discounted_payback(flows, rd, 4) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("payback reports never when the horizon stays negative") {
    const std::vector<double> flows{-1000.0, 1.0, 1.0};
    CHECK_FALSE(discounted_payback(flows, 0.0, 4).has_value());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(quarterly_effective_rate(-1.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(maintenance_cost(0, MaintenanceParams{}, 0.0, 0.0, 4), std::invalid_argument);
    EconomicAssumptions a;
    a.lifespan_years = 0;
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
    const std::vector<double> s(4, 1.0), m(5, 0.0);
    CHECK_THROWS_AS(npv(s, m, 0.0, 0.0, EconomicAssumptions{}), std::invalid_argument);
}
