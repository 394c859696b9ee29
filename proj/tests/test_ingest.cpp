#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "pvopt/ingest.hpp"

using namespace pvopt;
using namespace pvopt::ingest;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = PVOPT_DATA_DIR;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pvopt_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p;
    }
};

// A minimal well-formed profile: header plus hourly rows for all of 2015.
std::string full_year_load(double kwh = 0.5, int skip_row = -1, bool duplicate_row = false) {
    std::string out = "timestamp,load_kwh\n";
    static constexpr int days_in_month[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    char buf[64];
    int row = 0;
    for (int m = 1; m <= 12; ++m)
        for (int d = 1; d <= days_in_month[m - 1]; ++d)
            for (int h = 0; h < 24; ++h) {
                if (row == skip_row) {
                    ++row;
                    continue;
                }
                std::snprintf(buf, sizeof(buf), "2015-%02d-%02dT%02d:00,%.3f\n", m, d, h, kwh);
                out += buf;
                if (duplicate_row && row == 100) out += buf;
                ++row;
            }
    return out;
}

}  // namespace

TEST_CASE("fixture load profile parses and validates") {
    const LoadProfile profile = load_profile(kDataDir / "fixtures" / "load_customer1.csv");
    CHECK(profile.kwh.size() == 8760);
    CHECK(profile.customer_id == "customer1");
    CHECK(profile.start_date == CivilDate{2015, 1, 1});
    double total = 0.0;
    for (double v : profile.kwh) {
        CHECK(v >= 0.0);
        total += v;
    }
    CHECK(total > 3000.0);
    CHECK(total < 12000.0);
}

TEST_CASE("fixture weather parses with consistent components") {
    const WeatherSeries weather = load_weather(kDataDir / "fixtures" / "weather_sydney.csv");
    CHECK(weather.years.size() == 2);
    CHECK(weather.location.latitude_deg == doctest::Approx(-33.86));
    for (const auto& y : weather.years) {
        for (int s = 0; s < kHoursPerYear; ++s) {
            CHECK(y.global_whm2[s] >= 0.0);
            CHECK(std::abs(y.global_whm2[s] - (y.beam_whm2[s] + y.diffuse_whm2[s])) <=
                  std::max(0.01 * y.global_whm2[s], 1.0));
        }
    }
    const WeatherYear avg = weather.averaged();
    CHECK(avg.global_whm2.size() == 8760);
}

TEST_CASE("fixture plans parse and partition the day") {
    const PlanSet plans = load_plans(kDataDir / "plans");
    CHECK(plans.plans.size() == 4);
    const auto& plan = plans.require("retailer_b_tou");
    CHECK(plan.retailer == "Retailer B");
    for (int h = 0; h < 24; ++h) {
        CHECK(tariff::classify_hour(plan, {2015, 1, 7}, h).valid());
        CHECK(tariff::classify_hour(plan, {2015, 1, 4}, h).valid());
    }
    CHECK(plan.period_at({2015, 1, 7}, 15) == tariff::Period::Peak);
    CHECK_THROWS_AS(plans.require("nope"), ParseError);
}

TEST_CASE("fixture catalogues parse") {
    const BatteryCatalogue batteries = load_battery_catalogue(kDataDir / "catalogues" / "batteries.json");
    CHECK(batteries.products.size() == 2);
    CHECK(batteries.require("tesla_powerwall2").capacity_kwh == doctest::Approx(13.5));
    CHECK(batteries.require("enphase_ac").rate_kwh_per_hour == doctest::Approx(0.26));

    const PvCatalogue panels = load_pv_catalogue(kDataDir / "catalogues" / "pv.json");
    CHECK(panels.require("trina_tsm_pc05a_280").rated_w == doctest::Approx(280.0));
    CHECK(panels.pricing.tiers.size() == 5);
}

TEST_CASE("run config resolves paths and referenced ids") {
    const RunConfig cfg = load_config(kDataDir / "config" / "fixture_small.json");
    CHECK(cfg.base_plan_id == "flat_base");
    CHECK(cfg.bounds.z_max == 12);
    CHECK(fs::exists(cfg.load_path));
    CHECK(fs::exists(cfg.weather_path));
    CHECK(cfg.qpso_settings.swarm.swarm_size == 16);
}

TEST_CASE("well-formed synthetic profile loads") {
    TempDir tmp;
    const LoadProfile p = load_profile(tmp.file("ok.csv", full_year_load()));
    CHECK(p.kwh.size() == 8760);
    CHECK(p.customer_id == "ok");
}

TEST_CASE("negative load reports the offending row") {
    TempDir tmp;
    std::string text = full_year_load();
    const auto pos = text.find("2015-01-02T05:00,0.500");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 22, "2015-01-02T05:00,-0.25");
    try {
        load_profile(tmp.file("neg.csv", text));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::NegativeValue);
        CHECK(std::string(e.what()).find("row 31") != std::string::npos);
    }
}

TEST_CASE("duplicate timestamps are malformed") {
    TempDir tmp;
    try {
        load_profile(tmp.file("dup.csv", full_year_load(0.5, -1, true)));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::MalformedTimestamp);
    }
}

TEST_CASE("gaps are rejected by default and filled under the policy") {
    TempDir tmp;
    const std::string gappy = full_year_load(0.5, 50);
    try {
        load_profile(tmp.file("gap.csv", gappy));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::MissingSlot);
    }

    const LoadProfile filled = load_profile(tmp.file("gap2.csv", gappy), 3);
    CHECK(filled.kwh.size() == 8760);
    CHECK(filled.kwh[50] == doctest::Approx(0.5));  // linear between equal neighbours
}

TEST_CASE("malformed timestamps name the row") {
    TempDir tmp;
    std::string text = full_year_load();
    const auto pos = text.find("2015-01-01T03:00");
    text.replace(pos, 16, "2015-13-01T03:00");
    try {
        load_profile(tmp.file("bad.csv", text));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::MalformedTimestamp);
        CHECK(std::string(e.what()).find("month") != std::string::npos);
    }
}

TEST_CASE("leap years are rejected") {
    TempDir tmp;
    std::string text = "timestamp,load_kwh\n2016-01-01T00:00,0.5\n";
    CHECK_THROWS_AS(load_profile(tmp.file("leap.csv", text)), ParseError);
}

TEST_CASE("weather with inconsistent components is rejected") {
    TempDir tmp;
    std::string text = "# latitude: -33.9\n# longitude: 151.2\n# timezone: 10\n";
    text += "timestamp,global_whm2,beam_whm2,diffuse_whm2,ambient_c\n";
    text += "2015-01-01T00:00,500,100,100,20\n";
    try {
        load_weather(tmp.file("bad.csv", text));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::SchemaViolation);
        CHECK(std::string(e.what()).find("beam+diffuse") != std::string::npos);
    }
}

TEST_CASE("weather requires location metadata") {
    TempDir tmp;
    std::string text = "timestamp,global_whm2,beam_whm2,diffuse_whm2,ambient_c\n2015-01-01T00:00,0,0,0,20\n";
    CHECK_THROWS_AS(load_weather(tmp.file("meta.csv", text)), ParseError);
}

TEST_CASE("plan with an uncovered hour is rejected at load") {
    TempDir tmp;
    const std::string plan = R"({
      "plan_id": "broken", "retailer": "X",
      "rates": {"offpeak": 0.1, "shoulder": 0.2, "peak": 0.3},
      "feed_in_tariff": 0.05, "daily_supply_charge": 0.8,
      "schedule": {
        "weekday": [{"hours": "0-23", "period": "offpeak"}],
        "weekend": [{"hours": "0-24", "period": "offpeak"}]
      }
    })";
    try {
        load_plan_file(tmp.file("broken.json", plan));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::SchemaViolation);
        CHECK(std::string(e.what()).find("hour slot 23") != std::string::npos);
    }
}

TEST_CASE("plan with a double-covered hour is rejected") {
    TempDir tmp;
    const std::string plan = R"({
      "plan_id": "overlap", "retailer": "X",
      "rates": {"offpeak": 0.1, "shoulder": 0.2, "peak": 0.3},
      "feed_in_tariff": 0.05, "daily_supply_charge": 0.8,
      "schedule": {
        "weekday": [{"hours": "0-13", "period": "offpeak"}, {"hours": "12-24", "period": "peak"}],
        "weekend": [{"hours": "0-24", "period": "offpeak"}]
      }
    })";
    try {
        load_plan_file(tmp.file("overlap.json", plan));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("more than once") != std::string::npos);
    }
}

TEST_CASE("catalogue entries violating invariants are rejected with context") {
    TempDir tmp;
    const std::string cat = R"({"products": [{
      "id": "bad", "name": "Bad", "capacity_kwh": 10.0, "eol_capacity_kwh": 12.0,
      "cycle_life": 1000, "max_dod": 1.0, "rate_kw": 5.0,
      "roundtrip_efficiency": 0.9, "unit_price": 1000
    }]})";
    try {
        load_battery_catalogue(tmp.file("bad.json", cat));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::SchemaViolation);
        CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
}

TEST_CASE("plan serialization round-trips semantically") {
    TempDir tmp;
    const PlanSet plans = load_plans(kDataDir / "plans");
    for (const auto& [id, plan] : plans.plans) {
        const fs::path p = tmp.file(id + ".json", serialize_plan(plan));
        const tariff::TouPlan again = load_plan_file(p);
        CHECK(again.plan_id == plan.plan_id);
        CHECK(again.retailer == plan.retailer);
        CHECK(again.import_rates == plan.import_rates);
        CHECK(again.feed_in_tariff == plan.feed_in_tariff);
        CHECK(again.daily_supply_charge == plan.daily_supply_charge);
        for (int h = 0; h < 24; ++h) {
            CHECK(again.weekday.period_by_hour[h] == plan.weekday.period_by_hour[h]);
            CHECK(again.weekend.period_by_hour[h] == plan.weekend.period_by_hour[h]);
        }
    }
}

TEST_CASE("load profile writer round-trips") {
    TempDir tmp;
    const LoadProfile profile = load_profile(kDataDir / "fixtures" / "load_customer1.csv");
    write_load_profile(tmp.path / "copy.csv", profile);
    const LoadProfile again = load_profile(tmp.path / "copy.csv");
    CHECK(again.customer_id == profile.customer_id);
    CHECK(again.kwh == profile.kwh);
}

TEST_CASE("weather writer round-trips") {
    TempDir tmp;
    WeatherSeries series;
    series.location = {-33.86, 151.21, 10.0};
    series.years.resize(1);
    auto& y = series.years[0];
    y.global_whm2.assign(kHoursPerYear, 0.0);
    y.beam_whm2.assign(kHoursPerYear, 0.0);
    y.diffuse_whm2.assign(kHoursPerYear, 0.0);
    y.ambient_c.assign(kHoursPerYear, 18.0);
    y.global_whm2[12] = 500.25;
    y.beam_whm2[12] = 300.25;
    y.diffuse_whm2[12] = 200.0;

    write_weather(tmp.path / "w.csv", series);
    const WeatherSeries again = load_weather(tmp.path / "w.csv");
    CHECK(again.years.size() == 1);
    CHECK(again.years[0].global_whm2[12] == doctest::Approx(500.25));
    CHECK(again.years[0].ambient_c[100] == doctest::Approx(18.0));
}
