#include "pvopt/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace pvopt::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct HourStamp {
    CivilDate date;
    int hour = 0;

    std::int64_t absolute_hours() const { return days_from_civil(date) * 24 + hour; }
};

[[noreturn]] void fail(ErrorKind kind, const fs::path& file, const std::string& detail) {
    throw ParseError(kind, file.string(), detail);
}

int days_in_month(int year, int month) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

HourStamp parse_timestamp(const fs::path& file, size_t row, const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    const int fields = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    const auto bad = [&](const std::string& why) {
        fail(ErrorKind::MalformedTimestamp, file, "row " + std::to_string(row) + ": " + why + " in '" + text + "'");
    };
    if (fields < 5) bad("expected ISO-8601 local timestamp (YYYY-MM-DDTHH:MM)");
    if (mo < 1 || mo > 12) bad("month out of range");
    if (d < 1 || d > days_in_month(y, mo)) bad("day out of range");
    if (h < 0 || h > 23) bad("hour out of range");
    if (mi != 0 || s != 0) bad("timestamps must land on whole hours");
    return {{y, mo, d}, h};
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const fs::path& file, size_t row, const std::string& column, const std::string& text) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(ErrorKind::SchemaViolation, file,
             "row " + std::to_string(row) + ": column '" + column + "' is not a number: '" + text + "'");
    }
}

// Reads a CSV with optional leading '# key: value' metadata lines.
struct CsvFile {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::pair<size_t, std::vector<std::string>>> rows;  // (1-based row, cells)
};

CsvFile read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, path, "cannot open file");

    CsvFile out;
    std::string line;
    size_t row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(1, colon - 1);
                std::string value = line.substr(colon + 1);
                const auto trim = [](std::string& s) {
                    s.erase(0, s.find_first_not_of(" \t"));
                    s.erase(s.find_last_not_of(" \t") + 1);
                };
                trim(key);
                trim(value);
                out.metadata[key] = value;
            }
            continue;
        }
        if (!header_seen) {
            out.header = split_csv_row(line);
            header_seen = true;
            continue;
        }
        out.rows.emplace_back(row, split_csv_row(line));
    }
    if (!header_seen) fail(ErrorKind::SchemaViolation, path, "missing header row");
    return out;
}

void require_header(const fs::path& path, const CsvFile& csv, const std::vector<std::string>& expected) {
    if (csv.header != expected) {
        std::string want;
        for (const auto& c : expected) want += (want.empty() ? "" : ",") + c;
        fail(ErrorKind::SchemaViolation, path, "header must be exactly '" + want + "'");
    }
}

void require_year_start(const fs::path& path, const HourStamp& first) {
    if (first.date.month != 1 || first.date.day != 1 || first.hour != 0)
        fail(ErrorKind::SchemaViolation, path, "series must begin at January 1, 00:00");
    if (is_leap_year(first.date.year))
        fail(ErrorKind::SchemaViolation, path,
             "year " + std::to_string(first.date.year) + " is a leap year; supply a 365-day year");
}

json parse_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, path, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::SchemaViolation, path, std::string("invalid JSON: ") + e.what());
    }
}

const json& require_field(const fs::path& path, const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) fail(ErrorKind::SchemaViolation, path, where + ": missing field '" + key + "'");
    return j.at(key);
}

double require_number(const fs::path& path, const json& j, const std::string& key, const std::string& where) {
    const json& v = require_field(path, j, key, where);
    if (!v.is_number()) fail(ErrorKind::SchemaViolation, path, where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::string require_string(const fs::path& path, const json& j, const std::string& key, const std::string& where) {
    const json& v = require_field(path, j, key, where);
    if (!v.is_string()) fail(ErrorKind::SchemaViolation, path, where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

// "A-B" covers slots A..B-1, wrapping past midnight when B <= A.
std::pair<int, int> parse_hour_range(const fs::path& path, const std::string& text, const std::string& where) {
    int a = -1, b = -1;
    if (std::sscanf(text.c_str(), "%d-%d", &a, &b) != 2 || a < 0 || a > 23 || b < 1 || b > 24)
        fail(ErrorKind::SchemaViolation, path, where + ": bad hour range '" + text + "' (want 'start-end', 0-24)");
    return {a, b};
}

tariff::DaySchedule parse_day_schedule(const fs::path& path, const json& entries, const std::string& where) {
    if (!entries.is_array() || entries.empty())
        fail(ErrorKind::SchemaViolation, path, where + ": must be a non-empty array of {hours, period}");

    std::array<int, 24> covered{};
    tariff::DaySchedule sched;
    for (const auto& e : entries) {
        const std::string range = require_string(path, e, "hours", where);
        const std::string period_text = require_string(path, e, "period", where);
        const auto period = tariff::period_from_name(period_text);
        if (!period)
            fail(ErrorKind::SchemaViolation, path,
                 where + ": unknown period '" + period_text + "' (want offpeak|shoulder|peak)");
        auto [a, b] = parse_hour_range(path, range, where);
        int h = a;
        do {
            sched.period_by_hour[h] = *period;
            ++covered[h];
            h = (h + 1) % 24;
        } while (h != b % 24);
    }
    for (int h = 0; h < 24; ++h) {
        if (covered[h] == 0)
            fail(ErrorKind::SchemaViolation, path, where + ": hour slot " + std::to_string(h) + " is not covered");
        if (covered[h] > 1)
            fail(ErrorKind::SchemaViolation, path,
                 where + ": hour slot " + std::to_string(h) + " is covered more than once");
    }
    return sched;
}

json day_schedule_to_json(const tariff::DaySchedule& sched) {
    json entries = json::array();
    int start = 0;
    for (int h = 1; h <= 24; ++h) {
        if (h == 24 || sched.period_by_hour[h] != sched.period_by_hour[start]) {
            entries.push_back({{"hours", std::to_string(start) + "-" + std::to_string(h)},
                               {"period", tariff::period_name(sched.period_by_hour[start])}});
            start = h;
        }
    }
    return entries;
}

}  // namespace

void LoadProfile::validate() const {
    if (static_cast<int>(kwh.size()) != kHoursPerYear)
        throw std::invalid_argument("load profile must hold 8760 hourly values");
    for (double v : kwh)
        if (v < 0.0) throw std::invalid_argument("load values must be >= 0");
}

void WeatherSeries::validate() const {
    location.validate();
    if (years.empty()) throw std::invalid_argument("weather series must hold at least one year");
    for (const auto& y : years) {
        if (static_cast<int>(y.global_whm2.size()) != kHoursPerYear ||
            static_cast<int>(y.beam_whm2.size()) != kHoursPerYear ||
            static_cast<int>(y.diffuse_whm2.size()) != kHoursPerYear ||
            static_cast<int>(y.ambient_c.size()) != kHoursPerYear)
            throw std::invalid_argument("each weather year must hold 8760 hourly values");
    }
}

WeatherYear WeatherSeries::averaged() const {
    WeatherYear avg;
    avg.global_whm2.assign(kHoursPerYear, 0.0);
    avg.beam_whm2.assign(kHoursPerYear, 0.0);
    avg.diffuse_whm2.assign(kHoursPerYear, 0.0);
    avg.ambient_c.assign(kHoursPerYear, 0.0);
    const double n = static_cast<double>(years.size());
    for (const auto& y : years) {
        for (int s = 0; s < kHoursPerYear; ++s) {
            avg.global_whm2[s] += y.global_whm2[s] / n;
            avg.beam_whm2[s] += y.beam_whm2[s] / n;
            avg.diffuse_whm2[s] += y.diffuse_whm2[s] / n;
            avg.ambient_c[s] += y.ambient_c[s] / n;
        }
    }
    return avg;
}

const battery::BatteryUnitSpec& BatteryCatalogue::require(const std::string& id) const {
    const auto it = products.find(id);
    if (it == products.end()) throw ParseError(ErrorKind::UnknownReference, "battery catalogue", "no product '" + id + "'");
    return it->second;
}

const pv::PvPanelSpec& PvCatalogue::require(const std::string& id) const {
    const auto it = panels.find(id);
    if (it == panels.end()) throw ParseError(ErrorKind::UnknownReference, "pv catalogue", "no panel '" + id + "'");
    return it->second;
}

const tariff::TouPlan& PlanSet::require(const std::string& id) const {
    const auto it = plans.find(id);
    if (it == plans.end()) throw ParseError(ErrorKind::UnknownReference, "plan set", "no plan '" + id + "'");
    return it->second;
}

void SearchBounds::validate() const {
    if (z_max < 0 || x_max < 0) throw std::invalid_argument("Z_max and X_max must be >= 0");
    if (tilt_min < 0 || tilt_max > 180 || tilt_min > tilt_max) throw std::invalid_argument("tilt bounds out of [0, 180]");
    if (azimuth_min <= -180 || azimuth_max > 180 || azimuth_min > azimuth_max)
        throw std::invalid_argument("azimuth bounds out of (-180, 180]");
    if (tilt_step < 1 || azimuth_step < 1) throw std::invalid_argument("angle steps must be >= 1");
}

LoadProfile load_profile(const fs::path& path, int gap_fill_max_hours) {
    const CsvFile csv = read_csv(path);
    require_header(path, csv, {"timestamp", "load_kwh"});
    if (csv.rows.empty()) fail(ErrorKind::SchemaViolation, path, "no data rows");

    LoadProfile profile;
    profile.customer_id = csv.metadata.count("customer") ? csv.metadata.at("customer") : path.stem().string();

    std::optional<std::int64_t> prev_abs;
    std::optional<double> prev_value;
    std::int64_t first_abs = 0;
    int filled = 0;

    for (const auto& [row, cells] : csv.rows) {
        if (cells.size() != 2)
            fail(ErrorKind::SchemaViolation, path, "row " + std::to_string(row) + ": expected 2 columns");
        const HourStamp stamp = parse_timestamp(path, row, cells[0]);
        const double value = parse_number(path, row, "load_kwh", cells[1]);
        if (value < 0.0)
            fail(ErrorKind::NegativeValue, path, "row " + std::to_string(row) + ": negative load " + cells[1]);

        const std::int64_t abs = stamp.absolute_hours();
        if (!prev_abs) {
            require_year_start(path, stamp);
            profile.start_date = stamp.date;
            first_abs = abs;
        } else {
            if (abs <= *prev_abs)
                fail(ErrorKind::MalformedTimestamp, path,
                     "row " + std::to_string(row) + ": duplicate or out-of-order timestamp '" + cells[0] + "'");
            const std::int64_t gap = abs - *prev_abs - 1;
            if (gap > 0) {
                if (gap > gap_fill_max_hours)
                    fail(ErrorKind::MissingSlot, path,
                         "row " + std::to_string(row) + ": " + std::to_string(gap) + " missing hour(s) before '" +
                             cells[0] + "'");
                for (std::int64_t k = 1; k <= gap; ++k) {
                    const double t = static_cast<double>(k) / static_cast<double>(gap + 1);
                    profile.kwh.push_back(*prev_value + t * (value - *prev_value));
                }
                filled += static_cast<int>(gap);
            }
        }
        profile.kwh.push_back(value);
        prev_abs = abs;
        prev_value = value;
    }

    if (filled > 0)
        std::cerr << "[ingest] " << path.string() << ": filled " << filled << " missing hour(s) by interpolation\n";
    if (static_cast<int>(profile.kwh.size()) != kHoursPerYear)
        fail(ErrorKind::MissingSlot, path,
             "expected 8760 hourly values, found " + std::to_string(profile.kwh.size()));
    (void)first_abs;
    profile.validate();
    return profile;
}

WeatherSeries load_weather(const fs::path& path) {
    const CsvFile csv = read_csv(path);
    require_header(path, csv, {"timestamp", "global_whm2", "beam_whm2", "diffuse_whm2", "ambient_c"});

    WeatherSeries series;
    const auto meta_number = [&](const std::string& key) {
        if (!csv.metadata.count(key))
            fail(ErrorKind::SchemaViolation, path, "missing '# " + key + ": ...' metadata line");
        return parse_number(path, 0, key, csv.metadata.at(key));
    };
    series.location.latitude_deg = meta_number("latitude");
    series.location.longitude_deg = meta_number("longitude");
    series.location.timezone_hours = meta_number("timezone");
    series.location.validate();

    WeatherYear current;
    std::optional<std::int64_t> prev_abs;
    bool first_row = true;

    const auto close_year = [&](size_t row) {
        if (static_cast<int>(current.global_whm2.size()) != kHoursPerYear)
            fail(ErrorKind::MissingSlot, path,
                 "row " + std::to_string(row) + ": weather year ended with " +
                     std::to_string(current.global_whm2.size()) + " of 8760 hours");
        series.years.push_back(std::move(current));
        current = WeatherYear{};
    };

    for (const auto& [row, cells] : csv.rows) {
        if (cells.size() != 5)
            fail(ErrorKind::SchemaViolation, path, "row " + std::to_string(row) + ": expected 5 columns");
        const HourStamp stamp = parse_timestamp(path, row, cells[0]);
        const double g = parse_number(path, row, "global_whm2", cells[1]);
        const double b = parse_number(path, row, "beam_whm2", cells[2]);
        const double d = parse_number(path, row, "diffuse_whm2", cells[3]);
        const double t = parse_number(path, row, "ambient_c", cells[4]);
        if (g < 0.0 || b < 0.0 || d < 0.0)
            fail(ErrorKind::NegativeValue, path, "row " + std::to_string(row) + ": negative insolation");
        // The components must reassemble the global value (1% of global or
        // 1 Wh/m² on overcast slots, whichever is looser).
        if (std::abs(g - (b + d)) > std::max(0.01 * g, 1.0))
            fail(ErrorKind::SchemaViolation, path,
                 "row " + std::to_string(row) + ": global " + cells[1] + " != beam+diffuse within 1%");

        const std::int64_t abs = stamp.absolute_hours();
        const bool year_boundary = stamp.date.month == 1 && stamp.date.day == 1 && stamp.hour == 0;
        if (first_row) {
            require_year_start(path, stamp);
            series.start_date = stamp.date;
            first_row = false;
        } else if (year_boundary && !current.global_whm2.empty()) {
            close_year(row);
            require_year_start(path, stamp);
        } else {
            if (abs != *prev_abs + 1)
                fail(abs <= *prev_abs ? ErrorKind::MalformedTimestamp : ErrorKind::MissingSlot, path,
                     "row " + std::to_string(row) + ": non-consecutive timestamp '" + cells[0] + "'");
        }
        current.global_whm2.push_back(g);
        current.beam_whm2.push_back(b);
        current.diffuse_whm2.push_back(d);
        current.ambient_c.push_back(t);
        prev_abs = abs;
    }
    if (first_row) fail(ErrorKind::SchemaViolation, path, "no data rows");
    close_year(csv.rows.back().first);

    series.validate();
    return series;
}

tariff::TouPlan load_plan_file(const fs::path& path) {
    const json j = parse_json_file(path);
    const std::string where = "plan";

    tariff::TouPlan plan;
    plan.plan_id = require_string(path, j, "plan_id", where);
    plan.retailer = require_string(path, j, "retailer", where);

    const json& rates = require_field(path, j, "rates", where);
    plan.import_rates[0] = require_number(path, rates, "offpeak", "rates");
    plan.import_rates[1] = require_number(path, rates, "shoulder", "rates");
    plan.import_rates[2] = require_number(path, rates, "peak", "rates");
    plan.feed_in_tariff = require_number(path, j, "feed_in_tariff", where);
    plan.daily_supply_charge = require_number(path, j, "daily_supply_charge", where);

    if (j.contains("feed_in_overrides")) {
        for (const auto& [key, value] : j.at("feed_in_overrides").items()) {
            const auto period = tariff::period_from_name(key);
            if (!period || !value.is_number())
                fail(ErrorKind::SchemaViolation, path, "feed_in_overrides: bad entry '" + key + "'");
            plan.feed_in_overrides[static_cast<int>(*period)] = value.get<double>();
        }
    }

    const json& sched = require_field(path, j, "schedule", where);
    plan.weekday = parse_day_schedule(path, require_field(path, sched, "weekday", "schedule"), "schedule.weekday");
    plan.weekend = parse_day_schedule(path, require_field(path, sched, "weekend", "schedule"), "schedule.weekend");

    if (j.contains("seasons")) {
        for (const auto& s : j.at("seasons")) {
            tariff::SeasonRule rule;
            const json& months = require_field(path, s, "months", "seasons");
            if (!months.is_array() || months.empty())
                fail(ErrorKind::SchemaViolation, path, "seasons: 'months' must be a non-empty array");
            for (const auto& m : months) {
                if (!m.is_number_integer() || m.get<int>() < 1 || m.get<int>() > 12)
                    fail(ErrorKind::SchemaViolation, path, "seasons: month out of 1..12");
                rule.months[m.get<int>() - 1] = true;
            }
            rule.weekday = parse_day_schedule(path, require_field(path, s, "weekday", "seasons"), "seasons.weekday");
            rule.weekend = parse_day_schedule(path, require_field(path, s, "weekend", "seasons"), "seasons.weekend");
            plan.seasons.push_back(rule);
        }
    }

    try {
        plan.validate();
    } catch (const std::exception& e) {
        fail(ErrorKind::SchemaViolation, path, e.what());
    }
    return plan;
}

PlanSet load_plans(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ParseError(ErrorKind::Io, dir.string(), "not a directory");
    PlanSet set;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        tariff::TouPlan plan = load_plan_file(f);
        if (set.plans.count(plan.plan_id))
            fail(ErrorKind::SchemaViolation, f, "duplicate plan_id '" + plan.plan_id + "'");
        set.plans.emplace(plan.plan_id, std::move(plan));
    }
    if (set.plans.empty()) throw ParseError(ErrorKind::SchemaViolation, dir.string(), "no plan files found");
    return set;
}

BatteryCatalogue load_battery_catalogue(const fs::path& path) {
    const json j = parse_json_file(path);
    BatteryCatalogue cat;
    const json& products = require_field(path, j, "products", "catalogue");
    if (!products.is_array() || products.empty())
        fail(ErrorKind::SchemaViolation, path, "'products' must be a non-empty array");
    for (const auto& p : products) {
        battery::BatteryUnitSpec spec;
        spec.id = require_string(path, p, "id", "product");
        const std::string where = "product '" + spec.id + "'";
        spec.name = require_string(path, p, "name", where);
        spec.capacity_kwh = require_number(path, p, "capacity_kwh", where);
        spec.eol_capacity_kwh = require_number(path, p, "eol_capacity_kwh", where);
        spec.cycle_life = require_number(path, p, "cycle_life", where);
        spec.max_dod = require_number(path, p, "max_dod", where);
        spec.rate_kwh_per_hour = require_number(path, p, "rate_kw", where);
        spec.roundtrip_efficiency = require_number(path, p, "roundtrip_efficiency", where);
        spec.unit_price = require_number(path, p, "unit_price", where);
        try {
            spec.validate();
        } catch (const std::exception& e) {
            fail(ErrorKind::SchemaViolation, path, where + ": " + e.what());
        }
        if (cat.products.count(spec.id)) fail(ErrorKind::SchemaViolation, path, "duplicate product id '" + spec.id + "'");
        cat.products.emplace(spec.id, std::move(spec));
    }
    return cat;
}

PvCatalogue load_pv_catalogue(const fs::path& path) {
    const json j = parse_json_file(path);
    PvCatalogue cat;
    const json& panels = require_field(path, j, "panels", "catalogue");
    if (!panels.is_array() || panels.empty()) fail(ErrorKind::SchemaViolation, path, "'panels' must be a non-empty array");
    for (const auto& p : panels) {
        pv::PvPanelSpec spec;
        spec.id = require_string(path, p, "id", "panel");
        const std::string where = "panel '" + spec.id + "'";
        spec.name = require_string(path, p, "name", where);
        spec.area_m2 = require_number(path, p, "area_m2", where);
        spec.eta_stc = require_number(path, p, "eta_stc", where);
        spec.mu_mpp_per_degc = require_number(path, p, "mu_mpp_per_degc", where);
        spec.t_noct_c = require_number(path, p, "t_noct_c", where);
        spec.rated_w = require_number(path, p, "rated_w", where);
        spec.annual_degradation = require_number(path, p, "annual_degradation", where);
        try {
            spec.validate();
        } catch (const std::exception& e) {
            fail(ErrorKind::SchemaViolation, path, where + ": " + e.what());
        }
        if (cat.panels.count(spec.id)) fail(ErrorKind::SchemaViolation, path, "duplicate panel id '" + spec.id + "'");
        cat.panels.emplace(spec.id, std::move(spec));
    }

    const json& pricing = require_field(path, j, "pricing", "catalogue");
    const json& tiers = require_field(path, pricing, "tiers", "pricing");
    if (!tiers.is_array() || tiers.empty()) fail(ErrorKind::SchemaViolation, path, "'pricing.tiers' must be non-empty");
    cat.pricing.tiers.clear();
    for (const auto& t : tiers) {
        cat.pricing.tiers.push_back(
            {require_number(path, t, "system_kw", "tier"), require_number(path, t, "price_per_w", "tier")});
    }
    cat.pricing.stc_multiplier = require_number(path, pricing, "stc_multiplier", "pricing");
    cat.pricing.stc_price = require_number(path, pricing, "stc_price", "pricing");
    if (pricing.contains("floor_certificates")) cat.pricing.floor_certificates = pricing.at("floor_certificates").get<bool>();
    try {
        cat.pricing.validate();
    } catch (const std::exception& e) {
        fail(ErrorKind::SchemaViolation, path, std::string("pricing: ") + e.what());
    }
    return cat;
}

RunConfig load_config(const fs::path& path) {
    const json j = parse_json_file(path);
    RunConfig cfg;
    cfg.config_dir = fs::absolute(path).parent_path();

    const json& data = require_field(path, j, "data", "config");
    const auto resolve = [&](const std::string& key) {
        const fs::path p = require_string(path, data, key, "data");
        return p.is_absolute() ? p : cfg.config_dir / p;
    };
    cfg.load_path = resolve("load");
    cfg.weather_path = resolve("weather");
    cfg.plans_dir = resolve("plans_dir");
    cfg.battery_catalogue_path = resolve("battery_catalogue");
    cfg.pv_catalogue_path = resolve("pv_catalogue");

    cfg.base_plan_id = require_string(path, j, "base_plan_id", "config");
    for (const auto& p : require_field(path, j, "candidate_plan_ids", "config"))
        cfg.candidate_plan_ids.push_back(p.get<std::string>());
    for (const auto& p : require_field(path, j, "battery_product_ids", "config"))
        cfg.battery_product_ids.push_back(p.get<std::string>());
    cfg.pv_panel_id = require_string(path, j, "pv_panel_id", "config");
    if (j.contains("modes")) {
        cfg.modes.clear();
        for (const auto& m : j.at("modes")) {
            const int mode = m.get<int>();
            if (mode < 1 || mode > 4) fail(ErrorKind::SchemaViolation, path, "modes: entries must be 1..4");
            cfg.modes.push_back(mode);
        }
        if (cfg.modes.empty()) fail(ErrorKind::SchemaViolation, path, "modes: must be non-empty");
    }

    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        if (b.contains("z_max")) cfg.bounds.z_max = b.at("z_max").get<int>();
        if (b.contains("x_max")) cfg.bounds.x_max = b.at("x_max").get<int>();
        if (b.contains("tilt")) {
            cfg.bounds.tilt_min = b.at("tilt").at(0).get<int>();
            cfg.bounds.tilt_max = b.at("tilt").at(1).get<int>();
        }
        if (b.contains("azimuth")) {
            cfg.bounds.azimuth_min = b.at("azimuth").at(0).get<int>();
            cfg.bounds.azimuth_max = b.at("azimuth").at(1).get<int>();
        }
        if (b.contains("tilt_step")) cfg.bounds.tilt_step = b.at("tilt_step").get<int>();
        if (b.contains("azimuth_step")) cfg.bounds.azimuth_step = b.at("azimuth_step").get<int>();
    }

    if (j.contains("economics")) {
        const json& e = j.at("economics");
        if (e.contains("real_discount_annual")) cfg.assumptions.real_discount_annual = e.at("real_discount_annual").get<double>();
        if (e.contains("electricity_growth_annual"))
            cfg.assumptions.electricity_growth_annual = e.at("electricity_growth_annual").get<double>();
        if (e.contains("lifespan_years")) cfg.assumptions.lifespan_years = e.at("lifespan_years").get<int>();
        if (e.contains("billing_periods_per_year")) cfg.assumptions.periods_per_year = e.at("billing_periods_per_year").get<int>();
    }
    if (j.contains("maintenance")) {
        const json& m = j.at("maintenance");
        if (m.contains("minor_service")) cfg.maintenance.minor_service_cost = m.at("minor_service").get<double>();
        if (m.contains("major_service")) cfg.maintenance.major_service_cost = m.at("major_service").get<double>();
        if (m.contains("inverter_unit_cost_per_w"))
            cfg.maintenance.inverter_unit_cost_per_w = m.at("inverter_unit_cost_per_w").get<double>();
        if (m.contains("kappa_inverter")) cfg.maintenance.kappa_inverter = m.at("kappa_inverter").get<double>();
        if (m.contains("kappa_battery")) cfg.maintenance.kappa_battery = m.at("kappa_battery").get<double>();
    }
    if (j.contains("solar")) {
        const json& s = j.at("solar");
        if (s.contains("ground_reflectance")) cfg.solar_settings.ground_reflectance = s.at("ground_reflectance").get<double>();
        if (s.contains("beam_ratio_max")) cfg.solar_settings.beam_ratio_max = s.at("beam_ratio_max").get<double>();
    }
    if (j.contains("qpso")) {
        const json& q = j.at("qpso");
        auto& s = cfg.qpso_settings.swarm;
        if (q.contains("swarm_size")) s.swarm_size = q.at("swarm_size").get<int>();
        if (q.contains("iterations")) s.max_iterations = q.at("iterations").get<int>();
        if (q.contains("ce_start")) s.contraction_expansion_start = q.at("ce_start").get<double>();
        if (q.contains("ce_end")) s.contraction_expansion_end = q.at("ce_end").get<double>();
        if (q.contains("restarts")) s.restarts = q.at("restarts").get<int>();
        if (q.contains("seed")) s.seed = q.at("seed").get<std::uint64_t>();
    }
    if (j.contains("bop_efficiency")) cfg.bop_efficiency = j.at("bop_efficiency").get<double>();
    if (j.contains("battery_price_factor")) cfg.battery_price_factor = j.at("battery_price_factor").get<double>();
    if (j.contains("sensitivity_factors")) {
        cfg.sensitivity_factors.clear();
        for (const auto& f : j.at("sensitivity_factors")) {
            const double v = f.get<double>();
            if (!(v > 0.0 && v <= 1.0)) fail(ErrorKind::SchemaViolation, path, "sensitivity_factors: entries must be in (0, 1]");
            cfg.sensitivity_factors.push_back(v);
        }
    }
    if (j.contains("gap_fill_max_hours")) cfg.gap_fill_max_hours = j.at("gap_fill_max_hours").get<int>();

    try {
        cfg.bounds.validate();
        cfg.assumptions.validate();
        cfg.maintenance.validate();
        cfg.qpso_settings.swarm.validate();
    } catch (const std::exception& e) {
        fail(ErrorKind::SchemaViolation, path, e.what());
    }
    if (!(cfg.bop_efficiency > 0.0 && cfg.bop_efficiency <= 1.0))
        fail(ErrorKind::SchemaViolation, path, "bop_efficiency out of (0, 1]");
    if (!(cfg.battery_price_factor > 0.0 && cfg.battery_price_factor <= 1.0))
        fail(ErrorKind::SchemaViolation, path, "battery_price_factor out of (0, 1]");
    return cfg;
}

std::string serialize_plan(const tariff::TouPlan& plan) {
    json j;
    j["plan_id"] = plan.plan_id;
    j["retailer"] = plan.retailer;
    j["rates"] = {{"offpeak", plan.import_rates[0]}, {"shoulder", plan.import_rates[1]}, {"peak", plan.import_rates[2]}};
    j["feed_in_tariff"] = plan.feed_in_tariff;
    j["daily_supply_charge"] = plan.daily_supply_charge;
    json overrides;
    for (int p = 0; p < 3; ++p)
        if (plan.feed_in_overrides[p]) overrides[tariff::period_name(static_cast<tariff::Period>(p))] = *plan.feed_in_overrides[p];
    if (!overrides.is_null()) j["feed_in_overrides"] = overrides;
    j["schedule"] = {{"weekday", day_schedule_to_json(plan.weekday)}, {"weekend", day_schedule_to_json(plan.weekend)}};
    if (!plan.seasons.empty()) {
        json seasons = json::array();
        for (const auto& s : plan.seasons) {
            json months = json::array();
            for (int m = 0; m < 12; ++m)
                if (s.months[m]) months.push_back(m + 1);
            seasons.push_back({{"months", months},
                               {"weekday", day_schedule_to_json(s.weekday)},
                               {"weekend", day_schedule_to_json(s.weekend)}});
        }
        j["seasons"] = seasons;
    }
    return j.dump(2) + "\n";
}

void write_load_profile(const fs::path& path, const LoadProfile& profile) {
    std::ofstream out(path);
    if (!out) throw ParseError(ErrorKind::Io, path.string(), "cannot open for writing");
    out << "# customer: " << profile.customer_id << "\n";
    out << "timestamp,load_kwh\n";
    const std::int64_t day0 = days_from_civil(profile.start_date);
    char buf[64];
    for (size_t s = 0; s < profile.kwh.size(); ++s) {
        const CivilDate d = civil_from_days(day0 + static_cast<std::int64_t>(s / 24));
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00", d.year, d.month, d.day, static_cast<int>(s % 24));
        out << buf << ',' << profile.kwh[s] << "\n";
    }
}

void write_weather(const fs::path& path, const WeatherSeries& series) {
    std::ofstream out(path);
    if (!out) throw ParseError(ErrorKind::Io, path.string(), "cannot open for writing");
    out << "# latitude: " << series.location.latitude_deg << "\n";
    out << "# longitude: " << series.location.longitude_deg << "\n";
    out << "# timezone: " << series.location.timezone_hours << "\n";
    out << "timestamp,global_whm2,beam_whm2,diffuse_whm2,ambient_c\n";
    char buf[64];
    int year = series.start_date.year;
    for (const auto& y : series.years) {
        const std::int64_t day0 = days_from_civil({year, 1, 1});
        for (int s = 0; s < kHoursPerYear; ++s) {
            const CivilDate d = civil_from_days(day0 + s / 24);
            std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00", d.year, d.month, d.day, s % 24);
            out << buf << ',' << y.global_whm2[s] << ',' << y.beam_whm2[s] << ',' << y.diffuse_whm2[s] << ','
                << y.ambient_c[s] << "\n";
        }
        ++year;
        while (is_leap_year(year)) ++year;
    }
}

}  // namespace pvopt::ingest
