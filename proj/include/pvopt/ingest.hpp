#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvopt/battery.hpp"
#include "pvopt/calendar.hpp"
#include "pvopt/economics.hpp"
#include "pvopt/pv.hpp"
#include "pvopt/qpso.hpp"
#include "pvopt/solar.hpp"
#include "pvopt/tariff.hpp"

namespace pvopt::ingest {

enum class ErrorKind {
    Io,
    MalformedTimestamp,
    MissingSlot,
    DuplicateSlot,
    NegativeValue,
    SchemaViolation,
    UnknownReference,
};

// Validation failure with enough context to point at the offending field.
class ParseError : public std::runtime_error {
  public:
    ParseError(ErrorKind kind, std::string file, std::string detail)
        : std::runtime_error(file + ": " + detail), kind_(kind), file_(std::move(file)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& file() const { return file_; }

  private:
    ErrorKind kind_;
    std::string file_;
};

// One year of hourly household demand, anchored at Jan 1 of a non-leap year.
struct LoadProfile {
    std::string customer_id;
    CivilDate start_date{2015, 1, 1};
    std::vector<double> kwh;  // 8760 values

    void validate() const;
};

struct WeatherYear {
    std::vector<double> global_whm2;
    std::vector<double> beam_whm2;
    std::vector<double> diffuse_whm2;
    std::vector<double> ambient_c;  // all 8760 values
};

// One or more aligned years of hourly insolation and temperature.
struct WeatherSeries {
    solar::GeoLocation location;
    CivilDate start_date{2015, 1, 1};
    std::vector<WeatherYear> years;

    void validate() const;
    // Per-slot average across the supplied years.
    WeatherYear averaged() const;
};

struct BatteryCatalogue {
    std::map<std::string, battery::BatteryUnitSpec> products;

    const battery::BatteryUnitSpec& require(const std::string& id) const;
};

struct PvCatalogue {
    std::map<std::string, pv::PvPanelSpec> panels;
    pv::PvCostSchedule pricing;

    const pv::PvPanelSpec& require(const std::string& id) const;
};

struct PlanSet {
    std::map<std::string, tariff::TouPlan> plans;

    const tariff::TouPlan& require(const std::string& id) const;
};

struct SearchBounds {
    int z_max = 30;
    int x_max = 4;
    int tilt_min = 0, tilt_max = 90;
    int azimuth_min = -90, azimuth_max = 90;
    int tilt_step = 1, azimuth_step = 1;

    void validate() const;
};

struct SolarSettings {
    double ground_reflectance = solar::kDefaultGroundReflectance;
    double beam_ratio_max = solar::kDefaultBeamRatioMax;
};

struct QpsoSettings {
    qpso::SwarmConfig swarm;
};

// A full run description: input paths plus every model knob.
struct RunConfig {
    std::filesystem::path config_dir;
    std::filesystem::path load_path;
    std::filesystem::path weather_path;
    std::filesystem::path plans_dir;
    std::filesystem::path battery_catalogue_path;
    std::filesystem::path pv_catalogue_path;

    std::string base_plan_id;
    std::vector<std::string> candidate_plan_ids;
    std::vector<std::string> battery_product_ids;
    std::string pv_panel_id;
    std::vector<int> modes = {1, 2, 3, 4};

    SearchBounds bounds;
    economics::EconomicAssumptions assumptions;
    economics::MaintenanceParams maintenance;
    SolarSettings solar_settings;
    QpsoSettings qpso_settings;
    double bop_efficiency = 0.9;
    double battery_price_factor = 1.0;
    std::vector<double> sensitivity_factors = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
    int gap_fill_max_hours = 0;  // 0 = reject any gap
};

LoadProfile load_profile(const std::filesystem::path& path, int gap_fill_max_hours = 0);
WeatherSeries load_weather(const std::filesystem::path& path);
PlanSet load_plans(const std::filesystem::path& dir);
tariff::TouPlan load_plan_file(const std::filesystem::path& path);
BatteryCatalogue load_battery_catalogue(const std::filesystem::path& path);
PvCatalogue load_pv_catalogue(const std::filesystem::path& path);
RunConfig load_config(const std::filesystem::path& path);

// Serializers; parse(serialize(x)) is semantically identical to x.
std::string serialize_plan(const tariff::TouPlan& plan);
void write_load_profile(const std::filesystem::path& path, const LoadProfile& profile);
void write_weather(const std::filesystem::path& path, const WeatherSeries& series);

}  // namespace pvopt::ingest
