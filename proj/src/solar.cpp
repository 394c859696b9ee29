#include "pvopt/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pvopt::solar {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double d) { return d * kPi / 180.0; }

// Sunset hour angle in degrees; clamped for polar day/night.
double sunset_hour_angle_deg(double lat_rad, double decl_rad) {
    const double c = std::clamp(-std::tan(lat_rad) * std::tan(decl_rad), -1.0, 1.0);
    return std::acos(c) * 180.0 / kPi;
}

struct SunVector {
    double east = 0.0;
    double north = 0.0;
    double up = 0.0;
};

// Unit vector toward the sun in local east/north/up coordinates.
// Hour angle is zero at solar noon, positive in the afternoon, so the east
// component is positive in the morning.
SunVector sun_vector(double lat_rad, double decl_rad, double hour_angle_rad) {
    SunVector s;
    s.up = std::sin(lat_rad) * std::sin(decl_rad) + std::cos(lat_rad) * std::cos(decl_rad) * std::cos(hour_angle_rad);
    s.east = -std::cos(decl_rad) * std::sin(hour_angle_rad);
    s.north = std::cos(lat_rad) * std::sin(decl_rad) - std::sin(lat_rad) * std::cos(decl_rad) * std::cos(hour_angle_rad);
    return s;
}

}  // namespace

void GeoLocation::validate() const {
    if (!(std::abs(latitude_deg) <= 90.0)) throw std::invalid_argument("latitude out of [-90, 90]");
    if (!(std::abs(longitude_deg) <= 180.0)) throw std::invalid_argument("longitude out of [-180, 180]");
}

void PlaneOrientation::validate() const {
    if (!(tilt_deg >= 0.0 && tilt_deg <= 180.0)) throw std::invalid_argument("tilt out of [0, 180]");
    if (!(azimuth_deg > -180.0 && azimuth_deg <= 180.0)) throw std::invalid_argument("azimuth out of (-180, 180]");
}

double declination_deg(int day_of_year) {
    return 23.45 * std::sin(deg2rad(360.0 * (284.0 + day_of_year) / 365.0));
}

double equation_of_time_minutes(int day_of_year) {
    const double b = deg2rad((day_of_year - 1) * 360.0 / 365.0);
    return 229.2 * (0.000075 + 0.001868 * std::cos(b) - 0.032077 * std::sin(b) - 0.014615 * std::cos(2.0 * b) -
                    0.04089 * std::sin(2.0 * b));
}

double solar_time_hours(const GeoLocation& loc, int day_of_year, double standard_time_hours) {
    // 4 minutes per degree between the local meridian and the zone meridian.
    const double meridian_correction_min = 4.0 * (loc.longitude_deg - 15.0 * loc.timezone_hours);
    return standard_time_hours + (meridian_correction_min + equation_of_time_minutes(day_of_year)) / 60.0;
}

double cos_zenith(const GeoLocation& loc, int day_of_year, double solar_time) {
    const double lat = deg2rad(loc.latitude_deg);
    const double decl = deg2rad(declination_deg(day_of_year));
    const double omega = deg2rad(15.0 * (solar_time - 12.0));
    return std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(omega);
}

double extraterrestrial_hourly(const GeoLocation& loc, int day_of_year, int hour_slot) {
    if (day_of_year < 1 || day_of_year > 366) throw std::invalid_argument("day_of_year out of [1, 366]");
    if (hour_slot < 0 || hour_slot > 23) throw std::invalid_argument("hour_slot out of [0, 23]");

    const double lat = deg2rad(loc.latitude_deg);
    const double decl = deg2rad(declination_deg(day_of_year));
    const double ws = sunset_hour_angle_deg(lat, decl);
    if (ws <= 0.0) return 0.0;  // polar night

    // Slot boundaries as hour angles, clipped to daylight.
    const double w1_raw = 15.0 * (solar_time_hours(loc, day_of_year, hour_slot) - 12.0);
    const double w2_raw = 15.0 * (solar_time_hours(loc, day_of_year, hour_slot + 1.0) - 12.0);
    const double w1 = std::max(w1_raw, -ws);
    const double w2 = std::min(w2_raw, ws);
    if (w2 <= w1) return 0.0;

    const double ecc = 1.0 + 0.033 * std::cos(deg2rad(360.0 * day_of_year / 365.0));
    const double io = (12.0 / kPi) * kSolarConstantWm2 * ecc *
                      (std::cos(lat) * std::cos(decl) * (std::sin(deg2rad(w2)) - std::sin(deg2rad(w1))) +
                       kPi * (w2 - w1) / 180.0 * std::sin(lat) * std::sin(decl));
    return std::max(io, 0.0);
}

double beam_ratio(const GeoLocation& loc, int day_of_year, int hour_slot, const PlaneOrientation& orientation,
                  double rb_max) {
    if (day_of_year < 1 || day_of_year > 366) throw std::invalid_argument("day_of_year out of [1, 366]");
    if (hour_slot < 0 || hour_slot > 23) throw std::invalid_argument("hour_slot out of [0, 23]");

    const double lat = deg2rad(loc.latitude_deg);
    const double decl = deg2rad(declination_deg(day_of_year));
    const double solar_mid = solar_time_hours(loc, day_of_year, hour_slot + 0.5);
    const double omega = deg2rad(15.0 * (solar_mid - 12.0));

    const SunVector s = sun_vector(lat, decl, omega);
    if (s.up <= 0.0) return 0.0;  // sun below horizon

    const double beta = deg2rad(orientation.tilt_deg);
    const double gamma = deg2rad(orientation.azimuth_deg);
    // Panel normal: gamma = 0 north-facing, positive toward east.
    const double cos_incidence =
        s.up * std::cos(beta) + std::sin(beta) * (s.north * std::cos(gamma) + s.east * std::sin(gamma));
    if (cos_incidence <= 0.0) return 0.0;  // sun behind the panel

    return std::min(cos_incidence / s.up, rb_max);
}

TiltedIrradiance hdkr_transpose(const HorizontalIrradiance& irr, const PlaneOrientation& orientation,
                                double beam_ratio_rb, double ground_reflectance) {
    if (ground_reflectance < 0.0 || ground_reflectance > 1.0)
        throw std::invalid_argument("ground reflectance out of [0, 1]");

    const double global = irr.global_whm2;
    if (global <= 0.0) return {0.0};
    // Horizontal plane: the transposition is the identity, bit for bit.
    if (orientation.tilt_deg == 0.0) return {global};

    const double anisotropy =
        irr.extraterrestrial_whm2 > 0.0 ? std::min(irr.beam_whm2 / irr.extraterrestrial_whm2, 1.0) : 0.0;
    const double horizon_f = std::min(std::sqrt(irr.beam_whm2 / global), 1.0);

    const double beta = orientation.tilt_deg * std::numbers::pi / 180.0;
    const double cos_beta = std::cos(beta);
    const double sin_half = std::sin(beta / 2.0);

    const double beam_circumsolar = (irr.beam_whm2 + anisotropy * irr.diffuse_whm2) * beam_ratio_rb;
    const double sky_diffuse = irr.diffuse_whm2 * (1.0 - anisotropy) * ((1.0 + cos_beta) / 2.0) *
                               (1.0 + horizon_f * sin_half * sin_half * sin_half);
    const double ground = global * ground_reflectance * ((1.0 - cos_beta) / 2.0);

    return {std::max(beam_circumsolar + sky_diffuse + ground, 0.0)};
}

}  // namespace pvopt::solar
