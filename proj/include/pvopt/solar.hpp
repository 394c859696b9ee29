#pragma once

#include <stdexcept>

namespace pvopt::solar {

inline constexpr double kSolarConstantWm2 = 1367.0;
inline constexpr double kDefaultGroundReflectance = 0.2;
inline constexpr double kDefaultBeamRatioMax = 10.0;

struct GeoLocation {
    double latitude_deg = 0.0;    // positive north
    double longitude_deg = 0.0;   // positive east
    double timezone_hours = 0.0;  // offset from UTC, local standard time

    void validate() const;
};

// Azimuth convention: gamma = 0 faces true north, positive gamma rotates the
// panel toward the east. Tilt is measured up from horizontal.
struct PlaneOrientation {
    double tilt_deg = 0.0;
    double azimuth_deg = 0.0;

    void validate() const;
};

struct HorizontalIrradiance {
    double global_whm2 = 0.0;
    double beam_whm2 = 0.0;
    double diffuse_whm2 = 0.0;
    double extraterrestrial_whm2 = 0.0;
};

struct TiltedIrradiance {
    double total_whm2 = 0.0;
};

// Cooper declination, degrees.
double declination_deg(int day_of_year);

// Spencer equation-of-time, minutes.
double equation_of_time_minutes(int day_of_year);

// Apparent solar time (hours) for a local-standard-time instant.
double solar_time_hours(const GeoLocation& loc, int day_of_year, double standard_time_hours);

// Cosine of the solar zenith angle at a solar-time instant.
double cos_zenith(const GeoLocation& loc, int day_of_year, double solar_time);

// Hourly extraterrestrial insolation on a horizontal plane, Wh/m², integrated
// over slot [hour_slot, hour_slot+1) and clipped at sunrise/sunset.
double extraterrestrial_hourly(const GeoLocation& loc, int day_of_year, int hour_slot);

// Ratio of beam irradiance on the tilted plane to the horizontal plane,
// evaluated at the midpoint of the hour slot. Zero when the sun is below the
// horizon or behind the panel; clamped at rb_max against the sunrise/sunset
// blow-up of the 1/cos(zenith) term.
double beam_ratio(const GeoLocation& loc, int day_of_year, int hour_slot,
                  const PlaneOrientation& orientation, double rb_max = kDefaultBeamRatioMax);

// Hay-Davies-Klucher-Reindl transposition of hourly horizontal insolation
// onto a tilted plane: anisotropic beam + circumsolar, horizon-brightened
// diffuse, isotropic ground reflection. A horizontal plane is the identity.
TiltedIrradiance hdkr_transpose(const HorizontalIrradiance& irr, const PlaneOrientation& orientation,
                                double beam_ratio_rb, double ground_reflectance = kDefaultGroundReflectance);

}  // namespace pvopt::solar
