#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace pvopt {

// Simulation time base: one 365-day (non-leap) year of hourly slots, with
// slot h covering [h:00, h+1:00) local standard time. No DST shifts.
inline constexpr int kHoursPerYear = 8760;
inline constexpr int kDaysPerYear = 365;

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    bool operator==(const CivilDate&) const = default;
};

// Days since 1970-01-01 (proleptic Gregorian). Howard Hinnant's algorithm.
constexpr std::int64_t days_from_civil(const CivilDate& d) noexcept {
    const int y = d.year - (d.month <= 2);
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * static_cast<unsigned>(d.month + (d.month > 2 ? -3 : 9)) + 2u) / 5u +
        static_cast<unsigned>(d.day) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr CivilDate civil_from_days(std::int64_t z) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

// 0 = Monday .. 6 = Sunday.
constexpr int weekday_from_civil(const CivilDate& d) noexcept {
    const std::int64_t z = days_from_civil(d);
    return static_cast<int>(z >= -3 ? (z + 3) % 7 : (z + 4) % 7 + 6);
}

constexpr bool is_weekend(const CivilDate& d) noexcept {
    return weekday_from_civil(d) >= 5;
}

constexpr bool is_leap_year(int year) noexcept {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

// Maps a day offset within the simulation year onto a civil date. The year is
// anchored at the profile's start date (required to be Jan 1 of a non-leap
// year), so day-of-week and month lookups stay aligned with the input data.
class SimYear {
  public:
    explicit SimYear(CivilDate start = {2015, 1, 1}) : start_(start), start_days_(days_from_civil(start)) {}

    CivilDate date_at(int day_index) const { return civil_from_days(start_days_ + day_index); }
    int day_of_year(int day_index) const { return day_index + 1; }  // 1..365
    const CivilDate& start() const { return start_; }

  private:
    CivilDate start_;
    std::int64_t start_days_;
};

std::string format_date(const CivilDate& d);

}  // namespace pvopt
