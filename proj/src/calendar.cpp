#include "pvopt/calendar.hpp"

#include <cstdio>

namespace pvopt {

std::string format_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace pvopt
