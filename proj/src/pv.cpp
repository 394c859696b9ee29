#include "pvopt/pv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pvopt::pv {

void PvPanelSpec::validate() const {
    if (!(area_m2 > 0.0)) throw std::invalid_argument("panel area must be positive");
    if (!(eta_stc > 0.0 && eta_stc < 1.0)) throw std::invalid_argument("eta_stc out of (0, 1)");
    if (!(mu_mpp_per_degc <= 0.0)) throw std::invalid_argument("temperature coefficient must be <= 0");
    if (!(rated_w > 0.0)) throw std::invalid_argument("rated power must be positive");
    if (!(annual_degradation >= 0.0 && annual_degradation < 1.0))
        throw std::invalid_argument("annual degradation out of [0, 1)");
}

void PvCostSchedule::validate() const {
    if (tiers.empty()) throw std::invalid_argument("price schedule has no tiers");
    double prev = 0.0;
    for (const auto& t : tiers) {
        if (!(t.system_kw > prev)) throw std::invalid_argument("tier sizes must be strictly increasing");
        if (!(t.price_per_w > 0.0)) throw std::invalid_argument("tier price must be positive");
        prev = t.system_kw;
    }
    if (stc_multiplier < 0.0 || stc_price < 0.0) throw std::invalid_argument("subsidy constants must be >= 0");
}

void BalanceOfPlant::validate() const {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw std::invalid_argument("balance-of-plant efficiency out of (0, 1]");
}

PvCostSchedule default_cost_schedule() {
    PvCostSchedule s;
    s.tiers = {{1.0, 3.20}, {1.5, 3.00}, {3.0, 2.55}, {5.0, 2.35}, {10.0, 2.20}};
    return s;
}

double cell_temperature(double ambient_c, double incident_wm2, const PvPanelSpec& spec) {
    if (incident_wm2 < 0.0) throw std::invalid_argument("incident irradiance must be >= 0");
    return ambient_c + (spec.t_noct_c - 20.0) * (incident_wm2 / 800.0) * (1.0 - spec.eta_stc);
}

double operating_efficiency(double ambient_c, double cell_c, const PvPanelSpec& spec) {
    return std::max(spec.eta_stc + spec.mu_mpp_per_degc * (cell_c - ambient_c), 0.0);
}

double degradation_factor(const PvPanelSpec& spec, double years_elapsed) {
    return std::max(1.0 - spec.annual_degradation * years_elapsed, 0.0);
}

double pv_hourly_energy(const PvPanelSpec& spec, int panel_count, double tilted_whm2, double eta_mpp,
                        const BalanceOfPlant& bop, double years_elapsed) {
    if (panel_count < 0) throw std::invalid_argument("panel count must be >= 0");
    if (tilted_whm2 < 0.0) throw std::invalid_argument("tilted insolation must be >= 0");
    const double wh = spec.area_m2 * static_cast<double>(panel_count) * tilted_whm2 * eta_mpp * bop.efficiency *
                      degradation_factor(spec, years_elapsed);
    return wh / 1000.0;
}

double pv_system_cost(double rated_watts, const PvCostSchedule& schedule) {
    if (rated_watts < 0.0) throw std::invalid_argument("rated watts must be >= 0");
    schedule.validate();

    const double rated_kw = rated_watts / 1000.0;
    // Nearest tier by system size; ties go to the lower tier.
    const PvCostTier* best = &schedule.tiers.front();
    double best_dist = std::abs(schedule.tiers.front().system_kw - rated_kw);
    for (const auto& t : schedule.tiers) {
        const double dist = std::abs(t.system_kw - rated_kw);
        if (dist < best_dist) {
            best = &t;
            best_dist = dist;
        }
    }

    double certificates = schedule.stc_multiplier * rated_kw;
    if (schedule.floor_certificates) certificates = std::floor(certificates);
    const double cost = best->price_per_w * rated_watts - certificates * schedule.stc_price;
    return std::max(cost, 0.0);
}

}  // namespace pvopt::pv
