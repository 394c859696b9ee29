#pragma once

#include <string>
#include <vector>

namespace pvopt::pv {

struct PvPanelSpec {
    std::string id;
    std::string name;
    double area_m2 = 1.63;
    double eta_stc = 0.171;              // efficiency at standard test conditions
    double mu_mpp_per_degc = -0.0007011; // efficiency change per degC of cell heating, <= 0
    double t_noct_c = 44.0;
    double rated_w = 280.0;
    double annual_degradation = 0.007;   // linear output fade per year

    void validate() const;
};

struct PvCostTier {
    double system_kw = 0.0;
    double price_per_w = 0.0;
};

// Installed-system pricing: tiered $/W minus the small-scale technology
// certificate subsidy (certificates accrue per rated kW).
struct PvCostSchedule {
    std::vector<PvCostTier> tiers;
    double stc_multiplier = 20.73;  // certificates per rated kW
    double stc_price = 34.0;        // $ per certificate
    bool floor_certificates = true; // certificates are discrete instruments

    void validate() const;
};

struct BalanceOfPlant {
    double efficiency = 0.9;

    void validate() const;
};

PvCostSchedule default_cost_schedule();

// Cell temperature from ambient and incident irradiance via the NOCT rating.
double cell_temperature(double ambient_c, double incident_wm2, const PvPanelSpec& spec);

// Operating efficiency with linear thermal derating, floored at zero.
double operating_efficiency(double ambient_c, double cell_c, const PvPanelSpec& spec);

// Linear lifetime output fade; 1 at year 0, floored at zero.
double degradation_factor(const PvPanelSpec& spec, double years_elapsed);

// Array energy for one hour, kWh.
double pv_hourly_energy(const PvPanelSpec& spec, int panel_count, double tilted_whm2, double eta_mpp,
                        const BalanceOfPlant& bop, double years_elapsed);

// Net installed cost in $ for a system of the given DC rating, using the
// price of the nearest tier (ties resolve to the lower tier) and subtracting
// the certificate subsidy. Never negative.
double pv_system_cost(double rated_watts, const PvCostSchedule& schedule);

}  // namespace pvopt::pv
