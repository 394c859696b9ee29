#include "pvopt/workflows.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>

#include "json.hpp"

namespace pvopt::workflows {

namespace {

using DesignKey = std::array<int, 4>;  // tilt, azimuth, Z, X

std::string money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string opt_fixed4(const std::optional<double>& v) { return v ? fixed4(*v) : "never"; }

}  // namespace

qpso::SearchSpace design_space(const ingest::SearchBounds& bounds) {
    bounds.validate();
    qpso::SearchSpace space;
    const auto add = [&](const std::string& name, int lo, int hi, int step) {
        if (lo == hi) return;  // pinned by the bounds; decoded as the constant
        qpso::Dimension d;
        d.name = name;
        d.lower = lo;
        d.upper = hi;
        d.integer_grid = true;
        d.step = step;
        space.dimensions.push_back(d);
    };
    add("tilt", bounds.tilt_min, bounds.tilt_max, bounds.tilt_step);
    add("azimuth", bounds.azimuth_min, bounds.azimuth_max, bounds.azimuth_step);
    add("panels", 0, bounds.z_max, 1);
    add("batteries", 0, bounds.x_max, 1);
    if (space.dimensions.empty()) throw std::invalid_argument("search bounds pin every dimension");
    return space;
}

lifecycle::SystemDesign design_from_position(std::span<const double> position, const ingest::SearchBounds& bounds,
                                             const ComboSpec& combo) {
    lifecycle::SystemDesign design;
    design.battery_product_id = combo.product_id;
    design.mode = battery::dispatch_mode_from_int(combo.mode);
    design.plan_id = combo.plan_id;

    size_t i = 0;
    const auto take = [&](int lo, int hi) {
        if (lo == hi) return lo;
        return static_cast<int>(std::lround(position[i++]));
    };
    design.tilt_deg = take(bounds.tilt_min, bounds.tilt_max);
    design.azimuth_deg = take(bounds.azimuth_min, bounds.azimuth_max);
    design.panel_count = take(0, bounds.z_max);
    design.battery_count = take(0, bounds.x_max);
    return design;
}

DesignOptimum optimize_design(const lifecycle::ScenarioContext& ctx, const ComboSpec& combo,
                              const ingest::SearchBounds& bounds, const qpso::SwarmConfig& swarm) {
    const qpso::SearchSpace space = design_space(bounds);

    std::map<DesignKey, double> cache;
    std::mutex cache_mutex;

    const qpso::Objective objective = [&](std::span<const double> position) {
        const lifecycle::SystemDesign design = design_from_position(position, bounds, combo);
        const DesignKey key{design.tilt_deg, design.azimuth_deg, design.panel_count, design.battery_count};
        {
            std::lock_guard lock(cache_mutex);
            const auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        const double value = lifecycle::objective(design, ctx);
        std::lock_guard lock(cache_mutex);
        cache.emplace(key, value);
        return value;
    };

    const qpso::OptimizationResult result = qpso::optimize(objective, space, swarm);

    DesignOptimum out;
    out.combo = combo;
    out.design = design_from_position(result.best_position, bounds, combo);
    out.report = lifecycle::simulate(out.design, ctx);
    out.evaluations = result.evaluations;
    return out;
}

OptimizeRun run_optimize(const lifecycle::ScenarioContext& ctx, const ingest::RunConfig& config,
                         const qpso::SwarmConfig& swarm) {
    OptimizeRun run;
    for (const auto& plan_id : config.candidate_plan_ids) {
        for (const auto& product_id : config.battery_product_ids) {
            for (int mode : config.modes) {
                run.rows.push_back(optimize_design(ctx, {plan_id, product_id, mode}, config.bounds, swarm));
            }
        }
    }
    if (run.rows.empty()) throw std::invalid_argument("optimization grid is empty");
    for (size_t i = 1; i < run.rows.size(); ++i)
        if (run.rows[i].report.npv > run.rows[run.best].report.npv) run.best = i;
    return run;
}

std::vector<SensitivityRow> run_sensitivity(const lifecycle::ScenarioContext& ctx, const ingest::RunConfig& config,
                                            const qpso::SwarmConfig& swarm) {
    if (config.candidate_plan_ids.empty() || config.battery_product_ids.empty() || config.modes.empty())
        throw std::invalid_argument("sensitivity needs a plan, a product and a mode");
    const std::string plan_id = config.candidate_plan_ids.front();
    const int mode = config.modes.front();

    std::vector<SensitivityRow> rows;
    for (const auto& product_id : config.battery_product_ids) {
        for (double factor : config.sensitivity_factors) {
            lifecycle::ScenarioContext scaled = ctx;
            scaled.battery_price_factor = factor;
            SensitivityRow row;
            row.product_id = product_id;
            row.price_factor = factor;
            row.optimum = optimize_design(scaled, {plan_id, product_id, mode}, config.bounds, swarm);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<DesignOptimum> run_modes(const lifecycle::ScenarioContext& ctx, const ingest::RunConfig& config,
                                     const qpso::SwarmConfig& swarm) {
    if (config.candidate_plan_ids.empty() || config.battery_product_ids.empty())
        throw std::invalid_argument("mode comparison needs a plan and a product");
    const std::string plan_id = config.candidate_plan_ids.front();
    const std::string product_id = config.battery_product_ids.front();

    std::vector<DesignOptimum> rows;
    for (int mode : config.modes) {
        rows.push_back(optimize_design(ctx, {plan_id, product_id, mode}, config.bounds, swarm));
    }
    return rows;
}

void write_report_json(const std::filesystem::path& path, const lifecycle::SystemDesign& design,
                       const lifecycle::SimulationReport& report) {
    nlohmann::json j;
    j["design"] = {{"tilt_deg", design.tilt_deg},
                   {"azimuth_deg", design.azimuth_deg},
                   {"panel_count", design.panel_count},
                   {"battery_count", design.battery_count},
                   {"battery_product_id", design.battery_product_id},
                   {"mode", static_cast<int>(design.mode)},
                   {"plan_id", design.plan_id}};
    j["npv"] = report.npv;
    if (report.mirr_annual) j["mirr_annual"] = *report.mirr_annual;
    else j["mirr_annual"] = nullptr;
    if (report.payback_years) j["payback_years"] = *report.payback_years;
    else j["payback_years"] = nullptr;
    j["capital"] = {{"pv", report.capital_pv}, {"battery", report.capital_battery}};
    j["first_year"] = {{"pv_generation_kwh", report.first_year.pv_generation_kwh},
                       {"self_consumed_kwh", report.first_year.self_consumed_kwh},
                       {"exported_kwh", report.first_year.exported_kwh},
                       {"battery_throughput_kwh", report.first_year.battery_throughput_kwh},
                       {"battery_losses_kwh", report.first_year.battery_losses_kwh}};
    j["final_battery_capacity_kwh"] = report.final_battery_capacity_kwh;
    nlohmann::json quarters = nlohmann::json::array();
    for (size_t q = 0; q < report.quarters.size(); ++q) {
        const auto& row = report.quarters[q];
        quarters.push_back({{"q", q + 1},
                            {"cost_base", row.cost_base},
                            {"cost_pvbatt", row.cost_pvbatt},
                            {"savings", row.savings},
                            {"maintenance", row.maintenance}});
    }
    j["quarters"] = quarters;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void write_quarters_csv(const std::filesystem::path& path, const lifecycle::SimulationReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "quarter,cost_base,cost_pvbatt,savings,maintenance\n";
    char buf[160];
    for (size_t q = 0; q < report.quarters.size(); ++q) {
        const auto& row = report.quarters[q];
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%.6f\n", q + 1, row.cost_base, row.cost_pvbatt,
                      row.savings, row.maintenance);
        out << buf;
    }
}

namespace {

void write_row(std::ofstream& out, const DesignOptimum& row, const ingest::BatteryCatalogue& batteries,
               const pv::PvPanelSpec& panel, bool flag_best) {
    const double battery_kwh =
        row.design.battery_count > 0 ? batteries.require(row.design.battery_product_id).capacity_kwh *
                                           row.design.battery_count
                                     : 0.0;
    const double pv_kw = panel.rated_w * row.design.panel_count / 1000.0;
    out << row.combo.plan_id << ',' << row.combo.product_id << ',' << row.combo.mode << ',' << fixed4(battery_kwh)
        << ',' << fixed4(pv_kw) << ',' << row.design.battery_count << ',' << row.design.panel_count << ','
        << row.design.tilt_deg << ',' << row.design.azimuth_deg << ',' << money(row.report.npv) << ','
        << opt_fixed4(row.report.mirr_annual) << ',' << opt_fixed4(row.report.payback_years) << ','
        << (flag_best ? "1" : "0") << "\n";
}

}  // namespace

void write_optimize_csv(const std::filesystem::path& path, const OptimizeRun& run,
                        const ingest::BatteryCatalogue& batteries, const pv::PvPanelSpec& panel) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "plan_id,battery_product,mode,battery_kwh,pv_kwp,batteries,panels,tilt_deg,azimuth_deg,npv,mirr_annual,"
           "payback_years,best\n";
    for (size_t i = 0; i < run.rows.size(); ++i) write_row(out, run.rows[i], batteries, panel, i == run.best);
}

void write_sensitivity_csv(const std::filesystem::path& path, const std::vector<SensitivityRow>& rows,
                           const ingest::BatteryCatalogue& batteries, const pv::PvPanelSpec& panel) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "battery_product,price_factor,npv,batteries,battery_kwh,panels,pv_kwp,tilt_deg,azimuth_deg\n";
    for (const auto& row : rows) {
        const auto& d = row.optimum.design;
        const double battery_kwh =
            d.battery_count > 0 ? batteries.require(d.battery_product_id).capacity_kwh * d.battery_count : 0.0;
        out << row.product_id << ',' << fixed4(row.price_factor) << ',' << money(row.optimum.report.npv) << ','
            << d.battery_count << ',' << fixed4(battery_kwh) << ',' << d.panel_count << ','
            << fixed4(panel.rated_w * d.panel_count / 1000.0) << ',' << d.tilt_deg << ',' << d.azimuth_deg << "\n";
    }
}

void write_modes_csv(const std::filesystem::path& path, const std::vector<DesignOptimum>& rows,
                     const ingest::BatteryCatalogue& batteries, const pv::PvPanelSpec& panel) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "mode,battery_kwh,pv_kwp,batteries,panels,tilt_deg,azimuth_deg,npv,mirr_annual,payback_years\n";
    for (const auto& row : rows) {
        const auto& d = row.design;
        const double battery_kwh =
            d.battery_count > 0 ? batteries.require(d.battery_product_id).capacity_kwh * d.battery_count : 0.0;
        out << row.combo.mode << ',' << fixed4(battery_kwh) << ',' << fixed4(panel.rated_w * d.panel_count / 1000.0)
            << ',' << d.battery_count << ',' << d.panel_count << ',' << d.tilt_deg << ',' << d.azimuth_deg << ','
            << money(row.report.npv) << ',' << opt_fixed4(row.report.mirr_annual) << ','
            << opt_fixed4(row.report.payback_years) << "\n";
    }
}

}  // namespace pvopt::workflows
