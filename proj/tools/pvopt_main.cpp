// Command-line driver: simulate a single design, optimize over the design
// space, sweep battery pricing, or compare dispatch modes.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"

#include "pvopt/ingest.hpp"
#include "pvopt/lifecycle.hpp"
#include "pvopt/workflows.hpp"

namespace fs = std::filesystem;
using namespace pvopt;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Run configuration file")->required();
    cmd->add_option("--out-dir", args.out_dir, "Output directory");
    cmd->add_option("--seed", args.seed, "Override the optimizer seed");
    cmd->add_option("--threads", args.threads, "Worker threads for objective evaluation");
}

qpso::SwarmConfig swarm_from(const ingest::RunConfig& config, const CommonArgs& args) {
    qpso::SwarmConfig swarm = config.qpso_settings.swarm;
    if (args.seed) swarm.seed = *args.seed;
    swarm.threads = std::max(args.threads, 1);
    return swarm;
}

void print_optimum(const workflows::DesignOptimum& row) {
    std::printf("plan=%s product=%s mode=%d: Z=%d X=%d tilt=%d azimuth=%d  NPV=$%.2f\n", row.combo.plan_id.c_str(),
                row.combo.product_id.c_str(), row.combo.mode, row.design.panel_count, row.design.battery_count,
                row.design.tilt_deg, row.design.azimuth_deg, row.report.npv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Residential PV-battery sizing and tariff optimizer"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* sim = app.add_subcommand("simulate", "Simulate one design over the full horizon");
    CommonArgs sim_args;
    add_common(sim, sim_args);
    int tilt = 0, azimuth = 0, panels = 0, batteries = 0, mode = 2;
    std::string product_id, plan_id;
    sim->add_option("--tilt", tilt, "Panel tilt, degrees")->required();
    sim->add_option("--azimuth", azimuth, "Panel azimuth, degrees (0 = north, +east)")->required();
    sim->add_option("--panels", panels, "Number of PV panels")->required();
    sim->add_option("--batteries", batteries, "Number of battery units")->required();
    sim->add_option("--battery-product", product_id, "Battery product id (required when batteries > 0)");
    sim->add_option("--mode", mode, "Dispatch mode 1..4");
    sim->add_option("--plan", plan_id, "Retail plan id")->required();

    auto* opt = app.add_subcommand("optimize", "Optimize designs per plan/product/mode combination");
    CommonArgs opt_args;
    add_common(opt, opt_args);

    auto* sens = app.add_subcommand("sensitivity", "Re-optimize across battery price factors");
    CommonArgs sens_args;
    add_common(sens, sens_args);

    auto* modes = app.add_subcommand("modes", "Compare dispatch modes at the configured price factor");
    CommonArgs modes_args;
    add_common(modes, modes_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) args = sim_args;
        if (opt->parsed()) args = opt_args;
        if (sens->parsed()) args = sens_args;
        if (modes->parsed()) args = modes_args;

        const ingest::RunConfig config = ingest::load_config(args.config_path);
        const lifecycle::ScenarioContext ctx = lifecycle::ScenarioContext::from_config(config);
        const qpso::SwarmConfig swarm = swarm_from(config, args);
        fs::create_directories(args.out_dir);
        const fs::path out_dir(args.out_dir);

        if (sim->parsed()) {
            lifecycle::SystemDesign design;
            design.tilt_deg = tilt;
            design.azimuth_deg = azimuth;
            design.panel_count = panels;
            design.battery_count = batteries;
            design.battery_product_id = product_id;
            design.mode = battery::dispatch_mode_from_int(mode);
            design.plan_id = plan_id;

            const lifecycle::SimulationReport report = lifecycle::simulate(design, ctx);
            workflows::write_report_json(out_dir / "report.json", design, report);
            workflows::write_quarters_csv(out_dir / "quarters.csv", report);
            std::printf("NPV=$%.2f  capital=$%.2f  (report.json, quarters.csv written to %s)\n", report.npv,
                        report.capital_pv + report.capital_battery, out_dir.string().c_str());
        } else if (opt->parsed()) {
            const workflows::OptimizeRun run = workflows::run_optimize(ctx, config, swarm);
            workflows::write_optimize_csv(out_dir / "optimize_summary.csv", run, ctx.batteries, ctx.panel);
            for (size_t i = 0; i < run.rows.size(); ++i) {
                if (i == run.best) std::printf("* ");
                else std::printf("  ");
                print_optimum(run.rows[i]);
            }
            std::printf("summary written to %s\n", (out_dir / "optimize_summary.csv").string().c_str());
        } else if (sens->parsed()) {
            const auto rows = workflows::run_sensitivity(ctx, config, swarm);
            workflows::write_sensitivity_csv(out_dir / "sensitivity.csv", rows, ctx.batteries, ctx.panel);
            for (const auto& row : rows)
                std::printf("%s @ %.0f%%: X=%d NPV=$%.2f\n", row.product_id.c_str(), row.price_factor * 100.0,
                            row.optimum.design.battery_count, row.optimum.report.npv);
            std::printf("sweep written to %s\n", (out_dir / "sensitivity.csv").string().c_str());
        } else if (modes->parsed()) {
            const auto rows = workflows::run_modes(ctx, config, swarm);
            workflows::write_modes_csv(out_dir / "modes_summary.csv", rows, ctx.batteries, ctx.panel);
            for (const auto& row : rows) print_optimum(row);
            std::printf("table written to %s\n", (out_dir / "modes_summary.csv").string().c_str());
        }
        return 0;
    } catch (const ingest::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
}
