#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pvopt/lifecycle.hpp"
#include "pvopt/qpso.hpp"

namespace pvopt::workflows {

// One (plan, battery product, dispatch mode) cell of the optimization grid.
struct ComboSpec {
    std::string plan_id;
    std::string product_id;
    int mode = 2;
};

struct DesignOptimum {
    ComboSpec combo;
    lifecycle::SystemDesign design;
    lifecycle::SimulationReport report;
    long evaluations = 0;
};

struct SensitivityRow {
    std::string product_id;
    double price_factor = 1.0;
    DesignOptimum optimum;
};

// Search space over (tilt, azimuth, panel count, battery count) for a combo.
// Dimensions collapse away when a bound pins them (for example X_max = 0).
qpso::SearchSpace design_space(const ingest::SearchBounds& bounds);

// Decode an optimizer position back into a design for the given combo.
lifecycle::SystemDesign design_from_position(std::span<const double> position, const ingest::SearchBounds& bounds,
                                             const ComboSpec& combo);

// QPSO over the design box, maximizing NPV. Evaluations are memoized per
// design vertex, so revisited lattice points cost nothing.
DesignOptimum optimize_design(const lifecycle::ScenarioContext& ctx, const ComboSpec& combo,
                              const ingest::SearchBounds& bounds, const qpso::SwarmConfig& swarm);

// The full optimization grid in config order; `best` indexes the top row.
struct OptimizeRun {
    std::vector<DesignOptimum> rows;
    size_t best = 0;
};
OptimizeRun run_optimize(const lifecycle::ScenarioContext& ctx, const ingest::RunConfig& config,
                         const qpso::SwarmConfig& swarm);

// Re-optimizes at each battery price factor for each product (plan and mode
// fixed by the config's first entries), the data behind a price sweep.
std::vector<SensitivityRow> run_sensitivity(const lifecycle::ScenarioContext& ctx, const ingest::RunConfig& config,
                                            const qpso::SwarmConfig& swarm);

// Optimizes each dispatch mode at the configured battery price factor with
// plan and product fixed by the config's first entries.
std::vector<DesignOptimum> run_modes(const lifecycle::ScenarioContext& ctx, const ingest::RunConfig& config,
                                     const qpso::SwarmConfig& swarm);

// Report writers. Formats are fixed-precision so equal inputs give equal bytes.
void write_report_json(const std::filesystem::path& path, const lifecycle::SystemDesign& design,
                       const lifecycle::SimulationReport& report);
void write_quarters_csv(const std::filesystem::path& path, const lifecycle::SimulationReport& report);
void write_optimize_csv(const std::filesystem::path& path, const OptimizeRun& run,
                        const ingest::BatteryCatalogue& batteries, const pv::PvPanelSpec& panel);
void write_sensitivity_csv(const std::filesystem::path& path, const std::vector<SensitivityRow>& rows,
                           const ingest::BatteryCatalogue& batteries, const pv::PvPanelSpec& panel);
void write_modes_csv(const std::filesystem::path& path, const std::vector<DesignOptimum>& rows,
                     const ingest::BatteryCatalogue& batteries, const pv::PvPanelSpec& panel);

}  // namespace pvopt::workflows
