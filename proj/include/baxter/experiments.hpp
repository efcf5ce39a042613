#pragma once

#include <optional>
#include <string>

#include "baxter/io.hpp"
#include "baxter/toeplitz.hpp"

namespace baxter {

// Configuration-driven experiment front end. A single self-describing JSON
// document holds the measure or parameter spec, the grids, and the budgets;
// CLI flags are overrides of individual fields. Identical config + seed
// produces byte-identical artifacts.

struct ExperimentConfig {
    std::optional<MeasureSpec> measure;
    std::optional<ParameterSequence> parameters;

    // grids
    std::vector<double> disk_radii{0.3, 0.6, 0.9};
    int disk_angles = 8;
    std::vector<double> theta_list;  // explicit angles win over theta_count
    int theta_count = 64;
    int r_points = 6;  // log-spaced approach to the circle, r = 1 included

    // budgets
    long n = 2048;
    long cutoff = 0;  // 0 -> 16 n
    double tol = 1e-6;
    long n_budget = 1 << 20;

    std::string out_dir = "out";
    std::uint64_t seed = 12345;
    bool with_interchange = true;

    // overrides for the canned example runs (examples subcommand only)
    std::optional<ExampleParams> example1;
    std::optional<ExampleParams> example2;

    long effective_cutoff() const { return cutoff > 0 ? cutoff : 16 * n; }
    std::vector<double> thetas() const;
    std::vector<double> radial_grid() const;  // in (0, 1], includes 1
    void validate() const;
};

ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::string& path);

struct CommandReport {
    bool ok = true;
    std::string summary;
    json details;
};

// Measure-driven identity sweep: Baxter parameters from determinant ratios,
// determinant polynomials against the recurrence at random points, the
// Sylvester identity, kappa products, and bi-orthogonality for density
// measures. Writes identities.csv and report.json; ok = false when any
// residual exceeds its pinned tolerance.
CommandReport cmd_oracle_check(const ExperimentConfig& config);

// Interior limit sweep over the disk grid; writes u_grid.csv. Rows that
// exhaust the budget are flagged, not fatal.
CommandReport cmd_interior(const ExperimentConfig& config);

// Per-angle boundary diagnostics, boundary limits, radial limits and the
// interchange residual; writes boundary.csv and report.json.
CommandReport cmd_boundary(const ExperimentConfig& config);

// Canned configurations for the two example families; overrides taken from
// the given config. which: "ex1" or "ex2".
CommandReport cmd_examples(const std::string& which, ExperimentConfig config);

}  // namespace baxter
