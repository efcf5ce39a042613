// Command-line front end: oracle checks against the Toeplitz ground truth,
// interior limit sweeps, boundary diagnostics, and the two canned example
// families. All experiments are driven by a JSON config; flags override
// individual config fields.

#include <iostream>

#include <CLI11.hpp>

#include "baxter/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    long n = -1;
    long cutoff = -1;
    double tol = -1.0;
    std::int64_t seed = -1;
    int grid_theta = -1;
    int grid_r = -1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config JSON");
    cmd->add_option("--out", f.out_dir, "output directory (overrides config)");
    cmd->add_option("--n", f.n, "iteration horizon N");
    cmd->add_option("--cutoff", f.cutoff, "tail-sum cutoff K (0 = auto)");
    cmd->add_option("--tol", f.tol, "convergence tolerance");
    cmd->add_option("--seed", f.seed, "seed for randomized checks");
    cmd->add_option("--grid-theta", f.grid_theta, "number of boundary angles");
    cmd->add_option("--grid-r", f.grid_r, "number of radial grid points");
}

baxter::ExperimentConfig resolve(const CommonFlags& f) {
    baxter::ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = baxter::load_config(f.config_path);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (f.n > 0) cfg.n = f.n;
    if (f.cutoff >= 0) cfg.cutoff = f.cutoff;
    if (f.tol > 0) cfg.tol = f.tol;
    if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
    if (f.grid_theta > 0) cfg.theta_count = f.grid_theta;
    if (f.grid_r > 0) cfg.r_points = f.grid_r;
    return cfg;
}

int finish(const baxter::CommandReport& rep) {
    std::cout << rep.summary << "\n";
    return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for Baxter difference systems"};
    app.require_subcommand(1);

    CommonFlags oracle_flags, interior_flags, boundary_flags, examples_flags;

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "determinant identities vs the recurrence engine");
    add_common(oracle, oracle_flags);

    CLI::App* interior = app.add_subcommand("interior", "interior limit sweep over a disk grid");
    add_common(interior, interior_flags);

    CLI::App* boundary = app.add_subcommand("boundary", "boundary diagnostics over a theta grid");
    add_common(boundary, boundary_flags);

    CLI::App* examples = app.add_subcommand("examples", "canned example families");
    std::string which;
    double epsilon = -1.0, cc = -1.0, gamma = -1.0;
    examples->add_option("which", which, "ex1 or ex2")->required();
    examples->add_option("--epsilon", epsilon, "example 1 decay offset");
    examples->add_option("--c", cc, "example 1 phase constant");
    examples->add_option("--gamma", gamma, "example 2 decay exponent");
    add_common(examples, examples_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (oracle->parsed()) return finish(baxter::cmd_oracle_check(resolve(oracle_flags)));
        if (interior->parsed()) return finish(baxter::cmd_interior(resolve(interior_flags)));
        if (boundary->parsed()) return finish(baxter::cmd_boundary(resolve(boundary_flags)));
        if (examples->parsed()) {
            baxter::ExperimentConfig cfg = resolve(examples_flags);
            if (which == "ex1") {
                auto e = baxter::ExampleParams::example1(epsilon > 0 ? epsilon : 0.1,
                                                         cc > 0 ? cc : 1.0);
                cfg.example1 = e;
            } else if (which == "ex2") {
                auto e = baxter::ExampleParams::example2();
                if (gamma > 0) e.gamma = gamma;
                e.validate();
                cfg.example2 = e;
            }
            if (cfg.parameters) cfg.parameters.reset();  // canned family wins
            return finish(baxter::cmd_examples(which, std::move(cfg)));
        }
    } catch (const baxter::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const baxter::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
