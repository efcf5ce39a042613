#include "baxter/experiments.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

namespace baxter {

namespace fs = std::filesystem;

namespace {

// index-keyed worker pool; results land in caller-owned slots so output
// order never depends on scheduling
void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t workers = std::min<size_t>(hw, count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<double> ExperimentConfig::thetas() const {
    if (!theta_list.empty()) return theta_list;
    std::vector<double> out;
    out.reserve(static_cast<size_t>(theta_count));
    for (int i = 0; i < theta_count; ++i) out.push_back(2.0 * kPi * i / theta_count);
    return out;
}

std::vector<double> ExperimentConfig::radial_grid() const {
    std::vector<double> out;
    for (int j = 2; j < 2 + r_points; ++j) out.push_back(1.0 - std::ldexp(1.0, -j));
    out.push_back(1.0);
    return out;
}

void ExperimentConfig::validate() const {
    // exactly one spec drives a run; the examples subcommand fills in its
    // canned parameters, so an empty pair is rejected by the commands instead
    if (measure.has_value() && parameters.has_value())
        throw ConfigError("config must contain exactly one of \"measure\" and \"parameters\"");
    if (n <= 0 || tol <= 0.0 || n_budget <= 0) throw ConfigError("budgets must be positive");
    if (cutoff != 0 && cutoff < n + 2) throw ConfigError("cutoff must be 0 (auto) or >= n + 2");
    if (disk_radii.empty() || disk_angles <= 0) throw ConfigError("disk grid is empty");
    if (theta_list.empty() && theta_count <= 0) throw ConfigError("theta grid is empty");
    if (r_points <= 0) throw ConfigError("r grid is empty");
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "measure") {
                c.measure = measure_from_json(val);
            } else if (key == "parameters") {
                c.parameters = parameters_from_json(val);
            } else if (key == "grids") {
                for (const auto& [gk, gv] : val.items()) {
                    if (gk == "disk_radii")
                        c.disk_radii = gv.get<std::vector<double>>();
                    else if (gk == "disk_angles")
                        c.disk_angles = gv.get<int>();
                    else if (gk == "theta")
                        c.theta_count = gv.get<int>();
                    else if (gk == "theta_list")
                        c.theta_list = gv.get<std::vector<double>>();
                    else if (gk == "r_points")
                        c.r_points = gv.get<int>();
                    else
                        throw ConfigError("unknown grid field \"" + gk + "\"");
                }
            } else if (key == "budgets") {
                for (const auto& [bk, bv] : val.items()) {
                    if (bk == "n")
                        c.n = bv.get<long>();
                    else if (bk == "cutoff")
                        c.cutoff = bv.get<long>();
                    else if (bk == "tol")
                        c.tol = bv.get<double>();
                    else if (bk == "n_budget")
                        c.n_budget = bv.get<long>();
                    else
                        throw ConfigError("unknown budget field \"" + bk + "\"");
                }
            } else if (key == "out_dir") {
                c.out_dir = val.get<std::string>();
            } else if (key == "seed") {
                c.seed = val.get<std::uint64_t>();
            } else if (key == "with_interchange") {
                c.with_interchange = val.get<bool>();
            } else {
                throw ConfigError("unknown config field \"" + key + "\"");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config field \"" + key + "\": " + e.what());
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return config_from_json(j);
}

CommandReport cmd_oracle_check(const ExperimentConfig& config) {
    if (!config.measure) throw ConfigError("oracle-check requires a measure spec");
    const MeasureSpec& spec = *config.measure;
    const int N = static_cast<int>(std::min<long>(config.n, 64));

    fs::create_directories(config.out_dir);
    CommandReport out;
    out.details["command"] = "oracle-check";

    // pinned identity tolerances
    constexpr double kIdentityTol = 1e-10;
    constexpr double kRecurrenceTol = 1e-9;
    constexpr double kBiorthTol = 1e-8;

    MomentTable table;
    ParameterSequence params = ParameterSequence::zero();
    try {
        table = moment_table(spec, N + 2);
        params = baxter_params_from_moments(table, N);
    } catch (const ZeroDeterminant& e) {
        out.ok = false;
        out.summary = std::string("oracle-check aborted: ") + e.what();
        out.details["error"] = e.what();
        out.details["zero_determinant_order"] = e.order;
        write_text_file(config.out_dir + "/report.json", out.details.dump(2) + "\n");
        return out;
    }

    Rng rng(config.seed);
    std::vector<cxd> zs;
    for (int i = 0; i < 20; ++i) zs.push_back(rng.complex_in_annulus(0.1, 2.0));

    CsvWriter csv(config.out_dir + "/identities.csv");
    csv.header({"n", "re_alpha", "im_alpha", "re_beta", "im_beta", "re_kappa", "im_kappa", "re_D",
                "im_D", "baxterpar_ratio_residual", "baxterpar_product_residual",
                "sylvester_residual", "recurrence_residual", "biorth_residual"});

    double worst_identity = 0.0, worst_recurrence = 0.0, worst_biorth = 0.0;

    std::vector<DetPolynomials> polys;
    for (int n = 0; n <= N; ++n) polys.push_back(det_polynomials(table, n));

    // bi-orthogonality is meaningful for density-only measures where the
    // integrals can be evaluated by quadrature
    const bool do_biorth = spec.has_density_only();
    const int biorth_n = std::min(N, 10);

    for (int n = 1; n <= N; ++n) {
        const cxd dn = toeplitz_det(table, n, 0);
        const cxd a = params.alpha(n);
        const cxd b = params.beta(n);
        const cxd kap = params.kappa(n);

        // 1 - a b = kappa_{n-1}^2 / kappa_n^2 with the determinant kappas
        const cxd lhs = cxd(1.0) - a * b;
        const cxd rhs = params.kappa_sq(n - 1) / params.kappa_sq(n);
        const double ratio_res =
            std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});

        // kappa_n^2 = D_n / D_{n+1}
        const cxd ksq = params.kappa_sq(n);
        const cxd dratio = polys[static_cast<size_t>(n)].det_n /
                           polys[static_cast<size_t>(n)].det_np1;
        const double prod_res =
            std::abs(ksq - dratio) / std::max({std::abs(ksq), std::abs(dratio), 1e-300});

        const double syl = sylvester_check(table, n);

        // recurrence against the determinant polynomials at the sample points
        double rec_res = 0.0;
        {
            const auto& dp = polys[static_cast<size_t>(n)];
            for (const cxd& z : zs) {
                const auto traj = iterate(z, params, n, Flavor::MonicPhi);
                const cxd monic_phi = traj.back().value1();
                const cxd monic_u2 = traj.back().value2();
                const cxd det_phi = dp.eval_phi_hat(z) / dp.det_n;
                const cxd u_rec = params.kappa_sq(n) * monic_u2;
                const cxd u_det = dp.eval_u(z);
                rec_res = std::max(rec_res, std::abs(monic_phi - det_phi) /
                                                std::max(std::abs(det_phi), 1e-300));
                rec_res = std::max(rec_res,
                                   std::abs(u_rec - u_det) / std::max(std::abs(u_det), 1e-300));
            }
        }

        double biorth_res = 0.0;
        if (do_biorth && n <= biorth_n) {
            const auto& dpn = polys[static_cast<size_t>(n)];
            for (int m = 0; m <= biorth_n; ++m) {
                const auto& dpm = polys[static_cast<size_t>(m)];
                const cxd integral = integrate(spec, [&](cxd zeta) {
                    return dpn.ell * dpn.eval_phi_hat(zeta) * dpm.ell * dpm.eval_psi_hat(zeta);
                });
                const cxd expect = (n == m) ? cxd(1.0) : cxd(0.0);
                biorth_res = std::max(biorth_res, std::abs(integral - expect));
            }
        }

        worst_identity = std::max({worst_identity, ratio_res, prod_res, syl});
        worst_recurrence = std::max(worst_recurrence, rec_res);
        worst_biorth = std::max(worst_biorth, biorth_res);

        csv.row({std::to_string(n), fmt_full(a.real()), fmt_full(a.imag()), fmt_full(b.real()),
                 fmt_full(b.imag()), fmt_full(kap.real()), fmt_full(kap.imag()),
                 fmt_full(dn.real()), fmt_full(dn.imag()), fmt_full(ratio_res),
                 fmt_full(prod_res), fmt_full(syl), fmt_full(rec_res), fmt_full(biorth_res)});
    }
    csv.flush_to_disk();

    out.ok = worst_identity <= kIdentityTol && worst_recurrence <= kRecurrenceTol &&
             (!do_biorth || worst_biorth <= kBiorthTol);
    out.details["worst_identity_residual"] = worst_identity;
    out.details["worst_recurrence_residual"] = worst_recurrence;
    out.details["worst_biorth_residual"] = worst_biorth;
    out.details["orders_checked"] = N;
    out.details["tolerances"] = json{{"identity", kIdentityTol},
                                     {"recurrence", kRecurrenceTol},
                                     {"biorthogonality", kBiorthTol}};
    out.summary = std::string(out.ok ? "oracle-check passed" : "oracle-check FAILED") +
                  " (identity " + fmt_full(worst_identity) + ", recurrence " +
                  fmt_full(worst_recurrence) + ", biorth " + fmt_full(worst_biorth) + ")";
    write_text_file(config.out_dir + "/report.json", out.details.dump(2) + "\n");
    return out;
}

CommandReport cmd_interior(const ExperimentConfig& config) {
    if (!config.parameters) throw ConfigError("interior requires a parameter spec");
    const ParameterSequence& params = *config.parameters;
    fs::create_directories(config.out_dir);

    struct Row {
        cxd z;
        ConvergenceReport rep;
        bool converged = false;
    };
    std::vector<cxd> grid;
    for (double r : config.disk_radii)
        for (int i = 0; i < config.disk_angles; ++i)
            grid.push_back(std::polar(r, 2.0 * kPi * i / config.disk_angles));

    std::vector<Row> rows(grid.size());
    InteriorOptions opts;
    opts.n_budget = config.n_budget;
    parallel_for(grid.size(), [&](size_t i) {
        Row& row = rows[i];
        row.z = grid[i];
        try {
            auto [u, rep] = interior_limit(grid[i], params, config.tol, LimitVariant::U, opts);
            row.rep = rep;
            row.converged = true;
        } catch (const NoConvergence& nc) {
            row.rep = nc.report;
            row.converged = false;
        }
    });

    CsvWriter csv(config.out_dir + "/u_grid.csv");
    csv.header({"re_z", "im_z", "re_u", "im_u", "n_used", "abs_y1", "tail_bound", "status"});
    size_t converged = 0;
    for (const auto& row : rows) {
        converged += row.converged ? 1 : 0;
        csv.row({fmt_full(row.z.real()), fmt_full(row.z.imag()), fmt_full(row.rep.u.real()),
                 fmt_full(row.rep.u.imag()), std::to_string(row.rep.N), fmt_full(row.rep.abs_y1),
                 fmt_full(row.rep.tail_bound), row.converged ? "ok" : "no_convergence"});
    }
    csv.flush_to_disk();

    CommandReport out;
    out.ok = true;  // no-convergence rows are flagged, not fatal
    out.details["command"] = "interior";
    out.details["points"] = grid.size();
    out.details["converged"] = converged;
    out.summary = "interior sweep: " + std::to_string(converged) + "/" +
                  std::to_string(grid.size()) + " points converged at tol " +
                  fmt_full(config.tol);
    write_text_file(config.out_dir + "/report.json", out.details.dump(2) + "\n");
    return out;
}

CommandReport cmd_boundary(const ExperimentConfig& config) {
    if (!config.parameters) throw ConfigError("boundary requires a parameter spec");
    const ParameterSequence& params = *config.parameters;
    fs::create_directories(config.out_dir);

    const std::vector<double> thetas = config.thetas();
    const long N = config.n;
    const long K = config.effective_cutoff();
    const std::vector<double> rgrid = config.radial_grid();

    struct Row {
        TauberianReport taub;
        BoundaryReport bu, bv;
        RadialReport rad;
        InterchangeReport inter;
        bool have_inter = false;
    };
    std::vector<Row> rows(thetas.size());

    parallel_for(thetas.size(), [&](size_t i) {
        Row& row = rows[i];
        const double th = thetas[i];
        row.taub = tauberian_report(th, params, N, K, rgrid);
        row.bu = boundary_limit_un(th, params, N, K, LimitVariant::U, &row.taub);
        row.bv = boundary_limit_un(th, params, N, K, LimitVariant::V, &row.taub);
        if (config.with_interchange) {
            InterchangeBudgets budgets;
            budgets.boundary_n = N;
            budgets.boundary_k_factor = std::max<long>(2, K / std::max<long>(N, 1));
            budgets.radial_tol = config.tol;
            budgets.radial_points = config.r_points;
            budgets.interior.n_budget = config.n_budget;
            row.inter = interchange_check(th, params, budgets);
            row.have_inter = true;
        }
    });

    CsvWriter csv(config.out_dir + "/boundary.csv");
    csv.header({"theta", "verdict_m_beta", "verdict_m_alpha", "verdict_e", "verdict_e_tilde",
                "N_theta", "E_theta", "re_ustar", "im_ustar", "re_vstar", "im_vstar",
                "interchange_residual"});
    json per_theta = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        csv.row({fmt_full(thetas[i]), to_string(row.taub.m_beta.verdict),
                 to_string(row.taub.m_alpha.verdict), to_string(row.taub.e_series.verdict),
                 to_string(row.taub.e_tilde.verdict), fmt_full(row.taub.n_sup),
                 fmt_full(row.taub.e_sup), fmt_full(row.bu.limit_value.real()),
                 fmt_full(row.bu.limit_value.imag()), fmt_full(row.bv.limit_value.real()),
                 fmt_full(row.bv.limit_value.imag()),
                 row.have_inter ? fmt_full(row.inter.residual) : "nan"});
        json entry;
        entry["tauberian"] = to_json(row.taub);
        entry["boundary_u"] = to_json(row.bu);
        entry["boundary_v"] = to_json(row.bv);
        if (row.have_inter) entry["interchange"] = to_json(row.inter);
        per_theta.push_back(entry);
    }
    csv.flush_to_disk();

    CommandReport out;
    out.ok = true;
    out.details["command"] = "boundary";
    out.details["per_theta"] = per_theta;
    out.summary = "boundary sweep over " + std::to_string(thetas.size()) + " angles written to " +
                  config.out_dir;
    write_text_file(config.out_dir + "/report.json", out.details.dump(2) + "\n");
    return out;
}

CommandReport cmd_examples(const std::string& which, ExperimentConfig config) {
    fs::create_directories(config.out_dir);
    CommandReport out;
    out.details["command"] = "examples/" + which;

    if (which == "ex1") {
        const ExampleParams spec = config.example1 ? *config.example1 : ExampleParams::example1();
        config.parameters = example_parameter_sequence(spec);

        // decay profile of sup_theta |q21| over the angle grid
        const int G = config.theta_count;
        const long n_lo = 64;
        const long n_hi = config.n;
        const long K = config.effective_cutoff();
        const ParameterSequence& params = *config.parameters;

        std::vector<double> sup(static_cast<size_t>(n_hi) + 1, 0.0);
        std::vector<std::vector<double>> per_angle(static_cast<size_t>(G));
        std::vector<int> e_verdicts(static_cast<size_t>(G), 0);
        std::vector<cxd> av, bv;
        params.values(1, K, av, bv);
        parallel_for(static_cast<size_t>(G), [&](size_t g) {
            const double th = 2.0 * kPi * static_cast<double>(g) / G;
            const cxd z = std::polar(1.0, th);
            std::vector<cxd> q21(static_cast<size_t>(n_hi) + 1);
            {
                cxd q = 0.0;
                for (long m = K - 1; m >= 0; --m) {
                    q = z * (q - av[static_cast<size_t>(m)]);
                    if (m <= n_hi) q21[static_cast<size_t>(m)] = q;
                }
            }
            std::vector<double>& local = per_angle[g];
            local.resize(static_cast<size_t>(n_hi) + 1);
            for (size_t i = 0; i < q21.size(); ++i) local[i] = std::abs(q21[i]);

            SeriesDiag diag;
            double esum = 0.0, prev = 0.0;
            long next_cp = 1;
            for (long k = 0; k <= n_hi - 1; ++k) {
                esum += std::abs(bv[static_cast<size_t>(k)] * q21[static_cast<size_t>(k)]);
                if (k + 1 == next_cp || k == n_hi - 1) {
                    diag.cp_n.push_back(k + 1);
                    diag.cp_value.push_back(esum);
                    diag.cp_increment.push_back(esum - prev);
                    prev = esum;
                    if (k + 1 == next_cp) next_cp *= 2;
                }
            }
            classify_series(diag);
            e_verdicts[g] = diag.verdict == Verdict::Converging ? 1 : 0;
        });
        for (const auto& local : per_angle)
            for (size_t i = 0; i < sup.size(); ++i) sup[i] = std::max(sup[i], local[i]);

        std::vector<double> lx, ly;
        CsvWriter csv(config.out_dir + "/q21_decay.csv");
        csv.header({"n", "sup_q21"});
        for (long n = n_lo; n <= n_hi; ++n) {
            lx.push_back(std::log(static_cast<double>(n)));
            ly.push_back(std::log(std::max(sup[static_cast<size_t>(n)], 1e-300)));
            csv.row({std::to_string(n), fmt_full(sup[static_cast<size_t>(n)])});
        }
        csv.flush_to_disk();
        const double slope = lsq_slope(lx, ly);
        int conv = 0;
        for (int v : e_verdicts) conv += v;

        out.details["slope"] = slope;
        out.details["e_converging_fraction"] = static_cast<double>(conv) / G;
        out.ok = true;
        out.summary = "example 1: sup|q21| decay slope " + fmt_full(slope) + ", E-series converging at " +
                      std::to_string(conv) + "/" + std::to_string(G) + " angles";
        write_text_file(config.out_dir + "/report.json", out.details.dump(2) + "\n");
        return out;
    }

    if (which == "ex2") {
        const ExampleParams spec = config.example2 ? *config.example2 : ExampleParams::example2();
        config.parameters = example_parameter_sequence(spec);
        if (!spec.gamma_hypothesis_ok())
            out.details["warning"] = "gamma <= 1/2: uniform representation hypothesis fails";

        // angle grid with the singular angles appended exactly
        std::vector<double> thetas = config.thetas();
        for (double s : spec.singular_angles()) thetas.push_back(s);
        config.theta_list = thetas;
        config.with_interchange = false;
        const CommandReport bd = cmd_boundary(config);
        out.details["boundary"] = bd.details;
        out.ok = bd.ok;
        out.summary = "example 2: boundary sweep over " + std::to_string(thetas.size()) +
                      " angles (singular angles appended)";
        write_text_file(config.out_dir + "/report.json", out.details.dump(2) + "\n");
        return out;
    }

    throw ConfigError("unknown example \"" + which + "\" (expected ex1 or ex2)");
}

}  // namespace baxter
