#pragma once

#include <string>
#include <vector>

#include "baxter/benzaid_lutz.hpp"
#include "baxter/parameters.hpp"

namespace baxter {

// Boundary-circle diagnostics: partial-sum evidence for membership in the
// convergence sets, the r-grid suprema, boundary limits of the reversed
// polynomials, and the two canned example families.
//
// Finite-N diagnostics cannot decide set membership; verdicts report
// evidence. The dead-band: a fitted partial-sum growth slope above +0.05
// reads diverging; a slope at or below the band with non-growing increments
// reads converging; anything else is inconclusive.

enum class Verdict { Converging, Diverging, Inconclusive };

std::string to_string(Verdict v);

struct SeriesDiag;

// Fill slopes and verdict from the recorded checkpoints (dead-band rule).
void classify_series(SeriesDiag& d);

struct SeriesDiag {
    std::vector<long> cp_n;          // checkpoints n = 2^j (and the horizon)
    std::vector<double> cp_value;    // |partial sum| (complex series) or the
                                     // nondecreasing partial sum (abs series)
    std::vector<double> cp_increment;
    double slope_sum = 0.0;          // log cp_value vs log n, tail half
    double slope_inc = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

struct TauberianReport {
    double theta = 0.0;
    long N = 0;
    long K = 0;
    SeriesDiag m_beta;    // partial sums of sum_k beta_k z^{-k}
    SeriesDiag m_alpha;   // partial sums of sum_k alpha_k z^k
    SeriesDiag e_series;  // sum_k |beta_{k+1} q21(z, k)|
    SeriesDiag e_tilde;   // sum_k |alpha_{k+1} qtilde21(z, k)|
    double n_sup = 0.0;        // N(theta): sup over r-grid and n of |q12|
    double n_tilde_sup = 0.0;  // tilde analogue over the reciprocal grid
    double e_sup = 0.0;        // E(theta): sup over r-grid of the E partial sum
    double e_tilde_sup = 0.0;
    double sup_q12_circle = 0.0;  // sup_n |q12(e^{i theta}, n)|, n <= N
    std::vector<double> r_grid;

    bool all_converging() const {
        return m_beta.verdict == Verdict::Converging && m_alpha.verdict == Verdict::Converging &&
               e_series.verdict == Verdict::Converging;
    }
};

// Partial sums and suprema at z = r e^{i theta} over the given radial grid
// (grid values in (0,1]; the tilde quantities use the reciprocal radii).
TauberianReport tauberian_report(double theta, const ParameterSequence& params, long N, long K,
                                 const std::vector<double>& r_grid);

struct BoundaryReport {
    double theta = 0.0;
    long N = 0;
    long K = 0;
    LimitVariant which = LimitVariant::U;
    cxd limit_value;                 // u_N (or v_N) from the direct route
    std::vector<long> cp_n;          // power-of-two checkpoints
    std::vector<cxd> cp_value;       // u at the checkpoints
    std::vector<double> cauchy;      // |u(2n) - u(n)| along the checkpoints
    cxd y2_final, y1_final;
    cxd product_route;               // P_N^{-1} [q21 y1 + (1 + rho) y2](N)
    double product_residual = 0.0;   // |direct - product_route| / scale
    double naive_residual = 0.0;     // |direct - P_N^{-1} y2(N)|
    double correction_magnitude = 0.0;  // |P_N^{-1} (q21 y1 + rho y2)(N)|
    double abs_q21_final = 0.0;
    bool reliable = true;            // prerequisite verdicts all converging
    bool cauchy_decreasing = false;  // two-apart decreasing along checkpoints
};

// Limit of the reversed polynomials on the circle: the direct route iterates
// the monic system and rescales by the kappa product, the second route runs
// the Y iteration at |z| = 1 and reassembles through the nilpotent change of
// variables. Both are reported so their agreement is checkable at matched
// horizon. The V flavor evaluates the conjugate point with swapped roles.
BoundaryReport boundary_limit_un(double theta, const ParameterSequence& params, long N, long K,
                                 LimitVariant which = LimitVariant::U,
                                 const TauberianReport* prereq = nullptr);

struct RadialPoint {
    double r = 0.0;
    cxd u;
    long n_used = 0;
    bool converged = false;
};

struct RadialReport {
    double theta = 0.0;
    LimitVariant which = LimitVariant::U;
    std::vector<RadialPoint> points;
    cxd extrapolated;           // Richardson step on the last two grid values
    double tail_variation = 0.0;  // max pairwise distance over the grid tail
    bool usable = false;
};

// Interior limit along z = r e^{i theta} for r from the grid (ascending to 1
// for U; the V flavor expects radii above 1 and approaches from outside).
RadialReport radial_limit(double theta, const ParameterSequence& params,
                          const std::vector<double>& r_grid, double tol,
                          LimitVariant which = LimitVariant::U, const InteriorOptions& opts = {});

struct InterchangeBudgets {
    long boundary_n = 1 << 14;
    long boundary_k_factor = 16;
    double radial_tol = 1e-6;
    int radial_points = 9;
    InteriorOptions interior{};
};

struct InterchangeReport {
    double theta = 0.0;
    cxd limit_then_radial;  // lim_r lim_n u_n
    cxd radial_then_limit;  // lim_n lim_r u_n
    double residual = 0.0;
    bool both_converged = false;
};

// Compares the two iterated limits of u_n at e^{i theta}: boundary route
// (n first, then r = 1) against the radial route (r -> 1 of the interior
// limit), sharing the kappa-product horizon so the common factor cancels.
InterchangeReport interchange_check(double theta, const ParameterSequence& params,
                                    const InterchangeBudgets& budgets = {});

struct OpucPointReport {
    double theta = 0.0;
    double max_series_diff = 0.0;  // max |E partial - Etilde partial|
    SeriesDiag nikishin;           // the shared series under conjugate symmetry
};

struct OpucReport {
    std::vector<OpucPointReport> points;
    double max_series_diff = 0.0;
};

// Under beta = conj(alpha) the E and Etilde series coincide pointwise; this
// evaluates both on the grid, asserts the symmetry numerically, and profiles
// the shared series. Throws NotOPUC when the parameters are not conjugate.
OpucReport opuc_condition(const std::vector<double>& theta_grid, const ParameterSequence& params,
                          long N, long K);

// ---------------------------------------------------------------------------
// The two example families.
// ---------------------------------------------------------------------------

struct ExampleParams {
    enum class Which { Example1, Example2 };
    Which which = Which::Example1;

    // example 1: alpha_n = n^{-3/4 - epsilon} e^{i c n log n}
    double epsilon = 0.1;
    double c = 1.0;

    // example 2: alpha_n = n^{-gamma} sum_j b_j e^{i lambda_j n}
    double gamma = 0.75;
    std::vector<cxd> b;
    std::vector<double> lambda;

    static ExampleParams example1(double epsilon = 0.1, double c = 1.0);
    static ExampleParams example2(double gamma = 0.75, std::vector<cxd> b = {cxd(1.0), cxd(0.5)},
                                  std::vector<double> lambda = {1.0, 2.0});

    // gamma > 1/2 is the hypothesis behind the uniform representation claim
    bool gamma_hypothesis_ok() const { return which == Which::Example1 || gamma > 0.5; }

    void validate() const;  // distinct lambda_j, epsilon > 0

    // singular boundary angles -lambda_j mod 2pi (example 2)
    std::vector<double> singular_angles() const;
};

// Closed-form (alpha_n, beta_n), beta_n = conj(alpha_n).
std::pair<cxd, cxd> example_values(const ExampleParams& spec, long n);

ParameterSequence example_parameter_sequence(const ExampleParams& spec);

}  // namespace baxter
