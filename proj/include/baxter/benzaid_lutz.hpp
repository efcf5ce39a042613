#pragma once

#include <optional>
#include <vector>

#include "baxter/parameters.hpp"
#include "baxter/recurrence.hpp"

namespace baxter {

// Two-step nilpotent diagonalization of the monic system
//   Phi_{n+1} = (Lambda(z) + U(z,n)) Phi_n,  Lambda = diag(z, 1),
// via Phi_n = (I + Q2(n)) (I + Q1(n)) Y(n). The off-diagonal q-functions obey
//   q12(z, n+1) = z q12(z, n) + beta_{n+1},     q12(z, 0) = 0,
//   q21(z, n)   = z (q21(z, n+1) - alpha_{n+1}),
// the latter truncated at an absolute cutoff K (alpha treated as zero past
// K), which keeps the commutation identities exact for n < K. The tilde
// variant swaps the roles of alpha and beta and evaluates at 1/z.

enum class QVariant { Standard, Tilde };

struct QState {
    cxd z;
    long n = 0;
    long cutoff = 0;
    QVariant variant = QVariant::Standard;
    cxd q12, q21;

    cxd rho() const { return q12 * q21; }
};

QState q_state(cxd z, long n, const ParameterSequence& params, long K,
               QVariant variant = QVariant::Standard);

struct CommutationCheck {
    double residual = 0.0;     // normalized by the largest participating term
    bool within_cutoff = true; // false at n = K where the truncation bites
};

// Residual of U + Lambda Q(n) - Q(n+1) Lambda = 0 for both nilpotent pieces,
// summed and scale-normalized. Exactly zero (roundoff) for n + 1 <= K.
CommutationCheck commutation_residual(cxd z, long n, const ParameterSequence& params, long K);

struct VMatrix {
    cxd v11, v12, v21, v22;
    // telescoping bound |z b q21(n+1)| <= |b q21(n)| + |b a_{n+1}|; both sides
    // reported for the circle-case estimates
    double telescope_lhs = 0.0;
    double telescope_rhs = 0.0;

    double norm_inf() const {
        return std::max(std::abs(v11) + std::abs(v12), std::abs(v21) + std::abs(v22));
    }
};

VMatrix v_matrix(cxd z, long n, const ParameterSequence& params, long K);

// Sampled trajectory of Y(n+1) = (Lambda + V(n)) Y(n), Y(0) = (1, 1 - q21(0)).
// Long runs keep only a stride-thinned subsample plus power-of-two
// checkpoints; w_at/cumw carry the per-step ||W||, W = Lambda^{-1} V, for the
// bound assertions.
struct YTrajectory {
    cxd z;
    long N = 0;
    long K = 0;
    long stride = 1;

    std::vector<long> idx;       // sampled n (ascending, includes 0 and N)
    std::vector<cxd> y1s, y2s;
    std::vector<cxd> q12s, q21s; // q-values at the sampled n
    std::vector<double> w_at;    // ||W(n)|| at sampled n (0 at n = N)
    std::vector<double> cumw;    // sum_{k < n} ||W(k)|| at sampled n

    std::vector<long> cp_n;      // power-of-two checkpoints
    std::vector<cxd> cp_y1, cp_y2;

    cxd y1_final, y2_final;
    double sum_w = 0.0;          // total over k < N
    double tail_remainder = 0.0; // envelope bound on sum_{k >= N} ||W||
    double c1 = 0.0;             // ||Y(0)|| exp(sum_w + tail_remainder)

    size_t sample_index(long n) const;      // idx lookup (n must be sampled)
    cxd reconstructed_phi1(size_t i) const; // [(I+Q2)(I+Q1) Y]_1 = y1 + q12 y2
    cxd reconstructed_phi2(size_t i) const; // q21 y1 + (1 + rho) y2
};

YTrajectory y_iterate(cxd z, const ParameterSequence& params, long N, long K);

struct ConvergenceReport {
    cxd z;
    long N = 0;
    long K = 0;
    cxd u;
    double c1 = 0.0;
    double tail_bound = 0.0;   // c1 * (computed tail + envelope remainder)
    double last_cauchy = 0.0;  // |y2(N) - y2(2N)| at the final doubling
    double abs_y1 = 0.0;
    bool converged = false;
    long steps = 0;            // total iteration steps spent
    std::string per_step_ref;  // optional path to a dumped per-step table
};

struct NoConvergence : Error {
    explicit NoConvergence(ConvergenceReport r)
        : Error("no convergence within budget N = " + std::to_string(r.N)),
          report(std::move(r)) {}
    ConvergenceReport report;
};

struct InteriorOptions {
    long n_start = 64;
    long n_budget = 1 << 22;
    double kappa_pad = 8.0;  // q-truncation tolerance divisor
};

enum class LimitVariant { U, V };

// Interior limit u(z; alpha, beta) = lim y2(z, n) for |z| < 1, by doubling N
// until both the empirical Cauchy gap and the analytic tail bound drop below
// tol. The V variant computes u(1/z; beta, alpha) for |z| > 1. Throws
// NoConvergence (carrying the diagnostics) when the budget is exhausted.
std::pair<cxd, ConvergenceReport> interior_limit(cxd z, const ParameterSequence& params,
                                                 double tol,
                                                 LimitVariant variant = LimitVariant::U,
                                                 const InteriorOptions& opts = {});

}  // namespace baxter
