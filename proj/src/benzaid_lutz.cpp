#include "baxter/benzaid_lutz.hpp"

#include <algorithm>
#include <cmath>

namespace baxter {

namespace {

// Effective evaluation point and parameter roles for a variant. The tilde
// functions are the standard ones at 1/z with alpha and beta exchanged; on
// the unit circle 1/z = conj(z) exactly, and circle_inverse picks that form
// so conjugate-symmetric parameter families stay bit-symmetric.
struct QContext {
    cxd zeff;
    ParameterSequence params;
};

QContext make_context(cxd z, const ParameterSequence& params, QVariant variant) {
    if (variant == QVariant::Standard) {
        if (std::abs(z) > 1.0 + 1e-9)
            throw Error("standard q-functions require |z| <= 1");
        return {z, params};
    }
    if (std::abs(z) < 1.0 - 1e-9)
        throw Error("tilde q-functions require |z| >= 1");
    if (z == cxd(0.0)) throw ZeroPoint("tilde q-functions undefined at z = 0");
    return {circle_inverse(z), params.swapped()};
}

// q12(zeff, n) by the forward recursion.
cxd q12_at(cxd zeff, const ParameterSequence& params, long n) {
    if (n == 0) return cxd(0.0);
    std::vector<cxd> av, bv;
    params.values(1, n, av, bv);
    cxd q = 0.0;
    for (long k = 0; k < n; ++k) q = zeff * q + bv[static_cast<size_t>(k)];
    return q;
}

// q21(zeff, n) by the backward recursion from the cutoff.
cxd q21_at(cxd zeff, const ParameterSequence& params, long n, long K) {
    if (K < n) throw CutoffTooSmall("cutoff K = " + std::to_string(K) +
                                    " below requested index n = " + std::to_string(n));
    if (K == n) return cxd(0.0);
    constexpr long kBlock = 1L << 16;
    cxd q = 0.0;
    std::vector<cxd> av, bv;
    for (long hi = K; hi > n; hi = std::max(hi - kBlock, n)) {
        const long lo = std::max(hi - kBlock, n);
        params.values(lo + 1, hi, av, bv);
        for (long m = hi - 1; m >= lo; --m) q = zeff * (q - av[static_cast<size_t>(m - lo)]);
        if (lo == n) break;
    }
    return q;
}

// q21 trajectory for n = 0..n_max (array), recursion run from K; parameters
// fetched in blocks so huge cutoffs do not materialize huge copies.
std::vector<cxd> q21_array(cxd zeff, const ParameterSequence& params, long n_max, long K) {
    if (K < n_max) throw CutoffTooSmall("cutoff below trajectory horizon");
    constexpr long kBlock = 1L << 16;
    std::vector<cxd> out(static_cast<size_t>(n_max) + 1, cxd(0.0));
    cxd q = 0.0;
    std::vector<cxd> av, bv;
    for (long hi = K; hi > 0; hi = std::max<long>(hi - kBlock, 0)) {
        const long lo = std::max<long>(hi - kBlock, 0);
        params.values(lo + 1, hi, av, bv);
        for (long m = hi - 1; m >= lo; --m) {
            q = zeff * (q - av[static_cast<size_t>(m - lo)]);
            if (m <= n_max) out[static_cast<size_t>(m)] = q;
        }
        if (lo == 0) break;
    }
    return out;
}

double inf_norm2(cxd a, cxd b) { return std::abs(a) + std::abs(b); }

}  // namespace

QState q_state(cxd z, long n, const ParameterSequence& params, long K, QVariant variant) {
    if (n < 0) throw Error("q_state: n must be >= 0");
    const QContext ctx = make_context(z, params, variant);
    QState s;
    s.z = z;
    s.n = n;
    s.cutoff = K;
    s.variant = variant;
    s.q12 = q12_at(ctx.zeff, ctx.params, n);
    s.q21 = q21_at(ctx.zeff, ctx.params, n, K);
    return s;
}

CommutationCheck commutation_residual(cxd z, long n, const ParameterSequence& params, long K) {
    if (n > K) throw CutoffTooSmall("commutation check needs n <= K");
    const cxd a = params.alpha(n + 1);
    const cxd b = params.beta(n + 1);
    const cxd q12n = q12_at(z, params, n);
    const cxd q12p = q12_at(z, params, n + 1);
    const cxd q21n = q21_at(z, params, n, K);
    const cxd q21p = (n + 1 <= K) ? q21_at(z, params, n + 1, K) : cxd(0.0);

    // upper nilpotent piece carries q12 against the beta part of U, the lower
    // carries q21 against the alpha part
    const cxd upper = b + z * q12n - q12p;
    const cxd lower = a * z + q21n - z * q21p;
    const double scale = std::max({std::abs(b), std::abs(z * q12n), std::abs(q12p),
                                   std::abs(a * z), std::abs(q21n), std::abs(z * q21p), 1e-300});
    CommutationCheck c;
    c.residual = (std::abs(upper) + std::abs(lower)) / scale;
    c.within_cutoff = (n + 1 <= K);
    return c;
}

VMatrix v_matrix(cxd z, long n, const ParameterSequence& params, long K) {
    if (n + 2 > K) throw CutoffTooSmall("v_matrix needs n + 2 <= K");
    const cxd b = params.beta(n + 1);
    const cxd a = params.alpha(n + 1);
    const cxd q12n = q12_at(z, params, n);
    const cxd q12p = q12_at(z, params, n + 1);
    const cxd q21n = q21_at(z, params, n, K);
    const cxd q21p = q21_at(z, params, n + 1, K);
    const cxd rho_n = q12n * q21n;
    const cxd rho_p = q12p * q21p;

    VMatrix v;
    v.v11 = b * q21n * (cxd(1.0) + rho_p);
    v.v12 = b * (rho_p + rho_n + rho_n * rho_p);
    v.v21 = -b * q21n * q21p;
    v.v22 = -b * q21p * (cxd(1.0) + rho_n);
    v.telescope_lhs = std::abs(z * b * q21p);
    v.telescope_rhs = std::abs(b * q21n) + std::abs(b * a);
    return v;
}

size_t YTrajectory::sample_index(long n) const {
    const auto it = std::lower_bound(idx.begin(), idx.end(), n);
    if (it == idx.end() || *it != n) throw Error("n is not a sampled trajectory index");
    return static_cast<size_t>(it - idx.begin());
}

cxd YTrajectory::reconstructed_phi1(size_t i) const { return y1s[i] + q12s[i] * y2s[i]; }

cxd YTrajectory::reconstructed_phi2(size_t i) const {
    return q21s[i] * y1s[i] + (cxd(1.0) + q12s[i] * q21s[i]) * y2s[i];
}

YTrajectory y_iterate(cxd z, const ParameterSequence& params, long N, long K) {
    if (N < 0) throw Error("y_iterate: N must be >= 0");
    if (N + 2 > K) throw CutoffTooSmall("y_iterate needs N + 2 <= K");
    if (std::abs(z) > 1.0 + 1e-9) throw Error("y_iterate requires |z| <= 1");

    YTrajectory t;
    t.z = z;
    t.N = N;
    t.K = K;
    t.stride = std::max<long>(1, N / 4096);

    const std::vector<cxd> q21 = q21_array(z, params, N + 1, K);
    std::vector<cxd> av, bv;
    if (N > 0) params.values(1, N, av, bv);

    // at z = 0 every q21 vanishes and V = 0, so Lambda^{-1} never acts on a
    // nonzero entry; use 0 to keep the norms clean instead of dividing by z
    const cxd zinv = (z == cxd(0.0)) ? cxd(0.0) : circle_inverse(z);
    cxd y1 = 1.0;
    cxd y2 = cxd(1.0) - q21[0];
    cxd q12 = 0.0;
    double cum = 0.0;

    const double norm_y0 = std::max(std::abs(y1), std::abs(y2));

    auto sample = [&](long n, double w_here) {
        t.idx.push_back(n);
        t.y1s.push_back(y1);
        t.y2s.push_back(y2);
        t.q12s.push_back(q12);
        t.q21s.push_back(q21[static_cast<size_t>(n)]);
        t.w_at.push_back(w_here);
        t.cumw.push_back(cum);
    };

    long next_cp = 1;
    for (long n = 0; n < N; ++n) {
        const cxd b = bv[static_cast<size_t>(n)];
        const cxd q12p = z * q12 + b;
        const cxd q21n = q21[static_cast<size_t>(n)];
        const cxd q21p = q21[static_cast<size_t>(n + 1)];
        const cxd rho_n = q12 * q21n;
        const cxd rho_p = q12p * q21p;
        const cxd v11 = b * q21n * (cxd(1.0) + rho_p);
        const cxd v12 = b * (rho_p + rho_n + rho_n * rho_p);
        const cxd v21 = -b * q21n * q21p;
        const cxd v22 = -b * q21p * (cxd(1.0) + rho_n);

        const double w_norm =
            std::max(inf_norm2(v11 * zinv, v12 * zinv), inf_norm2(v21, v22));

        if (n % t.stride == 0) sample(n, w_norm);

        const cxd ny1 = (z + v11) * y1 + v12 * y2;
        const cxd ny2 = v21 * y1 + (cxd(1.0) + v22) * y2;
        y1 = ny1;
        y2 = ny2;
        q12 = q12p;
        cum += w_norm;

        if (!is_finite(y1) || !is_finite(y2))
            throw NonFiniteValue("Y iteration lost finiteness at n = " + std::to_string(n + 1));

        if (n + 1 == next_cp || n + 1 == N) {
            if (n + 1 == next_cp) next_cp *= 2;
            t.cp_n.push_back(n + 1);
            t.cp_y1.push_back(y1);
            t.cp_y2.push_back(y2);
        }
    }
    if (t.idx.empty() || t.idx.back() != N) sample(N, 0.0);
    t.y1_final = y1;
    t.y2_final = y2;
    t.sum_w = cum;

    // Envelope remainder for sum_{k >= N} ||W||: per-term bounds
    // |q21(k)| <= amp (k+1)^{-p} |z|/(1-|z|), |q12| <= amp/(1-|z|), assembled
    // into a crude but valid constant. Meaningless on the circle itself where
    // boundary diagnostics replace it.
    const double r = std::abs(z);
    if (r < 1.0) {
        const DecayEnvelope& env = params.envelope();
        const double g = r / (1.0 - r);
        const double B = env.amp / (1.0 - r);
        const double qb0 = env.pointwise(std::max<long>(N, 1)) * g;
        const double C = 1.0 + 2.0 * B + (1.0 + B + B * B) * qb0 + qb0;
        t.tail_remainder = (C * g / std::max(r, 1e-300)) * env.tail_sq(std::max<long>(N, 1));
    } else {
        t.tail_remainder = std::numeric_limits<double>::infinity();
    }
    t.c1 = norm_y0 * std::exp(std::min(700.0, t.sum_w + t.tail_remainder));
    return t;
}

std::pair<cxd, ConvergenceReport> interior_limit(cxd z, const ParameterSequence& params,
                                                 double tol, LimitVariant variant,
                                                 const InteriorOptions& opts) {
    cxd zeff = z;
    ParameterSequence p = params;
    if (variant == LimitVariant::V) {
        if (std::abs(z) <= 1.0) throw Error("V variant requires |z| > 1");
        zeff = circle_inverse(z);
        p = params.swapped();
    } else if (std::abs(z) >= 1.0) {
        throw Error("U variant requires |z| < 1");
    }

    const double r = std::abs(zeff);
    ConvergenceReport rep;
    rep.z = z;
    long N = 4;
    while (N < opts.n_start) N *= 2;  // power of two so y2(N) is a checkpoint
    long steps = 0;

    while (true) {
        // cutoff: truncation error in q21(n), n <= 2N, stays below a fraction
        // of tol thanks to the geometric factor |z|^{K-n}
        const double tail2 = p.tail_l2(2 * N);
        const double q_tol = tol * (1.0 - r) / opts.kappa_pad;
        long margin = 64;
        if (tail2 > 0.0 && q_tol > 0.0 && r > 0.0) {
            const double need = std::log(tail2 / (q_tol * std::sqrt(1.0 - r * r))) / (-std::log(r));
            if (std::isfinite(need) && need > 0.0) margin = std::max<long>(margin, static_cast<long>(need) + 2);
        }
        const DecayEnvelope& env = p.envelope();
        long K = 2 * N + margin;
        if (env.finite) K = std::max(2 * N + 2, env.horizon + 1);

        const YTrajectory t = y_iterate(zeff, p, 2 * N, K);
        steps += 2 * N + K;

        // y2 at N and 2N are both power-of-two checkpoints of this run
        bool found_half = false;
        cxd y2_half = t.y2_final;
        for (size_t i = 0; i < t.cp_n.size(); ++i)
            if (t.cp_n[i] == N) {
                y2_half = t.cp_y2[i];
                found_half = true;
            }
        if (!found_half) throw Error("internal: midpoint checkpoint missing");
        const double cauchy = std::abs(t.y2_final - y2_half);

        double cum_at_N = 0.0;
        for (size_t i = 0; i < t.idx.size(); ++i)
            if (t.idx[i] <= N) cum_at_N = t.cumw[i];
        const double tail_sum = (t.sum_w - cum_at_N) + t.tail_remainder;
        const double tail_bound = t.c1 * tail_sum;

        rep.N = N;
        rep.K = K;
        rep.u = t.y2_final;
        rep.c1 = t.c1;
        rep.tail_bound = tail_bound;
        rep.last_cauchy = cauchy;
        rep.abs_y1 = std::abs(t.y1_final);
        rep.steps = steps;

        if (cauchy < tol && tail_bound < tol) {
            rep.converged = true;
            return {t.y2_final, rep};
        }
        if (2 * N >= opts.n_budget) {
            rep.converged = false;
            throw NoConvergence(rep);
        }
        N *= 2;
    }
}

}  // namespace baxter
