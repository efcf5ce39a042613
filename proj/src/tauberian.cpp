#include "baxter/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace baxter {

namespace {

constexpr double kSlopeDeadband = 0.05;

}  // namespace

// Fit the growth slope over the tail half of the checkpoints (at least four
// points when available) and classify. Zero sums short-circuit to converging.
void classify_series(SeriesDiag& d) {
    const size_t m = d.cp_value.size();
    if (m == 0) {
        d.verdict = Verdict::Inconclusive;
        return;
    }
    if (d.cp_value.back() == 0.0) {
        d.verdict = Verdict::Converging;
        return;
    }
    std::vector<double> lx, ly;
    const size_t start = m > 8 ? m / 2 : (m > 4 ? m - 4 : 0);
    for (size_t i = start; i < m; ++i) {
        if (d.cp_value[i] <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(d.cp_n[i])));
        ly.push_back(std::log(d.cp_value[i]));
    }
    d.slope_sum = lsq_slope(lx, ly);

    lx.clear();
    ly.clear();
    const size_t mi = d.cp_increment.size();
    const size_t si = mi > 8 ? mi / 2 : 0;
    for (size_t i = si; i < mi; ++i) {
        if (d.cp_increment[i] <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(d.cp_n[i])));
        ly.push_back(std::log(d.cp_increment[i]));
    }
    d.slope_inc = lsq_slope(lx, ly);

    if (d.slope_sum > kSlopeDeadband) {
        d.verdict = Verdict::Diverging;
        return;
    }
    // bounded increments: the late increments must not outgrow the early ones
    double head = 0.0, tail = 0.0;
    for (size_t i = 0; i < mi; ++i) {
        if (i < (mi + 1) / 2)
            head = std::max(head, d.cp_increment[i]);
        else
            tail = std::max(tail, d.cp_increment[i]);
    }
    const double scale = std::max(1.0, d.cp_value.back());
    if (mi == 0 || tail <= 1.25 * head + 1e-12 * scale)
        d.verdict = Verdict::Converging;
    else
        d.verdict = Verdict::Inconclusive;
}

namespace {

std::vector<long> checkpoint_grid(long N) {
    std::vector<long> cps;
    for (long n = 1; n < N; n *= 2) cps.push_back(n);
    cps.push_back(N);
    return cps;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Converging: return "converging";
        case Verdict::Diverging: return "diverging";
        default: return "inconclusive";
    }
}

TauberianReport tauberian_report(double theta, const ParameterSequence& params, long N, long K,
                                 const std::vector<double>& r_grid) {
    if (N + 2 > K) throw CutoffTooSmall("tauberian_report needs N + 2 <= K");
    TauberianReport rep;
    rep.theta = theta;
    rep.N = N;
    rep.K = K;
    rep.r_grid = r_grid;

    const cxd z = std::polar(1.0, theta);
    const cxd zc = std::conj(z);  // = z^{-1} on the circle, exactly
    const std::vector<long> cps = checkpoint_grid(N);

    // one bulk fetch up to the cutoff; every loop below indexes into these
    std::vector<cxd> av, bv;
    params.values(1, K, av, bv);

    // the two membership series: sum beta_k z^{-k} and sum alpha_k z^k
    {
        cxd sb = 0.0, sa = 0.0;
        cxd zk = 1.0, zck = 1.0;  // z^k, z^{-k}
        size_t cp = 0;
        cxd prev_b = 0.0, prev_a = 0.0;
        for (long k = 1; k <= N; ++k) {
            zk *= z;
            zck *= zc;
            sb += bv[static_cast<size_t>(k - 1)] * zck;
            sa += av[static_cast<size_t>(k - 1)] * zk;
            if (cp < cps.size() && k == cps[cp]) {
                rep.m_beta.cp_n.push_back(k);
                rep.m_beta.cp_value.push_back(std::abs(sb));
                rep.m_beta.cp_increment.push_back(std::abs(sb - prev_b));
                rep.m_alpha.cp_n.push_back(k);
                rep.m_alpha.cp_value.push_back(std::abs(sa));
                rep.m_alpha.cp_increment.push_back(std::abs(sa - prev_a));
                prev_b = sb;
                prev_a = sa;
                ++cp;
            }
        }
        classify_series(rep.m_beta);
        classify_series(rep.m_alpha);
    }

    // E and Etilde partial sums on the circle, via the q-recursions
    const auto run_abs_series = [&](QVariant variant, SeriesDiag& diag) {
        // term_k = |coeff_{k+1} * q21(z, k)|, coeff = beta for standard and
        // alpha for tilde
        const cxd zeff = variant == QVariant::Standard ? z : zc;
        const std::vector<cxd>& tailc = variant == QVariant::Standard ? av : bv;
        std::vector<cxd> q21(static_cast<size_t>(N) + 2, cxd(0.0));
        {
            cxd q = 0.0;
            for (long m = K - 1; m >= 0; --m) {
                q = zeff * (q - tailc[static_cast<size_t>(m)]);
                if (m <= N + 1) q21[static_cast<size_t>(m)] = q;
            }
        }
        double sum = 0.0, prev = 0.0;
        size_t cp = 0;
        for (long k = 0; k <= N; ++k) {
            const cxd coef = variant == QVariant::Standard ? bv[static_cast<size_t>(k)]
                                                           : av[static_cast<size_t>(k)];
            sum += std::abs(coef * q21[static_cast<size_t>(k)]);
            if (cp < cps.size() && k + 1 == cps[cp]) {
                diag.cp_n.push_back(k + 1);
                diag.cp_value.push_back(sum);
                diag.cp_increment.push_back(sum - prev);
                prev = sum;
                ++cp;
            }
        }
        classify_series(diag);
        return sum;
    };
    const double e_circle = run_abs_series(QVariant::Standard, rep.e_series);
    const double et_circle = run_abs_series(QVariant::Tilde, rep.e_tilde);

    // r-grid suprema; r = 1 contributes the circle values computed above
    rep.e_sup = e_circle;
    rep.e_tilde_sup = et_circle;
    for (double r : r_grid) {
        if (!(r > 0.0) || r > 1.0) throw Error("tauberian r-grid values must lie in (0, 1]");
        const cxd zr = std::polar(r, theta);
        const cxd zrt = std::polar(1.0 / r, theta);

        double sup12 = 0.0, sup12t = 0.0;
        {
            cxd q = 0.0, qt = 0.0;
            const cxd zrt_inv = circle_inverse(zrt);
            for (long n = 0; n < N; ++n) {
                q = zr * q + bv[static_cast<size_t>(n)];
                qt = zrt_inv * qt + av[static_cast<size_t>(n)];
                sup12 = std::max(sup12, std::abs(q));
                sup12t = std::max(sup12t, std::abs(qt));
            }
            if (r == 1.0) rep.sup_q12_circle = sup12;
        }
        rep.n_sup = std::max(rep.n_sup, sup12);
        rep.n_tilde_sup = std::max(rep.n_tilde_sup, sup12t);

        if (r < 1.0) {
            double esum = 0.0, etsum = 0.0;
            {
                std::vector<cxd> q21(static_cast<size_t>(N) + 1, cxd(0.0));
                cxd q = 0.0, qt = 0.0;
                const cxd zrt_inv = circle_inverse(zrt);
                std::vector<cxd> q21t(static_cast<size_t>(N) + 1, cxd(0.0));
                for (long m = K - 1; m >= 0; --m) {
                    q = zr * (q - av[static_cast<size_t>(m)]);
                    qt = zrt_inv * (qt - bv[static_cast<size_t>(m)]);
                    if (m <= N) {
                        q21[static_cast<size_t>(m)] = q;
                        q21t[static_cast<size_t>(m)] = qt;
                    }
                }
                for (long k = 0; k <= N; ++k) {
                    esum += std::abs(bv[static_cast<size_t>(k)] * q21[static_cast<size_t>(k)]);
                    etsum += std::abs(av[static_cast<size_t>(k)] * q21t[static_cast<size_t>(k)]);
                }
            }
            rep.e_sup = std::max(rep.e_sup, esum);
            rep.e_tilde_sup = std::max(rep.e_tilde_sup, etsum);
        }
    }
    if (rep.sup_q12_circle == 0.0) {
        // circle value even when the grid omits r = 1
        cxd q = 0.0;
        for (long n = 0; n < N; ++n) {
            q = z * q + bv[static_cast<size_t>(n)];
            rep.sup_q12_circle = std::max(rep.sup_q12_circle, std::abs(q));
        }
    }
    rep.n_sup = std::max(rep.n_sup, rep.sup_q12_circle);
    return rep;
}

BoundaryReport boundary_limit_un(double theta, const ParameterSequence& params, long N, long K,
                                 LimitVariant which, const TauberianReport* prereq) {
    BoundaryReport rep;
    rep.theta = theta;
    rep.N = N;
    rep.K = K;
    rep.which = which;
    if (prereq) rep.reliable = prereq->all_converging();

    // The v-limit is the u-limit of the swapped family at the conjugate
    // point; everything below runs in those effective coordinates.
    const cxd z = std::polar(1.0, theta);
    const cxd zeff = which == LimitVariant::U ? z : std::conj(z);
    const ParameterSequence peff = which == LimitVariant::U ? params : params.swapped();

    // direct route: monic iteration, u_n = P_n^{-1} * second component
    {
        std::vector<cxd> av, bv;
        peff.values(1, N, av, bv);
        cxd p1 = 1.0, p2 = 1.0;
        const std::vector<long> cps = checkpoint_grid(N);
        size_t cp = 0;
        for (long n = 0; n < N; ++n) {
            const cxd a = av[static_cast<size_t>(n)];
            const cxd b = bv[static_cast<size_t>(n)];
            const cxd n1 = zeff * p1 + b * p2;
            const cxd n2 = a * zeff * p1 + p2;
            p1 = n1;
            p2 = n2;
            if (!is_finite(p1) || !is_finite(p2))
                throw NonFiniteValue("monic boundary iteration overflowed");
            if (cp < cps.size() && n + 1 == cps[cp]) {
                rep.cp_n.push_back(n + 1);
                rep.cp_value.push_back(p2 / peff.prefix_product(n + 1));
                ++cp;
            }
        }
        rep.limit_value = rep.cp_value.back();
    }
    for (size_t i = 0; i + 1 < rep.cp_value.size(); ++i)
        rep.cauchy.push_back(std::abs(rep.cp_value[i + 1] - rep.cp_value[i]));

    // two-apart decreasing: robust to the oscillatory adjacent fluctuations
    if (rep.cauchy.size() >= 4) {
        const size_t m = rep.cauchy.size();
        rep.cauchy_decreasing =
            rep.cauchy[m - 1] < rep.cauchy[m - 3] && rep.cauchy[m - 2] < rep.cauchy[m - 4];
    }

    // second route: Y iteration at |z| = 1 reassembled through the
    // change of variables
    {
        const YTrajectory t = y_iterate(zeff, peff, N, K);
        rep.y1_final = t.y1_final;
        rep.y2_final = t.y2_final;
        const size_t i = t.sample_index(N);
        const cxd pn_inv = cxd(1.0) / peff.prefix_product(N);
        rep.product_route = pn_inv * t.reconstructed_phi2(i);
        rep.naive_residual = std::abs(rep.limit_value - pn_inv * t.y2_final);
        rep.correction_magnitude =
            std::abs(pn_inv * (t.q21s[i] * t.y1_final + t.q12s[i] * t.q21s[i] * t.y2_final));
        rep.abs_q21_final = std::abs(t.q21s[i]);
        const double scale = std::max(std::abs(rep.limit_value), 1e-300);
        rep.product_residual = std::abs(rep.limit_value - rep.product_route) / scale;
    }
    return rep;
}

RadialReport radial_limit(double theta, const ParameterSequence& params,
                          const std::vector<double>& r_grid, double tol, LimitVariant which,
                          const InteriorOptions& opts) {
    RadialReport rep;
    rep.theta = theta;
    rep.which = which;
    for (double r : r_grid) {
        if (which == LimitVariant::U && !(r > 0.0 && r < 1.0))
            throw Error("radial U grid must lie in (0, 1)");
        if (which == LimitVariant::V && !(r > 1.0))
            throw Error("radial V grid must lie in (1, inf)");
        RadialPoint pt;
        pt.r = r;
        const cxd zr = std::polar(r, theta);
        try {
            auto [u, crep] = interior_limit(zr, params, tol, which, opts);
            pt.u = u;
            pt.n_used = crep.N;
            pt.converged = true;
        } catch (const NoConvergence& nc) {
            pt.u = nc.report.u;
            pt.n_used = nc.report.N;
            pt.converged = false;
        }
        rep.points.push_back(pt);
    }
    const size_t m = rep.points.size();
    rep.usable = (m >= 2) && rep.points[m - 1].converged && rep.points[m - 2].converged;
    if (rep.usable) {
        // grids halving the distance to the circle make the leading error
        // linear in (1 - r); one Richardson step cancels it
        rep.extrapolated =
            rep.points[m - 1].u + (rep.points[m - 1].u - rep.points[m - 2].u);
    }
    const size_t tail_start = m >= 3 ? m - 3 : 0;
    for (size_t i = tail_start; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            rep.tail_variation =
                std::max(rep.tail_variation, std::abs(rep.points[i].u - rep.points[j].u));
    return rep;
}

InterchangeReport interchange_check(double theta, const ParameterSequence& params,
                                    const InterchangeBudgets& budgets) {
    InterchangeReport rep;
    rep.theta = theta;

    const long N = budgets.boundary_n;
    const long K = budgets.boundary_k_factor * N;
    const BoundaryReport bdry = boundary_limit_un(theta, params, N, K, LimitVariant::U);

    std::vector<double> r_grid;
    for (int j = 2; j < 2 + budgets.radial_points; ++j) r_grid.push_back(1.0 - std::ldexp(1.0, -j));
    const RadialReport rad =
        radial_limit(theta, params, r_grid, budgets.radial_tol, LimitVariant::U, budgets.interior);

    // both orders share the same kappa-product horizon so the common factor
    // cancels from the comparison
    const cxd pn_inv = cxd(1.0) / params.prefix_product(N);
    rep.limit_then_radial = pn_inv * rad.extrapolated;  // n first, then r -> 1
    rep.radial_then_limit = bdry.limit_value;           // r = 1 first, then n
    rep.both_converged = rad.usable;
    rep.residual = rad.usable
                       ? std::abs(rep.limit_then_radial - rep.radial_then_limit)
                       : std::numeric_limits<double>::infinity();
    return rep;
}

OpucReport opuc_condition(const std::vector<double>& theta_grid, const ParameterSequence& params,
                          long N, long K) {
    // conjugate-pair validation on a sample of indices
    for (long n = 1; n <= std::min<long>(64, N); ++n) {
        const cxd a = params.alpha(n);
        const cxd b = params.beta(n);
        if (std::abs(b - std::conj(a)) > 1e-14 * std::max(1.0, std::abs(a)))
            throw NotOPUC("beta_n != conj(alpha_n) at n = " + std::to_string(n));
    }

    OpucReport rep;
    for (double theta : theta_grid) {
        OpucPointReport pt;
        pt.theta = theta;

        const TauberianReport tr = tauberian_report(theta, params, N, K, {1.0});
        pt.nikishin = tr.e_series;
        double diff = 0.0;
        for (size_t i = 0; i < tr.e_series.cp_value.size() && i < tr.e_tilde.cp_value.size(); ++i)
            diff = std::max(diff, std::abs(tr.e_series.cp_value[i] - tr.e_tilde.cp_value[i]));
        pt.max_series_diff = diff;
        rep.max_series_diff = std::max(rep.max_series_diff, diff);
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Example families.
// ---------------------------------------------------------------------------

ExampleParams ExampleParams::example1(double epsilon, double c) {
    ExampleParams e;
    e.which = Which::Example1;
    e.epsilon = epsilon;
    e.c = c;
    e.validate();
    return e;
}

ExampleParams ExampleParams::example2(double gamma, std::vector<cxd> b,
                                      std::vector<double> lambda) {
    ExampleParams e;
    e.which = Which::Example2;
    e.gamma = gamma;
    e.b = std::move(b);
    e.lambda = std::move(lambda);
    e.validate();
    return e;
}

void ExampleParams::validate() const {
    if (which == Which::Example1) {
        if (!(epsilon > 0.0)) throw Error("example 1 requires epsilon > 0");
        return;
    }
    if (b.size() != lambda.size() || b.empty())
        throw Error("example 2 requires matching nonempty b and lambda lists");
    for (size_t i = 0; i < lambda.size(); ++i)
        for (size_t j = i + 1; j < lambda.size(); ++j)
            if (lambda[i] == lambda[j]) throw Error("example 2 frequencies must be distinct");
}

std::vector<double> ExampleParams::singular_angles() const {
    std::vector<double> out;
    if (which != Which::Example2) return out;
    for (double l : lambda) {
        double th = std::fmod(-l, 2.0 * kPi);
        if (th < 0.0) th += 2.0 * kPi;
        out.push_back(th);
    }
    return out;
}

std::pair<cxd, cxd> example_values(const ExampleParams& spec, long n) {
    if (n < 1) throw IndexOutOfRange("example parameters start at n = 1");
    const double nn = static_cast<double>(n);
    cxd a;
    if (spec.which == ExampleParams::Which::Example1) {
        a = std::pow(nn, -0.75 - spec.epsilon) * std::polar(1.0, spec.c * nn * std::log(nn));
    } else {
        cxd s = 0.0;
        for (size_t j = 0; j < spec.b.size(); ++j)
            s += spec.b[j] * std::polar(1.0, spec.lambda[j] * nn);
        a = std::pow(nn, -spec.gamma) * s;
    }
    return {a, std::conj(a)};
}

ParameterSequence example_parameter_sequence(const ExampleParams& spec) {
    spec.validate();
    DecayEnvelope env;
    env.finite = false;
    if (spec.which == ExampleParams::Which::Example1) {
        env.amp = 1.0;
        env.expo = 0.75 + spec.epsilon;
    } else {
        double amp = 0.0;
        for (const auto& bj : spec.b) amp += std::abs(bj);
        env.amp = amp;
        env.expo = spec.gamma;
    }
    const std::string name =
        spec.which == ExampleParams::Which::Example1 ? "example1" : "example2";
    return ParameterSequence::family(
        [spec](long n) { return example_values(spec, n); }, env, name);
}

}  // namespace baxter
