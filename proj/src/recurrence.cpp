#include "baxter/recurrence.hpp"

#include <cmath>

namespace baxter {

namespace {

constexpr double kRescaleHi = 1e120;
constexpr double kRescaleLo = 1e-120;

void maybe_rescale(StateVector& s) {
    const double m = std::max(std::abs(s.v1), std::abs(s.v2));
    if (m > kRescaleHi || (m < kRescaleLo && m > 0.0)) {
        s.v1 /= m;
        s.v2 /= m;
        s.log_scale += std::log(m);
    }
}

}  // namespace

TransferMatrix transfer_matrix(cxd z, long n, const ParameterSequence& params, Flavor flavor) {
    cxd zeff = z;
    cxd a = params.alpha(n + 1);
    cxd b = params.beta(n + 1);
    if (is_psi(flavor)) {
        if (z == cxd(0.0)) throw ZeroPoint("Psi recurrence undefined at z = 0");
        zeff = circle_inverse(z);
        std::swap(a, b);
    }
    if (a * b == cxd(1.0)) throw DegenerateStep(n + 1);

    TransferMatrix t;
    t.a = zeff;
    t.b = b;
    t.c = a * zeff;
    t.d = cxd(1.0);
    if (!is_monic(flavor)) t.prefactor = params.kappa(n + 1) / params.kappa(n);
    return t;
}

std::vector<StateVector> iterate(cxd z, const ParameterSequence& params, long N, Flavor flavor) {
    if (N < 0) throw Error("iterate: N must be >= 0");
    if (is_psi(flavor) && z == cxd(0.0)) throw ZeroPoint("Psi recurrence undefined at z = 0");

    std::vector<StateVector> traj;
    traj.reserve(static_cast<size_t>(N) + 1);
    StateVector s;
    s.n = 0;
    s.flavor = flavor;
    s.z = z;
    s.v1 = cxd(1.0);  // phi_0 = psi_0 = 1
    s.v2 = cxd(1.0);
    traj.push_back(s);

    const cxd zeff = is_psi(flavor) ? circle_inverse(z) : z;
    std::vector<cxd> av, bv;
    if (N > 0) {
        params.values(1, N, av, bv);
        if (is_psi(flavor)) std::swap(av, bv);
    }
    for (long n = 0; n < N; ++n) {
        const cxd a = av[static_cast<size_t>(n)];
        const cxd b = bv[static_cast<size_t>(n)];
        if (a * b == cxd(1.0)) throw DegenerateStep(n + 1);
        StateVector next;
        next.n = n + 1;
        next.flavor = flavor;
        next.z = z;
        next.log_scale = s.log_scale;
        next.v1 = zeff * s.v1 + b * s.v2;
        next.v2 = a * zeff * s.v1 + s.v2;
        if (!is_monic(flavor)) {
            const cxd ratio = params.kappa(n + 1) / params.kappa(n);
            next.v1 *= ratio;
            next.v2 *= ratio;
        }
        if (!is_finite(next.v1) || !is_finite(next.v2))
            throw NonFiniteValue("transfer iteration overflowed at n = " + std::to_string(n + 1));
        maybe_rescale(next);
        traj.push_back(next);
        s = next;
    }
    return traj;
}

}  // namespace baxter
