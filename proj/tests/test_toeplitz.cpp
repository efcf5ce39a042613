#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "baxter/recurrence.hpp"
#include "baxter/toeplitz.hpp"

using namespace baxter;

namespace {

// mu_0 = 1, mu_1 = 1/2, mu_{-1} = 1/3, else 0 (coefficient map is mirrored)
MeasureSpec tridiagonal() {
    return MeasureSpec::trig({{0, cxd(1.0)}, {-1, cxd(0.5)}, {1, cxd(1.0 / 3.0)}});
}

MeasureSpec random_trig(Rng& rng, int band, double mag) {
    std::map<int, cxd> coeff;
    coeff[0] = cxd(1.0);
    for (int m = 1; m <= band; ++m) {
        coeff[m] = rng.complex_in_annulus(0.0, mag);
        coeff[-m] = rng.complex_in_annulus(0.0, mag);
    }
    return MeasureSpec::trig(coeff);
}

}  // namespace

TEST_CASE("lebesgue determinants are identity determinants") {
    const MomentTable t = moment_table(MeasureSpec::lebesgue(), 10);
    for (int n = 1; n <= 8; ++n) CHECK(toeplitz_det(t, n, 0) == cxd(1.0));
    CHECK(toeplitz_det(t, 0, 0) == cxd(1.0));  // D_0 convention
}

TEST_CASE("tridiagonal determinants match the three-term recursion") {
    const MomentTable t = moment_table(tridiagonal(), 14);
    // independent oracle: D_n = D_{n-1} - mu_1 mu_{-1} D_{n-2}
    const double p = 0.5 * (1.0 / 3.0);
    std::vector<double> d{1.0, 1.0};
    for (int n = 2; n <= 12; ++n) d.push_back(d[n - 1] - p * d[n - 2]);

    CHECK(std::abs(toeplitz_det(t, 2, 0) - cxd(5.0 / 6.0)) <= 1e-15);
    CHECK(std::abs(toeplitz_det(t, 3, 0) - cxd(2.0 / 3.0)) <= 1e-15);
    for (int n = 1; n <= 12; ++n)
        CHECK(std::abs(toeplitz_det(t, n, 0) - cxd(d[static_cast<size_t>(n)])) <= 1e-13);
}

TEST_CASE("shifted tridiagonal determinants are triangular") {
    const MomentTable t = moment_table(tridiagonal(), 8);
    // entries mu_{i-j+1}: diagonal mu_1, strictly lower part vanishes
    CHECK(std::abs(toeplitz_det(t, 3, +1) - cxd(1.0 / 8.0)) <= 1e-15);
    // entries mu_{i-j-1}: diagonal mu_{-1}
    CHECK(std::abs(toeplitz_det(t, 3, -1) - cxd(1.0 / 27.0)) <= 1e-15);
    for (int n = 1; n <= 6; ++n) {
        CHECK(std::abs(toeplitz_det(t, n, +1) - std::pow(cxd(0.5), n)) <= 1e-14);
        CHECK(std::abs(toeplitz_det(t, n, -1) - std::pow(cxd(1.0 / 3.0), n)) <= 1e-14);
    }
}

TEST_CASE("extended precision elimination agrees with double") {
    Rng rng(7);
    const MomentTable t = moment_table(random_trig(rng, 3, 0.2), 16);
    for (int n = 10; n <= 14; ++n) {
        const cxd d = toeplitz_det(t, n, 0);
        const cxd dx = toeplitz_det(t, n, 0, /*extended=*/true);
        CHECK(std::abs(d - dx) <= 1e-12 * std::abs(dx));
    }
}

TEST_CASE("baxter parameters of lebesgue vanish") {
    const MomentTable t = moment_table(MeasureSpec::lebesgue(), 10);
    const ParameterSequence p = baxter_params_from_moments(t, 8);
    for (long n = 1; n <= 8; ++n) {
        CHECK(p.alpha(n) == cxd(0.0));
        CHECK(p.beta(n) == cxd(0.0));
        CHECK(std::abs(p.kappa(n) - cxd(1.0)) <= 1e-15);
    }
}

TEST_CASE("tridiagonal parameters from the determinant ratios") {
    const MomentTable t = moment_table(tridiagonal(), 14);
    const ParameterSequence p = baxter_params_from_moments(t, 12);
    // alpha_n carries the zeta^{-1}-shifted determinant (diagonal mu_1),
    // beta_n the zeta-shifted one (diagonal mu_{-1})
    CHECK(std::abs(p.alpha(1) - cxd(-0.5)) <= 1e-15);
    CHECK(std::abs(p.beta(1) - cxd(-1.0 / 3.0)) <= 1e-15);
    CHECK(std::abs(p.alpha(2) - cxd(0.25 / (5.0 / 6.0))) <= 1e-15);   // 3/10
    CHECK(std::abs(p.beta(2) - cxd((1.0 / 9.0) / (5.0 / 6.0))) <= 1e-15);  // 2/15

    // closed forms D_n(zeta^{-1} mu) = mu_1^n, D_n(zeta mu) = mu_{-1}^n
    for (int n = 1; n <= 10; ++n) {
        const cxd dn = toeplitz_det(t, n, 0);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(p.alpha(n) - sign * std::pow(cxd(0.5), n) / dn) <= 1e-13);
        CHECK(std::abs(p.beta(n) - sign * std::pow(cxd(1.0 / 3.0), n) / dn) <= 1e-13);
    }
}

TEST_CASE("parameters agree with the defining integrals") {
    // beta_n = -kappa_{n-1} int phi_{n-1} zeta dmu,
    // alpha_n = -kappa_{n-1} int psi_{n-1} zeta^{-1} dmu; the ratio formulas
    // must reproduce the quadrature values on a generic complex density
    Rng rng(42);
    const MeasureSpec spec = random_trig(rng, 2, 0.15);
    const MomentTable t = moment_table(spec, 12);
    const ParameterSequence p = baxter_params_from_moments(t, 6);
    for (int n = 1; n <= 6; ++n) {
        const DetPolynomials dp = det_polynomials(t, n - 1);
        const cxd beta_int = -dp.kappa * integrate(spec, [&](cxd zeta) {
            return dp.ell * dp.eval_phi_hat(zeta) * zeta;
        });
        const cxd alpha_int = -dp.kappa * integrate(spec, [&](cxd zeta) {
            return dp.ell * dp.eval_psi_hat(zeta) / zeta;
        });
        CHECK(std::abs(p.beta(n) - beta_int) <= 1e-11);
        CHECK(std::abs(p.alpha(n) - alpha_int) <= 1e-11);
    }
}

TEST_CASE("positive densities give conjugate parameter pairs") {
    OpucDensity od;
    od.cos_coeff = {1.0, 0.95};  // 1 + 0.95 cos(theta) > 0, mass 1
    MeasureSpec spec;
    spec.parts.push_back(od);
    const MomentTable t = moment_table(spec, 14);
    const ParameterSequence p = baxter_params_from_moments(t, 10);
    for (long n = 1; n <= 10; ++n)
        CHECK(std::abs(p.beta(n) - std::conj(p.alpha(n))) <= 1e-10);
    // kappa real and increasing
    for (long n = 1; n <= 10; ++n) {
        CHECK(std::abs(p.kappa(n).imag()) <= 1e-12);
        CHECK(p.kappa(n).real() > p.kappa(n - 1).real() * (1.0 - 1e-12));
    }
}

TEST_CASE("zero determinant is reported with its order") {
    // mu_0 = mu_1 = mu_{-1} = 1 makes the 2x2 determinant vanish
    const MeasureSpec spec = MeasureSpec::trig({{0, cxd(1.0)}, {1, cxd(1.0)}, {-1, cxd(1.0)}});
    const MomentTable t = moment_table(spec, 6);
    try {
        baxter_params_from_moments(t, 4);
        FAIL("expected ZeroDeterminant");
    } catch (const ZeroDeterminant& e) {
        CHECK(e.order == 2);
    }
}

TEST_CASE("determinant polynomials of lebesgue are monomials") {
    const MomentTable t = moment_table(MeasureSpec::lebesgue(), 6);
    const DetPolynomials dp = det_polynomials(t, 2);
    CHECK(dp.phi_hat.size() == 3);
    CHECK(dp.phi_hat[2] == cxd(1.0));
    CHECK(dp.phi_hat[0] == cxd(0.0));
    CHECK(dp.phi_hat[1] == cxd(0.0));
    CHECK(dp.psi_hat[2] == cxd(1.0));
    // u_2 = v_2 = 1
    CHECK(std::abs(dp.eval_u(cxd(0.7, 0.2)) - cxd(1.0)) <= 1e-15);
    CHECK(std::abs(dp.eval_v(cxd(0.7, 0.2)) - cxd(1.0)) <= 1e-15);
}

TEST_CASE("tridiagonal monic polynomials match the first recurrence step") {
    const MomentTable t = moment_table(tridiagonal(), 8);
    const DetPolynomials dp = det_polynomials(t, 1);
    // phi_hat_1 / D_1 = z - mu_{-1}, psi_hat_1 / D_1 = z^{-1} - mu_1, and the
    // monic recurrence step gives z + beta_1, z^{-1} + alpha_1
    CHECK(std::abs(dp.phi_hat[1] / dp.det_n - cxd(1.0)) <= 1e-15);
    CHECK(std::abs(dp.phi_hat[0] / dp.det_n - cxd(-1.0 / 3.0)) <= 1e-15);
    CHECK(std::abs(dp.psi_hat[0] / dp.det_n - cxd(-0.5)) <= 1e-15);

    const ParameterSequence p = baxter_params_from_moments(t, 2);
    CHECK(std::abs(dp.phi_hat[0] / dp.det_n - p.beta(1)) <= 1e-15);
    CHECK(std::abs(dp.psi_hat[0] / dp.det_n - p.alpha(1)) <= 1e-15);
}

TEST_CASE("leading coefficient of phi_hat is exactly D_n") {
    Rng rng(11);
    const MomentTable t = moment_table(random_trig(rng, 3, 0.2), 12);
    for (int n = 1; n <= 8; ++n) {
        const DetPolynomials dp = det_polynomials(t, n);
        CHECK(dp.phi_hat[static_cast<size_t>(n)] == dp.det_n);  // same minor, bitwise
        CHECK(std::abs(dp.det_n - toeplitz_det(t, n, 0)) <=
              1e-12 * std::max(1.0, std::abs(dp.det_n)));
    }
}

TEST_CASE("bi-orthogonality against smooth densities") {
    Rng rng(3);
    const MeasureSpec spec = random_trig(rng, 2, 0.1);
    const MomentTable t = moment_table(spec, 24);
    std::vector<DetPolynomials> dps;
    for (int n = 0; n <= 10; ++n) dps.push_back(det_polynomials(t, n));
    for (int n = 0; n <= 10; ++n) {
        for (int m = 0; m <= 10; ++m) {
            const cxd integral = integrate(spec, [&](cxd zeta) {
                return dps[static_cast<size_t>(n)].ell * dps[static_cast<size_t>(n)].eval_phi_hat(zeta) *
                       dps[static_cast<size_t>(m)].ell * dps[static_cast<size_t>(m)].eval_psi_hat(zeta);
            });
            const cxd expect = (n == m) ? cxd(1.0) : cxd(0.0);
            CHECK(std::abs(integral - expect) <= 1e-8);
        }
    }
}

TEST_CASE("sylvester identity residuals") {
    const MomentTable leb = moment_table(MeasureSpec::lebesgue(), 8);
    CHECK(sylvester_check(leb, 3) <= 1e-15);

    const MomentTable tri = moment_table(tridiagonal(), 10);
    CHECK(sylvester_check(tri, 2) <= 1e-14);

    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const MomentTable t = moment_table(random_trig(rng, 3, 0.2), 12);
        for (int n = 1; n <= 8; ++n) CHECK(sylvester_check(t, n) <= 1e-10);
    }
}

TEST_CASE("kappa products reproduce determinant ratios") {
    const MomentTable t = moment_table(tridiagonal(), 14);
    const ParameterSequence p = baxter_params_from_moments(t, 12);
    CHECK(std::abs(p.kappa_sq(1) - cxd(6.0 / 5.0)) <= 1e-14);
    for (int n = 1; n <= 11; ++n) {
        const cxd dr = toeplitz_det(t, n, 0) / toeplitz_det(t, n + 1, 0);
        CHECK(std::abs(p.kappa_sq(n) - dr) <= 1e-10 * std::abs(dr));
        // 1 - alpha_n beta_n = kappa_{n-1}^2 / kappa_n^2
        const cxd lhs = cxd(1.0) - p.alpha(n) * p.beta(n);
        const cxd rhs = p.kappa_sq(n - 1) / p.kappa_sq(n);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    }

    // total mass != 1: kappa_0^2 = 1/mu_0 keeps the determinant link exact
    MeasureSpec withatom = MeasureSpec::lebesgue();
    withatom.add(PointMasses{{{0.0, cxd(0.3)}}});
    const MomentTable ta = moment_table(withatom, 14);
    const ParameterSequence pa = baxter_params_from_moments(ta, 10);
    CHECK(std::abs(pa.kappa_sq(0) - cxd(1.0 / 1.3)) <= 1e-15);
    for (int n = 1; n <= 9; ++n) {
        const cxd dr = toeplitz_det(ta, n, 0) / toeplitz_det(ta, n + 1, 0);
        CHECK(std::abs(pa.kappa_sq(n) - dr) <= 1e-10 * std::abs(dr));
    }
}
