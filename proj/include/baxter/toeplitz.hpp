#pragma once

#include <vector>

#include "baxter/measure.hpp"
#include "baxter/parameters.hpp"

namespace baxter {

// Brute-force ground truth for the recurrence engine: Toeplitz determinants
// D_n, the shifted determinants behind the Baxter parameters, and the
// determinant representations of the polynomial systems. Dense partially
// pivoted elimination in complex arithmetic; desk scale n <= 15, so
// simplicity beats speed.

struct ToeplitzSlice {
    int order = 0;
    int shift = 0;  // entries (i,j) -> mu_{i-j+shift}; -1 and +1 house the
                    // zeta- and zeta^{-1}-shifted measures
    std::vector<cxd> entries;  // row-major order x order

    static ToeplitzSlice build(const MomentTable& table, int n, int shift);
    cxd at(int i, int j) const { return entries[static_cast<size_t>(i) * order + j]; }
};

// det of the order-n slice; D_0 := 1. Throws SingularTable when the table
// does not cover the needed indices. extended switches the elimination to
// long double for n past the comfortable double range.
cxd toeplitz_det(const MomentTable& table, int n, int shift, bool extended = false);

struct DetPolynomials {
    int order = 0;
    std::vector<cxd> phi_hat;  // coefficients of z^0..z^n
    std::vector<cxd> psi_hat;  // coefficients of z^0..z^{-n} (index j -> z^{-j})
    std::vector<cxd> u;        // u_n(z), powers z^0..z^n
    std::vector<cxd> v;        // v_n(z), powers z^0..z^{-n}
    cxd det_n;                 // D_n
    cxd det_np1;               // D_{n+1}
    cxd ell;                   // principal sqrt of (D_n D_{n+1})^{-1}
    cxd kappa;                 // ell * D_n

    cxd eval_phi_hat(cxd z) const;
    cxd eval_psi_hat(cxd z) const;  // polynomial in 1/z
    cxd eval_u(cxd z) const;
    cxd eval_v(cxd z) const;
};

// phi_hat_n, psi_hat_n by cofactor expansion along the variable row of the
// (n+1)x(n+1) determinants, u_n = z^n psi_hat_n / D_{n+1} and
// v_n = z^{-n} phi_hat_n / D_{n+1}. Throws ZeroDeterminant when D_{n+1} = 0.
DetPolynomials det_polynomials(const MomentTable& table, int n);

// alpha_n = (-1)^n D_n(zeta^{-1} mu)/D_n(mu) (shift +1),
// beta_n  = (-1)^n D_n(zeta mu)/D_n(mu)      (shift -1), for n = 1..N,
// packaged with kappa_0^2 = D_0/D_1 so the kappa product rule reproduces
// D_n/D_{n+1} for tables of any total mass.
ParameterSequence baxter_params_from_moments(const MomentTable& table, int N);

// Relative residual of D_{n+1} D_{n-1} = D_n^2 - D_n(zeta mu) D_n(zeta^{-1} mu),
// scaled by the largest term magnitude.
double sylvester_check(const MomentTable& table, int n);

}  // namespace baxter
