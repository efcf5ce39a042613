#include "baxter/toeplitz.hpp"

#include <algorithm>
#include <cmath>

namespace baxter {

namespace {

// LU with partial pivoting on a row-major square matrix; returns det.
template <typename Real>
std::complex<Real> lu_det(std::vector<std::complex<Real>> m, int n) {
    using C = std::complex<Real>;
    C det = C(1);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        Real best = std::abs(m[static_cast<size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const Real mag = std::abs(m[static_cast<size_t>(r) * n + col]);
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best == Real(0)) return C(0);
        if (piv != col) {
            for (int j = col; j < n; ++j)
                std::swap(m[static_cast<size_t>(piv) * n + j], m[static_cast<size_t>(col) * n + j]);
            det = -det;
        }
        const C d = m[static_cast<size_t>(col) * n + col];
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            const C f = m[static_cast<size_t>(r) * n + col] / d;
            if (f == C(0)) continue;
            for (int j = col + 1; j < n; ++j)
                m[static_cast<size_t>(r) * n + j] -= f * m[static_cast<size_t>(col) * n + j];
        }
    }
    return det;
}

cxd det_of(const std::vector<cxd>& m, int n, bool extended) {
    if (n == 0) return cxd(1.0);
    if (!extended) return lu_det<double>(m, n);
    std::vector<std::complex<long double>> w(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        w[i] = std::complex<long double>(m[i].real(), m[i].imag());
    const auto d = lu_det<long double>(std::move(w), n);
    return cxd(static_cast<double>(d.real()), static_cast<double>(d.imag()));
}

void require_coverage(const MomentTable& table, int n, int shift) {
    const int needed = (n > 0 ? n - 1 : 0) + std::abs(shift);
    if (table.halfwidth < needed)
        throw SingularTable("moment table halfwidth " + std::to_string(table.halfwidth) +
                            " cannot fill an order-" + std::to_string(n) + " slice with shift " +
                            std::to_string(shift));
}

// det with one column replaced removed: minor of the n x (n+1) moment block.
// rows: i = 0..n-1 with entry mu_{off_sign*(i - j)}; skip column `skip`.
std::vector<cxd> minor_matrix(const MomentTable& table, int n, int skip, bool transposed) {
    std::vector<cxd> m(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        int jj = 0;
        for (int j = 0; j <= n; ++j) {
            if (j == skip) continue;
            const int k = transposed ? (j - i) : (i - j);
            m[static_cast<size_t>(i) * n + jj] = table.at(k);
            ++jj;
        }
    }
    return m;
}

double hadamard_scale(const std::vector<cxd>& m, int n) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::norm(m[static_cast<size_t>(i) * n + j]);
        prod *= std::sqrt(s);
    }
    return prod;
}

}  // namespace

ToeplitzSlice ToeplitzSlice::build(const MomentTable& table, int n, int shift) {
    require_coverage(table, n, shift);
    ToeplitzSlice s;
    s.order = n;
    s.shift = shift;
    s.entries.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.entries[static_cast<size_t>(i) * n + j] = table.at(i - j + shift);
    return s;
}

cxd toeplitz_det(const MomentTable& table, int n, int shift, bool extended) {
    if (n < 0) throw Error("toeplitz_det: negative order");
    if (std::abs(shift) > 1) throw Error("toeplitz_det: shift must be in {-1,0,+1}");
    if (n == 0) return cxd(1.0);
    const ToeplitzSlice s = ToeplitzSlice::build(table, n, shift);
    return det_of(s.entries, n, extended);
}

cxd DetPolynomials::eval_phi_hat(cxd z) const {
    cxd acc = 0.0;
    for (size_t j = phi_hat.size(); j-- > 0;) acc = acc * z + phi_hat[j];
    return acc;
}

cxd DetPolynomials::eval_psi_hat(cxd z) const {
    const cxd w = cxd(1.0) / z;
    cxd acc = 0.0;
    for (size_t j = psi_hat.size(); j-- > 0;) acc = acc * w + psi_hat[j];
    return acc;
}

cxd DetPolynomials::eval_u(cxd z) const {
    cxd acc = 0.0;
    for (size_t j = u.size(); j-- > 0;) acc = acc * z + u[j];
    return acc;
}

cxd DetPolynomials::eval_v(cxd z) const {
    const cxd w = cxd(1.0) / z;
    cxd acc = 0.0;
    for (size_t j = v.size(); j-- > 0;) acc = acc * w + v[j];
    return acc;
}

DetPolynomials det_polynomials(const MomentTable& table, int n) {
    require_coverage(table, n + 1, 0);
    DetPolynomials out;
    out.order = n;
    out.phi_hat.resize(static_cast<size_t>(n) + 1);
    out.psi_hat.resize(static_cast<size_t>(n) + 1);

    // coefficient of z^k in phi_hat_n: cofactor (-1)^{n+k} of the variable row
    // in the bordered determinant with moment rows mu_{i-j}
    for (int k = 0; k <= n; ++k) {
        const auto m = minor_matrix(table, n, k, /*transposed=*/false);
        const cxd minor_det = det_of(m, n, false);
        const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        out.phi_hat[static_cast<size_t>(k)] = sign * minor_det;
    }
    // psi_hat uses the transposed moment block mu_{j-i}; coefficient of z^{-k}
    for (int k = 0; k <= n; ++k) {
        const auto m = minor_matrix(table, n, k, /*transposed=*/true);
        const cxd minor_det = det_of(m, n, false);
        const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        out.psi_hat[static_cast<size_t>(k)] = sign * minor_det;
    }

    // leading coefficient of phi_hat is D_n by construction (same minor)
    out.det_n = out.phi_hat[static_cast<size_t>(n)];
    {
        std::vector<cxd> full(static_cast<size_t>(n + 1) * (n + 1));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                full[static_cast<size_t>(i) * (n + 1) + j] = table.at(i - j);
        out.det_np1 = det_of(full, n + 1, false);
        const double scale = hadamard_scale(full, n + 1);
        if (out.det_np1 == cxd(0.0) || std::abs(out.det_np1) <= 1e-13 * scale)
            throw ZeroDeterminant(n + 1);
    }

    out.ell = cxd(1.0) / std::sqrt(out.det_n * out.det_np1);
    out.kappa = out.ell * out.det_n;

    // u_n = z^n psi_hat_n / D_{n+1}: coefficient of z^m is psi_hat[n-m]/D_{n+1}
    out.u.resize(static_cast<size_t>(n) + 1);
    out.v.resize(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        out.u[static_cast<size_t>(m)] = out.psi_hat[static_cast<size_t>(n - m)] / out.det_np1;
        out.v[static_cast<size_t>(m)] = out.phi_hat[static_cast<size_t>(n - m)] / out.det_np1;
    }
    return out;
}

ParameterSequence baxter_params_from_moments(const MomentTable& table, int N) {
    std::vector<cxd> alpha(static_cast<size_t>(N)), beta(static_cast<size_t>(N));
    std::vector<cxd> dets(static_cast<size_t>(N) + 1);
    dets[0] = cxd(1.0);
    for (int n = 1; n <= N; ++n) {
        const ToeplitzSlice s = ToeplitzSlice::build(table, n, 0);
        const cxd dn = det_of(s.entries, n, false);
        const double scale = hadamard_scale(s.entries, n);
        if (dn == cxd(0.0) || std::abs(dn) <= 1e-13 * scale) throw ZeroDeterminant(n);
        dets[static_cast<size_t>(n)] = dn;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        alpha[static_cast<size_t>(n - 1)] = sign * toeplitz_det(table, n, +1) / dn;
        beta[static_cast<size_t>(n - 1)] = sign * toeplitz_det(table, n, -1) / dn;
    }
    // kappa_0^2 = D_0/D_1 = 1/mu_0 keeps kappa_n^2 = D_n/D_{n+1} exact for
    // measures whose total mass is not 1
    const cxd mu0 = table.at(0);
    if (mu0 == cxd(0.0)) throw ZeroDeterminant(1);
    return ParameterSequence::from_moments_list(std::move(alpha), std::move(beta), cxd(1.0) / mu0);
}

double sylvester_check(const MomentTable& table, int n) {
    const cxd dnp1 = toeplitz_det(table, n + 1, 0);
    const cxd dnm1 = toeplitz_det(table, n - 1, 0);
    const cxd dn = toeplitz_det(table, n, 0);
    const cxd dplus = toeplitz_det(table, n, +1);
    const cxd dminus = toeplitz_det(table, n, -1);
    const cxd lhs = dnp1 * dnm1;
    const cxd t1 = dn * dn;
    const cxd t2 = dplus * dminus;
    const double scale =
        std::max({std::abs(lhs), std::abs(t1), std::abs(t2), 1e-300});
    return std::abs(lhs - t1 + t2) / scale;
}

}  // namespace baxter
