#pragma once

#include <vector>

#include "baxter/parameters.hpp"

namespace baxter {

// Forward iteration of the Baxter transfer recurrences
//   Phi_{n+1} = (kappa_{n+1}/kappa_n) [[z, beta_{n+1}], [alpha_{n+1} z, 1]] Phi_n
// with Phi_n = [phi_n; z^n psi_n], the Psi companion obtained from the
// structural symmetry Psi_n(z; a, b) = Phi_n(1/z; b, a), and the monic
// variants that drop the scalar prefactor.

enum class Flavor { Phi, Psi, MonicPhi, MonicPsi };

inline bool is_monic(Flavor f) { return f == Flavor::MonicPhi || f == Flavor::MonicPsi; }
inline bool is_psi(Flavor f) { return f == Flavor::Psi || f == Flavor::MonicPsi; }

struct TransferMatrix {
    cxd a, b, c, d;    // [[a, b], [c, d]]
    cxd prefactor{1.0, 0.0};

    cxd det() const { return prefactor * prefactor * (a * d - b * c); }
};

// Step matrix mapping index n to n+1. Psi flavors evaluate the Phi matrix at
// 1/z with the parameter roles swapped, so the symmetry is exact in floating
// point. Throws DegenerateStep when alpha_{n+1} beta_{n+1} = 1 (the kappa
// ratio is undefined) and ZeroPoint for Psi flavors at z = 0.
TransferMatrix transfer_matrix(cxd z, long n, const ParameterSequence& params, Flavor flavor);

// Trajectory entry. Components are stored against a shared natural-log scale
// so |z| > 1 runs survive to N ~ 1e4 and beyond; value1()/value2() multiply
// the scale back in and may overflow when the true magnitude exceeds double
// range (log_magnitude1/2 stay valid).
struct StateVector {
    long n = 0;
    Flavor flavor = Flavor::MonicPhi;
    cxd z;
    cxd v1, v2;
    double log_scale = 0.0;

    cxd value1() const { return v1 * std::exp(log_scale); }
    cxd value2() const { return v2 * std::exp(log_scale); }
    double log_magnitude1() const { return std::log(std::abs(v1)) + log_scale; }
    double log_magnitude2() const { return std::log(std::abs(v2)) + log_scale; }
};

// Full trajectory n = 0..N from Phi_0 = Psi_0 = (1,1).
std::vector<StateVector> iterate(cxd z, const ParameterSequence& params, long N, Flavor flavor);

}  // namespace baxter
