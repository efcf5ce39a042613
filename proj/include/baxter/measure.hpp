#pragma once

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "baxter/common.hpp"

namespace baxter {

// Complex Borel measures on the unit circle, normalized against arc measure
// d(theta)/2pi so the Lebesgue component has mass 1. Only finitely described
// measures are representable: finite coefficient maps, finite atom lists,
// explicit moment tables, and strictly positive sampled densities.

struct Lebesgue {};

// Density w(e^{i theta}) = sum_m coeff[m] e^{-i m theta}; with this convention
// the moments are a plain mirror lookup, mu_k = coeff[-k].
struct TrigDensity {
    std::map<int, cxd> coeff;
};

struct PointMass {
    double angle = 0.0;  // radians
    cxd weight;
};

struct PointMasses {
    std::vector<PointMass> atoms;
};

// Two-sided explicit table mu_k for |k| <= halfwidth.
struct RawMoments {
    int halfwidth = 0;
    std::vector<cxd> values;  // values[k + halfwidth]

    cxd at(int k) const {
        if (k < -halfwidth || k > halfwidth)
            throw IndexOutOfRange("raw_moments table lacks index " + std::to_string(k));
        return values[static_cast<size_t>(k + halfwidth)];
    }
};

// Strictly positive real trigonometric density,
//   w(theta) = cos_coeff[0] + sum_m (cos_coeff[m] cos m theta + sin_coeff[m] sin m theta),
// integrated by uniform-grid trapezoid quadrature (exact below the Nyquist
// band). Positivity is checked on the quadrature grid at construction time.
struct OpucDensity {
    std::vector<double> cos_coeff;  // cos_coeff[0] is the constant term
    std::vector<double> sin_coeff;  // sin_coeff[0] unused, kept for alignment
    int nodes = 2048;

    double value(double theta) const;
};

using MeasureComponent = std::variant<Lebesgue, TrigDensity, PointMasses, RawMoments, OpucDensity>;

struct MeasureSpec {
    std::vector<MeasureComponent> parts;

    static MeasureSpec lebesgue() { return MeasureSpec{{Lebesgue{}}}; }
    static MeasureSpec trig(std::map<int, cxd> coeff) {
        return MeasureSpec{{TrigDensity{std::move(coeff)}}};
    }
    static MeasureSpec atoms(std::vector<PointMass> a) {
        return MeasureSpec{{PointMasses{std::move(a)}}};
    }
    static MeasureSpec raw(int halfwidth, std::vector<cxd> vals) {
        return MeasureSpec{{RawMoments{halfwidth, std::move(vals)}}};
    }

    MeasureSpec& add(MeasureComponent c) {
        parts.push_back(std::move(c));
        return *this;
    }

    // True when every component has a pointwise density (no atoms, no raw
    // tables); such specs can be integrated by quadrature.
    bool has_density_only() const;
};

struct MomentTable {
    int halfwidth = 0;
    std::vector<cxd> values;  // values[k + halfwidth]

    cxd at(int k) const {
        if (k < -halfwidth || k > halfwidth)
            throw IndexOutOfRange("moment table lacks index " + std::to_string(k));
        return values[static_cast<size_t>(k + halfwidth)];
    }
};

// k-th trigonometric moment, mu_k = integral of zeta^{-k} d mu. Densities are
// integrated in closed form where possible; OpucDensity uses trapezoid
// quadrature on its configured grid. Atoms are always evaluated analytically.
cxd moment(const MeasureSpec& spec, int k);

MomentTable moment_table(const MeasureSpec& spec, int K);

// Trapezoid quadrature of mu_k for density-only specs, for cross-checking the
// closed forms; nodes must exceed 2K + coefficient bandwidth for exactness.
cxd moment_quadrature(const MeasureSpec& spec, int k, int nodes);

// integral of f(zeta) d mu: quadrature over density parts plus exact sums over
// atoms. Used by the bi-orthogonality checks.
cxd integrate(const MeasureSpec& spec, const std::function<cxd(cxd)>& f, int nodes = 2048);

}  // namespace baxter
