#include "baxter/measure.hpp"

#include <cmath>

namespace baxter {

double OpucDensity::value(double theta) const {
    double w = cos_coeff.empty() ? 0.0 : cos_coeff[0];
    for (size_t m = 1; m < cos_coeff.size(); ++m) w += cos_coeff[m] * std::cos(m * theta);
    for (size_t m = 1; m < sin_coeff.size(); ++m) w += sin_coeff[m] * std::sin(m * theta);
    return w;
}

bool MeasureSpec::has_density_only() const {
    for (const auto& p : parts) {
        if (std::holds_alternative<PointMasses>(p) || std::holds_alternative<RawMoments>(p))
            return false;
    }
    return true;
}

namespace {

cxd component_moment(const MeasureComponent& part, int k) {
    return std::visit(
        [k](const auto& c) -> cxd {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Lebesgue>) {
                return k == 0 ? cxd(1.0) : cxd(0.0);
            } else if constexpr (std::is_same_v<T, TrigDensity>) {
                auto it = c.coeff.find(-k);
                return it == c.coeff.end() ? cxd(0.0) : it->second;
            } else if constexpr (std::is_same_v<T, PointMasses>) {
                cxd s = 0.0;
                for (const auto& a : c.atoms) s += a.weight * std::polar(1.0, -k * a.angle);
                return s;
            } else if constexpr (std::is_same_v<T, RawMoments>) {
                return c.at(k);
            } else {  // OpucDensity
                const int M = c.nodes;
                cxd s = 0.0;
                for (int j = 0; j < M; ++j) {
                    const double th = 2.0 * kPi * j / M;
                    const double w = c.value(th);
                    if (w <= 0.0)
                        throw Error("opuc_density is not strictly positive on the grid");
                    s += w * std::polar(1.0, -k * th);
                }
                return s / static_cast<double>(M);
            }
        },
        part);
}

cxd complex_density(const MeasureComponent& part, double theta) {
    if (std::holds_alternative<Lebesgue>(part)) return cxd(1.0);
    if (const auto* td = std::get_if<TrigDensity>(&part)) {
        cxd w = 0.0;
        for (const auto& [m, c] : td->coeff) w += c * std::polar(1.0, -m * theta);
        return w;
    }
    if (const auto* od = std::get_if<OpucDensity>(&part)) return cxd(od->value(theta));
    throw Error("component has no pointwise density");
}

}  // namespace

cxd moment(const MeasureSpec& spec, int k) {
    cxd s = 0.0;
    for (const auto& p : spec.parts) s += component_moment(p, k);
    return s;
}

MomentTable moment_table(const MeasureSpec& spec, int K) {
    if (K < 0) throw Error("moment_table requires K >= 0");
    MomentTable t;
    t.halfwidth = K;
    t.values.resize(2 * static_cast<size_t>(K) + 1);
    for (int k = -K; k <= K; ++k) t.values[static_cast<size_t>(k + K)] = moment(spec, k);
    return t;
}

cxd moment_quadrature(const MeasureSpec& spec, int k, int nodes) {
    cxd s = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * kPi * j / nodes;
        cxd w = 0.0;
        for (const auto& p : spec.parts) w += complex_density(p, th);
        s += w * std::polar(1.0, -k * th);
    }
    return s / static_cast<double>(nodes);
}

cxd integrate(const MeasureSpec& spec, const std::function<cxd(cxd)>& f, int nodes) {
    cxd s = 0.0;
    for (const auto& p : spec.parts) {
        if (const auto* pm = std::get_if<PointMasses>(&p)) {
            for (const auto& a : pm->atoms) s += a.weight * f(std::polar(1.0, a.angle));
        } else if (std::holds_alternative<RawMoments>(p)) {
            throw Error("cannot integrate a raw_moments component pointwise");
        } else {
            cxd acc = 0.0;
            for (int j = 0; j < nodes; ++j) {
                const double th = 2.0 * kPi * j / nodes;
                acc += complex_density(p, th) * f(std::polar(1.0, th));
            }
            s += acc / static_cast<double>(nodes);
        }
    }
    return s;
}

}  // namespace baxter
