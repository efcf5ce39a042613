#include "baxter/parameters.hpp"

#include <cmath>

namespace baxter {

void ParameterSequence::Impl::ensure(long n) const {
    // callers hold mu
    if (products.empty()) {
        products.push_back(cxd(1.0));
        kappas.push_back(std::sqrt(kappa0_sq));
    }
    while (static_cast<long>(a.size()) < n) {
        const long j = static_cast<long>(a.size()) + 1;
        auto [aj, bj] = gen(j);
        const cxd f = cxd(1.0) - aj * bj;
        if (f == cxd(0.0)) throw DegenerateStep(j);
        a.push_back(aj);
        b.push_back(bj);
        products.push_back(products.back() * f);
        cxd k = std::sqrt(kappa0_sq / products.back());
        // keep the branch continuous along n: flip when the principal root
        // lands opposite to the previous kappa
        const cxd prev = kappas.back();
        if (k.real() * prev.real() + k.imag() * prev.imag() < 0.0) {
            k = -k;
            flips.push_back(j);
        }
        kappas.push_back(k);
    }
}

ParameterSequence ParameterSequence::explicit_list(std::vector<cxd> alpha, std::vector<cxd> beta) {
    const size_t m = std::max(alpha.size(), beta.size());
    alpha.resize(m, cxd(0.0));
    beta.resize(m, cxd(0.0));
    double amp = 0.0;
    for (size_t j = 0; j < m; ++j) {
        if (alpha[j] * beta[j] == cxd(1.0)) throw DegenerateStep(static_cast<long>(j + 1));
        amp = std::max(amp, std::max(std::abs(alpha[j]), std::abs(beta[j])));
    }
    ParameterSequence p;
    p.impl_ = std::make_shared<Impl>();
    p.impl_->provenance = Provenance::Explicit;
    p.impl_->envelope = DecayEnvelope{amp, 0.0, true, static_cast<long>(m)};
    p.impl_->name = "explicit";
    auto av = std::make_shared<std::vector<cxd>>(std::move(alpha));
    auto bv = std::make_shared<std::vector<cxd>>(std::move(beta));
    p.impl_->gen = [av, bv](long n) -> std::pair<cxd, cxd> {
        const size_t i = static_cast<size_t>(n - 1);
        if (i >= av->size()) return {cxd(0.0), cxd(0.0)};
        return {(*av)[i], (*bv)[i]};
    };
    return p;
}

ParameterSequence ParameterSequence::family(Generator gen, DecayEnvelope env, std::string name) {
    ParameterSequence p;
    p.impl_ = std::make_shared<Impl>();
    p.impl_->provenance = Provenance::Family;
    p.impl_->gen = std::move(gen);
    p.impl_->envelope = env;
    p.impl_->name = std::move(name);
    return p;
}

ParameterSequence ParameterSequence::from_moments_list(std::vector<cxd> alpha,
                                                       std::vector<cxd> beta, cxd kappa0_sq) {
    ParameterSequence p = explicit_list(std::move(alpha), std::move(beta));
    p.impl_->provenance = Provenance::FromMoments;
    p.impl_->name = "from_moments";
    p.impl_->kappa0_sq = kappa0_sq;
    return p;
}

ParameterSequence ParameterSequence::power_family(double amp, double expo) {
    DecayEnvelope env{std::abs(amp), expo, false, 0};
    return family(
        [amp, expo](long n) -> std::pair<cxd, cxd> {
            const double v = amp * std::pow(static_cast<double>(n), -expo);
            return {cxd(v), cxd(v)};
        },
        env, "power(" + std::to_string(amp) + ",n^-" + std::to_string(expo) + ")");
}

ParameterSequence ParameterSequence::zero() {
    ParameterSequence p = explicit_list({}, {});
    p.impl_->name = "zero";
    return p;
}

cxd ParameterSequence::alpha(long n) const {
    if (n < 1) throw IndexOutOfRange("parameter index must be >= 1");
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(n);
    return impl_->a[static_cast<size_t>(n - 1)];
}

cxd ParameterSequence::beta(long n) const {
    if (n < 1) throw IndexOutOfRange("parameter index must be >= 1");
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(n);
    return impl_->b[static_cast<size_t>(n - 1)];
}

void ParameterSequence::values(long n_lo, long n_hi, std::vector<cxd>& alpha_out,
                               std::vector<cxd>& beta_out) const {
    if (n_lo < 1 || n_hi < n_lo) throw IndexOutOfRange("bad parameter range");
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(n_hi);
    alpha_out.assign(impl_->a.begin() + (n_lo - 1), impl_->a.begin() + n_hi);
    beta_out.assign(impl_->b.begin() + (n_lo - 1), impl_->b.begin() + n_hi);
}

cxd ParameterSequence::prefix_product(long n) const {
    if (n < 0) throw IndexOutOfRange("prefix product index must be >= 0");
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(n);
    return impl_->products[static_cast<size_t>(n)];
}

cxd ParameterSequence::kappa_sq(long n) const { return impl_->kappa0_sq / prefix_product(n); }

cxd ParameterSequence::kappa(long n) const {
    if (n < 0) throw IndexOutOfRange("kappa index must be >= 0");
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(n);
    return impl_->kappas[static_cast<size_t>(n)];
}

ParameterSequence ParameterSequence::swapped() const {
    ParameterSequence base = *this;
    ParameterSequence p = family(
        [base](long n) -> std::pair<cxd, cxd> { return {base.beta(n), base.alpha(n)}; },
        impl_->envelope, impl_->name + "/swapped");
    p.impl_->kappa0_sq = impl_->kappa0_sq;
    p.impl_->provenance = impl_->provenance;
    return p;
}

std::vector<cxd> kappa_sequence(const ParameterSequence& params, long N) {
    std::vector<cxd> out;
    out.reserve(static_cast<size_t>(N + 1));
    for (long n = 0; n <= N; ++n) out.push_back(params.kappa(n));
    return out;
}

}  // namespace baxter
