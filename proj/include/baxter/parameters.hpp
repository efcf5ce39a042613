#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "baxter/common.hpp"

namespace baxter {

// Upper envelope |alpha_n|, |beta_n| <= amp * n^{-expo}, used for a priori
// l2 tail estimates when picking truncation cutoffs. Finite sequences carry an
// exact horizon instead (zero beyond it).
struct DecayEnvelope {
    double amp = 0.0;
    double expo = 1.0;
    bool finite = true;
    long horizon = 0;  // meaningful when finite

    // Upper bound on sum_{k > K} k^{-2 expo} scaled by amp^2.
    double tail_sq(long K) const {
        if (finite) return K >= horizon ? 0.0 : amp * amp * static_cast<double>(horizon - K);
        if (expo <= 0.5) return std::numeric_limits<double>::infinity();
        return amp * amp * std::pow(static_cast<double>(K), 1.0 - 2.0 * expo) / (2.0 * expo - 1.0);
    }

    // Pointwise bound |alpha_k| for k > K.
    double pointwise(long k) const {
        if (finite && k > horizon) return 0.0;
        return amp * std::pow(static_cast<double>(k), -expo);
    }
};

// Generator of the Baxter parameter pair (alpha_n, beta_n), n >= 1, with the
// derived kappa sequence kappa_n^{-2} = kappa_0^{-2} prod_{j<=n} (1 - a_j b_j).
// kappa_0 = 1 for parameter-driven sequences; sequences built from moments of
// a measure with mass mu_0 != 1 carry kappa_0^2 = 1/mu_0 so that
// kappa_n^2 = D_n/D_{n+1} holds for every table.
class ParameterSequence {
  public:
    enum class Provenance { FromMoments, Explicit, Family };

    using Generator = std::function<std::pair<cxd, cxd>(long)>;

    // Explicit finite lists; validated eagerly for alpha_n beta_n = 1 and
    // treated as zero beyond their length (genuine l2 sequences).
    static ParameterSequence explicit_list(std::vector<cxd> alpha, std::vector<cxd> beta);

    // Lazily evaluated infinite family. The envelope feeds cutoff selection.
    static ParameterSequence family(Generator gen, DecayEnvelope env, std::string name);

    static ParameterSequence from_moments_list(std::vector<cxd> alpha, std::vector<cxd> beta,
                                               cxd kappa0_sq);

    // alpha_n = beta_n = amp * n^{-expo}; OPUC for amp < 1 (real Verblunsky).
    static ParameterSequence power_family(double amp, double expo);

    static ParameterSequence zero();

    cxd alpha(long n) const;
    cxd beta(long n) const;

    // Bulk copy of (alpha_n, beta_n) for n in [n_lo, n_hi], one lock for the
    // whole range; the long recursions go through this.
    void values(long n_lo, long n_hi, std::vector<cxd>& alpha_out,
                std::vector<cxd>& beta_out) const;

    // P_n = prod_{j=1..n} (1 - alpha_j beta_j); P_0 = 1.
    cxd prefix_product(long n) const;

    // kappa_n^2 = kappa0_sq / P_n (exact, branch-free).
    cxd kappa_sq(long n) const;

    // kappa_n with the principal square root and a sign-continuity correction
    // along n; the correction events are recorded in kappa_flips().
    cxd kappa(long n) const;

    std::vector<long> kappa_flips() const {
        std::lock_guard<std::mutex> lock(impl_->mu);
        return impl_->flips;
    }

    cxd kappa0_sq() const { return impl_->kappa0_sq; }
    Provenance provenance() const { return impl_->provenance; }
    const std::string& name() const { return impl_->name; }
    const DecayEnvelope& envelope() const { return impl_->envelope; }

    // sqrt of an upper bound for sum_{k>K} |alpha_k|^2 (same bound for beta).
    double tail_l2(long K) const { return std::sqrt(impl_->envelope.tail_sq(K)); }

    // View with the roles of alpha and beta exchanged; kappa is unchanged
    // since the products (1 - alpha_j beta_j) are symmetric.
    ParameterSequence swapped() const;

  private:
    struct Impl {
        Provenance provenance = Provenance::Explicit;
        Generator gen;
        DecayEnvelope envelope;
        std::string name;
        cxd kappa0_sq{1.0, 0.0};

        mutable std::mutex mu;
        mutable std::vector<cxd> a, b;       // cached values, index n-1
        mutable std::vector<cxd> products;   // products[n] = P_n, products[0] = 1
        mutable std::vector<cxd> kappas;     // kappas[n]
        mutable std::vector<long> flips;

        void ensure(long n) const;
    };

    std::shared_ptr<Impl> impl_;
};

// kappa_0 .. kappa_N with the continuity-corrected branch.
std::vector<cxd> kappa_sequence(const ParameterSequence& params, long N);

}  // namespace baxter
