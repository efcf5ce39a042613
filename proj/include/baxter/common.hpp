#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace baxter {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Error taxonomy. Everything numerical throws one of these; callers that run
// grid sweeps catch per point and flag the row instead of aborting the sweep.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct SingularTable : Error {
    using Error::Error;
};

struct ZeroDeterminant : Error {
    explicit ZeroDeterminant(int order_)
        : Error("Toeplitz determinant vanishes at order " + std::to_string(order_)),
          order(order_) {}
    int order;
};

struct DegenerateStep : Error {
    explicit DegenerateStep(long n_)
        : Error("alpha_n * beta_n = 1 at n = " + std::to_string(n_) +
                "; kappa ratio undefined"),
          n(n_) {}
    long n;
};

struct ZeroPoint : Error {
    using Error::Error;
};

struct CutoffTooSmall : Error {
    using Error::Error;
};

struct NonFiniteValue : Error {
    using Error::Error;
};

struct NotOPUC : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Small numeric helpers shared across modules.
// ---------------------------------------------------------------------------

inline bool is_finite(cxd v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Reciprocal that stays on the unit circle exactly: for |z| = 1 the inverse
// equals conj(z), and using the conjugate keeps conjugate-symmetric runs
// bit-identical instead of drifting over long recursions.
inline cxd circle_inverse(cxd z) {
    const double n2 = std::norm(z);
    if (std::abs(n2 - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon())
        return std::conj(z);
    return cxd(1.0, 0.0) / z;
}

// Least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t m = x.size();
    if (m < 2 || y.size() != m) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (m * sxy - sx * sy) / den;
}

// Deterministic uniform deviates. std::uniform_real_distribution is
// implementation-defined, so experiment outputs seeded through this stay
// byte-identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed == 0 ? 0x9e3779b97f4a7c15ULL : seed) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    cxd complex_in_annulus(double rmin, double rmax) {
        const double r = uniform(rmin, rmax);
        const double t = uniform(0.0, 2.0 * kPi);
        return std::polar(r, t);
    }

  private:
    std::uint64_t state_;
};

}  // namespace baxter
