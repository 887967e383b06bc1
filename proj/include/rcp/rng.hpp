#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace rcp {

/// Name recorded in output metadata so runs can state which generator
/// produced them.
inline constexpr const char* kGeneratorName = "mt19937_64/splitmix-stream";

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Index-addressable random stream: (seed, stream_index) fully determines the
/// draw sequence. Each Monte Carlo trial owns one stream, so results do not
/// depend on thread scheduling. Uniform and gaussian deviates are generated
/// here rather than through <random> distributions, whose algorithms are
/// implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : seed_(seed), stream_(stream_index) {
        std::uint64_t s = seed ^ 0x5851f42d4c957f2dULL;
        detail::splitmix64(s);
        s ^= stream_index * 0xda942042e4dd58b5ULL;
        engine_.seed(detail::splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal deviate via the Marsaglia polar method.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Exp(1) deviate.
    double exponential() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return -std::log(u);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Uniform direction on S^{d-1}: d independent normals, normalized.
inline void sample_direction(RngStream& rng, int d, double* out) {
    double nrm2;
    do {
        nrm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            out[i] = rng.gaussian();
            nrm2 += out[i] * out[i];
        }
    } while (nrm2 < 1e-300);
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int i = 0; i < d; ++i) out[i] *= inv;
}

inline std::vector<double> sample_direction(RngStream& rng, int d) {
    std::vector<double> u(d);
    sample_direction(rng, d, u.data());
    return u;
}

}  // namespace rcp
