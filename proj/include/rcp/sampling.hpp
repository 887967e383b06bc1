#pragma once

#include <vector>

#include "rcp/body.hpp"
#include "rcp/geometry.hpp"
#include "rcp/rng.hpp"

namespace rcp {

/// One hyperplane draw in raw (direction, offset-excess) form. The same draw
/// feeds the primal and the dual model, so paired-trial checks compare model
/// code, not sampler noise.
struct HyperplaneDraw {
    Vec u;    // unit direction
    double t; // uniform [0, 1) excess over h(K, u)
};

/// mu_K: u uniform on S^{d-1}, t uniform on [0,1], H(u, h(K,u) + t).
/// Every such hyperplane meets K_1 but not int K.
inline HyperplaneDraw sample_mu_K_draw(RngStream& rng, const Body& K) {
    HyperplaneDraw d;
    d.u = sample_direction(rng, K.dim);
    d.t = rng.uniform();
    return d;
}

inline Hyperplane sample_mu_K(RngStream& rng, const Body& K) {
    HyperplaneDraw d = sample_mu_K_draw(rng, K);
    const double c = K.support(d.u) + d.t;
    return Hyperplane(std::move(d.u), c);
}

/// mu_K^*: exact pushforward of mu_K under phi^{-1}; lands in X_K.
inline Vec sample_mu_K_star(RngStream& rng, const Body& K) {
    HyperplaneDraw d = sample_mu_K_draw(rng, K);
    const double c = K.support(d.u) + d.t;
    for (double& x : d.u) x /= c;
    return std::move(d.u);
}

/// n draws packed as rows (u_1..u_d, t), stride d+1.
inline void sample_mu_K_draws_flat(RngStream& rng, const Body& K, long n,
                                   std::vector<double>& out) {
    const int d = K.dim;
    out.resize(static_cast<std::size_t>(n) * (d + 1));
    for (long i = 0; i < n; ++i) {
        double* row = out.data() + static_cast<std::size_t>(i) * (d + 1);
        sample_direction(rng, d, row);
        row[d] = rng.uniform();
    }
}

}  // namespace rcp
