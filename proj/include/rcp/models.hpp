#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "rcp/body.hpp"
#include "rcp/geometry.hpp"
#include "rcp/sampling.hpp"

namespace rcp {

struct SeparationFailure : GeometryError {
    using GeometryError::GeometryError;
};
struct OriginInSimplex : GeometryError {
    using GeometryError::GeometryError;
};

enum class RejectReason { None, Unbounded, EscapesK1, Degenerate };

inline const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "none";
        case RejectReason::Unbounded: return "unbounded";
        case RejectReason::EscapesK1: return "escapes_k1";
        case RejectReason::Degenerate: return "degenerate";
    }
    return "?";
}

/// Result of one random-model build. Rejection realizes the conditional
/// expectation E_1: unbounded intersections, escapes from K_1, and degenerate
/// hulls are counted, never repaired.
struct TrialOutcome {
    RejectReason reject = RejectReason::Degenerate;
    Polytope poly;
    std::vector<int> proper_vertices;
    std::vector<int> proper_facets;
    // dual model only: certified h(K_1^*, nu_F) per facet of `poly`
    std::vector<double> facet_k1star_support;

    bool accepted() const { return reject == RejectReason::None; }
};

struct MeanStderr {
    double value = 0.0;
    double stderr_ = 0.0;
};

// ---------------------------------------------------------------------------
// primal model: K^(n) as an intersection of mu_K halfspaces

/// Build from precomputed raw draws (rows u_1..u_d, t; stride d+1).
inline TrialOutcome build_primal_from_draws(const Body& K, const double* draws,
                                            long n, const Tolerance& tol = {}) {
    const int d = K.dim;
    TrialOutcome out;
    if (n < d + 1) {
        out.reject = RejectReason::Unbounded;
        return out;
    }
    // witness is the origin (o in int K), so the dual point of
    // <x, u> <= h(K,u) + t is u / (h + t) directly
    std::vector<double> duals(static_cast<std::size_t>(n) * d);
    for (long i = 0; i < n; ++i) {
        const double* row = draws + static_cast<std::size_t>(i) * (d + 1);
        const double c = K.support(row) + row[d];
        double* y = duals.data() + static_cast<std::size_t>(i) * d;
        for (int k = 0; k < d; ++k) y[k] = row[k] / c;
    }
    const Vec origin(d, 0.0);
    HsiResult hsi;
    try {
        hsi = intersect_from_duals(duals.data(), n, d, origin, tol);
    } catch (const DegenerateInput&) {
        out.reject = RejectReason::Degenerate;
        return out;
    }
    if (hsi.status == HsiStatus::Unbounded) {
        out.reject = RejectReason::Unbounded;
        return out;
    }
    if (hsi.status == HsiStatus::Degenerate) {
        out.reject = RejectReason::Degenerate;
        return out;
    }
    for (const Vec& v : hsi.poly.vertices) {
        if (K.distance(v.data()) > 1.0 + tol.geom) {
            out.reject = RejectReason::EscapesK1;
            return out;
        }
    }
    out.reject = RejectReason::None;
    out.poly = std::move(hsi.poly);
    // under acceptance (bounded, inside K_1) every facet hyperplane meets
    // int K_1 and every vertex lies in int K_1
    out.proper_vertices.resize(out.poly.vertices.size());
    out.proper_facets.resize(out.poly.facets.size());
    for (std::size_t i = 0; i < out.proper_vertices.size(); ++i)
        out.proper_vertices[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < out.proper_facets.size(); ++i)
        out.proper_facets[i] = static_cast<int>(i);
    return out;
}

inline TrialOutcome build_primal(const Body& K, long n, RngStream& rng,
                                 const Tolerance& tol = {}) {
    std::vector<double> draws;
    sample_mu_K_draws_flat(rng, K, n, draws);
    return build_primal_from_draws(K, draws.data(), n, tol);
}

/// The intersection of the sampled halfspaces clipped against K_1, realizing
/// the unconditional model: escaped or unbounded intersections are cut by a
/// fine circumscribed polygonal cap of K_1 instead of being rejected.
/// d = 2 only; nullopt on degenerate hulls.
inline std::optional<Polytope> capped_intersection_from_draws(
    const Body& K, const double* draws, long n, int cap_facets = 2048,
    const Tolerance& tol = {}) {
    const int d = K.dim;
    if (d != 2)
        throw GeometryError("capped_intersection_from_draws: implemented for d = 2");
    std::vector<double> duals(static_cast<std::size_t>(n + cap_facets) * d);
    for (long i = 0; i < n; ++i) {
        const double* row = draws + static_cast<std::size_t>(i) * (d + 1);
        const double c = K.support(row) + row[d];
        duals[2 * i] = row[0] / c;
        duals[2 * i + 1] = row[1] / c;
    }
    for (int j = 0; j < cap_facets; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / cap_facets;
        double u[2] = {std::cos(th), std::sin(th)};
        const double c = K.support(u) + 1.0; // h(K_1, u)
        duals[2 * (n + j)] = u[0] / c;
        duals[2 * (n + j) + 1] = u[1] / c;
    }
    const Vec origin(d, 0.0);
    HsiResult hsi;
    try {
        hsi = intersect_from_duals(duals.data(), n + cap_facets, d, origin, tol);
    } catch (const DegenerateInput&) {
        return std::nullopt;
    }
    if (hsi.status != HsiStatus::Bounded) return std::nullopt;
    return std::move(hsi.poly);
}

inline std::optional<double> capped_width_from_draws(const Body& K,
                                                     const double* draws, long n,
                                                     int cap_facets = 2048,
                                                     const Tolerance& tol = {}) {
    auto P = capped_intersection_from_draws(K, draws, n, cap_facets, tol);
    if (!P) return std::nullopt;
    return mean_width(*P);
}

// ---------------------------------------------------------------------------
// dual model: K_n^* as a hull of mu_K^* points

/// Build from the same raw draws as the primal model: x_i = u_i / (h + t_i).
/// Accepts iff K_1^* is certified inside the hull, facet by facet; in that
/// case the hull of the points equals K_n^* = [K_1^*, x_1, ..., x_n] exactly.
inline TrialOutcome build_dual_from_draws(const Body& K, const double* draws,
                                          long n, const Tolerance& tol = {},
                                          double lambda_tol = 1e-10) {
    const int d = K.dim;
    TrialOutcome out;
    if (n < d + 1) {
        out.reject = RejectReason::EscapesK1;
        return out;
    }
    std::vector<double> pts(static_cast<std::size_t>(n) * d);
    for (long i = 0; i < n; ++i) {
        const double* row = draws + static_cast<std::size_t>(i) * (d + 1);
        const double c = K.support(row) + row[d];
        double* x = pts.data() + static_cast<std::size_t>(i) * d;
        for (int k = 0; k < d; ++k) x[k] = row[k] / c;
    }
    Polytope Q;
    try {
        Q = convex_hull(pts.data(), n, d, tol);
    } catch (const DegenerateInput&) {
        out.reject = RejectReason::Degenerate;
        return out;
    }
    out.facet_k1star_support.reserve(Q.facets.size());
    for (const Facet& f : Q.facets) {
        const double h = support_K1_star(K, f.normal, lambda_tol);
        out.facet_k1star_support.push_back(h);
        if (h > f.offset) { // cannot certify K_1^* inside the hull
            out.reject = RejectReason::EscapesK1;
            return out;
        }
    }
    out.reject = RejectReason::None;
    out.poly = std::move(Q);
    for (std::size_t i = 0; i < out.poly.vertices.size(); ++i)
        if (!in_K1_star(K, out.poly.vertices[i], tol))
            out.proper_vertices.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < out.poly.facets.size(); ++i)
        if (out.facet_k1star_support[i] < out.poly.facets[i].offset)
            out.proper_facets.push_back(static_cast<int>(i));
    return out;
}

inline TrialOutcome build_dual(const Body& K, long n, RngStream& rng,
                               const Tolerance& tol = {}) {
    std::vector<double> draws;
    sample_mu_K_draws_flat(rng, K, n, draws);
    return build_dual_from_draws(K, draws.data(), n, tol);
}

// ---------------------------------------------------------------------------
// the T_q^* functional and mu^* set measures

/// Apex vertex for a proper facet F of the dual polytope: the vertex of P^*
/// extreme in F's outward direction (ties broken by lowest index). Verifies
/// that aff F separates the apex from P_1^*.
inline int find_v_F(const Polytope& Q, int facet_idx, const Polytope& P_star,
                    const Body& K, double k1star_support,
                    const Tolerance& tol = {}) {
    const Facet& F = Q.facets[facet_idx];
    int best = -1;
    double best_val = -std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < P_star.vertices.size(); ++i) {
        const double v = dot(P_star.vertices[i], F.normal);
        if (v > best_val + tol.geom) {
            best_val = v;
            best = static_cast<int>(i);
        }
    }
    (void)K;
    // separation: h(P_1^*, nu) <= c_F < <v_F, nu>
    if (k1star_support > F.offset + tol.geom || best_val < F.offset - tol.geom)
        throw SeparationFailure("find_v_F: apex not separated from P_1^* by aff F");
    return best;
}

/// Monte Carlo estimate of mu_K^*(S) for a d-simplex S (rows of `verts`,
/// d+1 points): vol(S)/sigma(S^{d-1}) times the mean of |x|^{-(d+1)} over
/// uniform points of S. Requires o outside S so the integrand is bounded.
inline MeanStderr mu_star_simplex(const std::vector<double>& verts, int d,
                                  long budget, RngStream& rng) {
    // origin-in-simplex guard via barycentric coordinates
    {
        std::vector<double> m(static_cast<std::size_t>(d) * d), b(d);
        for (int c = 0; c < d; ++c) {
            for (int r = 0; r < d; ++r)
                m[r * d + c] = verts[(c + 1) * d + r] - verts[r];
            // column c = v_{c+1} - v_0
        }
        for (int r = 0; r < d; ++r) b[r] = -verts[r];
        if (solve_linear(m, b, d)) {
            double s = 0.0;
            bool nonneg = true;
            for (double lam : b) {
                if (lam < -1e-12) nonneg = false;
                s += lam;
            }
            if (nonneg && s <= 1.0 + 1e-12)
                throw OriginInSimplex("mu_star_simplex: origin inside simplex");
        }
    }
    const double vol = simplex_volume(verts.data(), d);
    std::vector<double> w(d + 1);
    Vec x(d);
    double sum = 0.0, sum2 = 0.0;
    for (long s = 0; s < budget; ++s) {
        double tot = 0.0;
        for (int i = 0; i <= d; ++i) {
            w[i] = rng.exponential();
            tot += w[i];
        }
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) {
            double xk = 0.0;
            for (int i = 0; i <= d; ++i) xk += w[i] * verts[i * d + k];
            xk /= tot;
            x[k] = xk;
            r2 += xk * xk;
        }
        const double v = std::pow(r2, -0.5 * (d + 1));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / static_cast<double>(budget);
    const double var =
        std::max(0.0, sum2 / static_cast<double>(budget) - mean * mean);
    const double scale = vol / sphere_surface(d);
    return {scale * mean, scale * std::sqrt(var / static_cast<double>(budget))};
}

/// T_q^*: sum over proper facets F of mu^*(S_F)^q, S_F = [F, v_F].
/// q = 0 counts proper facets exactly; otherwise each simplex mass is
/// integrated with `budget` points and the stderr is propagated.
inline MeanStderr T_q_star(const TrialOutcome& trial, const Polytope& P_star,
                           const Body& K, int q, long budget, RngStream& rng,
                           const Tolerance& tol = {}) {
    if (q == 0)
        return {static_cast<double>(trial.proper_facets.size()), 0.0};
    const Polytope& Q = trial.poly;
    const int d = Q.dim;
    // boundary simplices per facet (non-simplex facets integrate piecewise)
    std::vector<std::vector<int>> facet_simplices(Q.facets.size());
    for (std::size_t s = 0; s < Q.boundary_simplices.size(); ++s)
        facet_simplices[Q.simplex_facet[s]].push_back(static_cast<int>(s));

    double total = 0.0, var = 0.0;
    std::vector<double> sverts(static_cast<std::size_t>(d + 1) * d);
    for (int fi : trial.proper_facets) {
        const int apex =
            find_v_F(Q, fi, P_star, K, trial.facet_k1star_support[fi], tol);
        const Vec& v_F = P_star.vertices[apex];
        double mass = 0.0, mass_var = 0.0;
        for (int si : facet_simplices[fi]) {
            const std::vector<int>& tri = Q.boundary_simplices[si];
            for (int r = 0; r < d; ++r)
                for (int k = 0; k < d; ++k)
                    sverts[r * d + k] = Q.vertices[tri[r]][k];
            for (int k = 0; k < d; ++k) sverts[d * d + k] = v_F[k];
            const MeanStderr m = mu_star_simplex(sverts, d, budget, rng);
            mass += m.value;
            mass_var += m.stderr_ * m.stderr_;
        }
        total += std::pow(mass, q);
        const double dmass = q * std::pow(mass, q - 1); // delta method
        var += dmass * dmass * mass_var;
    }
    return {total, std::sqrt(var)};
}

/// mu_K^*(K^* \ K_n^*) as the fraction of fresh mu_K^* points outside the
/// accepted hull, with binomial stderr.
inline MeanStderr mu_star_complement(const Polytope& Q, const Body& K, long m,
                                     RngStream& rng, const Tolerance& tol = {}) {
    const int d = K.dim;
    long outside = 0;
    Vec u(d);
    for (long s = 0; s < m; ++s) {
        sample_direction(rng, d, u.data());
        const double c = K.support(u) + rng.uniform();
        for (int k = 0; k < d; ++k) u[k] /= c;
        if (!contains(Q, u, tol)) ++outside;
    }
    const double p = static_cast<double>(outside) / static_cast<double>(m);
    return {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(m))};
}

}  // namespace rcp
