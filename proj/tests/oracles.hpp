// Independent reference computations used by the test suites: rejection
// volume, radial-interval integration of the dual density over a triangle,
// and a tensor-grid quadrature of the three-halfplane disk model. These
// deliberately avoid the library's own code paths wherever possible.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "rcp/body.hpp"
#include "rcp/geometry.hpp"
#include "rcp/rng.hpp"

namespace oracle {

/// Volume by rejection sampling against the vertex bounding box.
inline double volume_rejection(const rcp::Polytope& P, long samples,
                               rcp::RngStream& rng) {
    const int d = P.dim;
    std::vector<double> lo(d, 1e300), hi(d, -1e300);
    for (const rcp::Vec& v : P.vertices)
        for (int k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    double box = 1.0;
    for (int k = 0; k < d; ++k) box *= hi[k] - lo[k];
    rcp::Vec x(d);
    long inside = 0;
    for (long s = 0; s < samples; ++s) {
        for (int k = 0; k < d; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * rng.uniform();
        if (rcp::contains(P, x)) ++inside;
    }
    return box * static_cast<double>(inside) / static_cast<double>(samples);
}

/// Integral of ||x||^{-3}/(2 pi) over a triangle in the plane with the origin
/// outside, via the radial form (1/2pi) * Int (1/a(th) - 1/b(th)) dth where
/// [a, b] is the ray-hit interval. The integrand vanishes continuously at the
/// edges of the angular support, so a midpoint rule converges quickly.
inline double mu_star_triangle_radial(const std::array<std::array<double, 2>, 3>& v,
                                      int steps = 400000) {
    auto hit_interval = [&](double th, double& a, double& b) -> bool {
        const double c = std::cos(th), s = std::sin(th);
        double rs[3];
        int m = 0;
        for (int e = 0; e < 3; ++e) {
            const auto& p = v[e];
            const auto& q = v[(e + 1) % 3];
            // solve p + u (q - p) = r (c, s)
            const double dx = q[0] - p[0], dy = q[1] - p[1];
            const double det = dx * s - dy * c;
            if (std::abs(det) < 1e-14) continue;
            const double u = (p[1] * c - p[0] * s) / det;
            if (u < 0.0 || u > 1.0) continue;
            const double r = (c != 0.0 && std::abs(c) >= std::abs(s))
                                 ? (p[0] + u * dx) / c
                                 : (p[1] + u * dy) / s;
            if (r > 0.0) rs[m++] = r;
        }
        if (m < 2) return false;
        a = rs[0];
        b = rs[0];
        for (int i = 1; i < m; ++i) {
            a = std::min(a, rs[i]);
            b = std::max(b, rs[i]);
        }
        return b > a;
    };
    double sum = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double th = 2.0 * M_PI * (i + 0.5) / steps;
        double a, b;
        if (hit_interval(th, a, b)) sum += 1.0 / a - 1.0 / b;
    }
    return sum / steps; // (2 pi / steps) * sum / (2 pi)
}

/// Perimeter and area of disk(R) cut by halfplanes <x, u_i> <= c_i with
/// 0 < c_i <= R, computed exactly from chord-arc geometry. The boundary is a
/// union of circle arcs (angles where the circle point satisfies every
/// constraint) and chord segments (the part of each cut line inside the disk
/// and the other constraints); the area follows from Green's theorem.
struct DiskCutResult {
    double perimeter = 0.0;
    double area = 0.0;
};

inline DiskCutResult disk_cut(double R, int m, const double* ux, const double* uy,
                              const double* c) {
    DiskCutResult out;
    // excluded arcs: |phi - alpha_i| < acos(c_i / R)
    std::vector<std::pair<double, double>> excl;
    for (int i = 0; i < m; ++i) {
        if (c[i] >= R) continue;
        const double alpha = std::atan2(uy[i], ux[i]);
        const double beta = std::acos(c[i] / R);
        double lo = alpha - beta, hi = alpha + beta;
        if (lo < 0) {
            lo += 2.0 * M_PI;
            hi += 2.0 * M_PI;
        }
        if (hi <= 2.0 * M_PI) {
            excl.push_back({lo, hi});
        } else {
            excl.push_back({lo, 2.0 * M_PI});
            excl.push_back({0.0, hi - 2.0 * M_PI});
        }
    }
    std::sort(excl.begin(), excl.end());
    double excluded = 0.0, cursor = 0.0;
    for (const auto& [lo, hi] : excl) {
        const double a = std::max(lo, cursor);
        if (hi > a) {
            excluded += hi - a;
            cursor = hi;
        }
    }
    const double arc = 2.0 * M_PI - excluded;
    out.perimeter = R * arc;
    out.area = 0.5 * R * R * arc;
    // chord segments: s along tau_i = (-uy_i, ux_i) from the foot c_i u_i
    for (int i = 0; i < m; ++i) {
        if (c[i] >= R) continue;
        const double L = std::sqrt(R * R - c[i] * c[i]);
        double s_lo = -L, s_hi = L;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            // <c_i u_i + s tau_i, u_j> <= c_j
            const double a = -uy[i] * ux[j] + ux[i] * uy[j];
            const double b = c[j] - c[i] * (ux[i] * ux[j] + uy[i] * uy[j]);
            if (std::abs(a) < 1e-15) {
                if (b < 0) s_lo = s_hi = 0.0;
            } else if (a > 0) {
                s_hi = std::min(s_hi, b / a);
            } else {
                s_lo = std::max(s_lo, b / a);
            }
        }
        if (s_hi <= s_lo) continue;
        out.perimeter += s_hi - s_lo;
        // Green's theorem along the CCW-oriented segment (tau keeps the
        // interior on the left): endpoints p = c_i u_i + s tau_i
        const double ax = c[i] * ux[i] - s_lo * uy[i];
        const double ay = c[i] * uy[i] + s_lo * ux[i];
        const double bx = c[i] * ux[i] - s_hi * uy[i];
        const double by = c[i] * uy[i] + s_hi * ux[i];
        out.area += 0.5 * (ax * by - bx * ay);
    }
    return out;
}

/// Unconditional capped gap of the three-halfplane model for the unit disk:
/// E[F(H_1^- cap H_2^- cap H_3^- cap disk(2))] - F(disk(1)), by tensor
/// quadrature. Rotation invariance fixes the first direction, leaving a
/// 5-dimensional midpoint grid over (th2, th3, t1, t2, t3). The integrand is
/// continuous in all variables, so the midpoint rule converges quickly.
/// `width` selects perimeter/pi - 2 versus area - pi.
inline double disk_n3_capped_gap(bool width, int n_theta = 96, int n_t = 24) {
    double sum = 0.0;
    long nodes = 0;
    std::vector<double> ts(n_t);
    for (int i = 0; i < n_t; ++i) ts[i] = (i + 0.5) / n_t;
    for (int i2 = 0; i2 < n_theta; ++i2) {
        const double th2 = 2.0 * M_PI * (i2 + 0.5) / n_theta;
        for (int i3 = 0; i3 < n_theta; ++i3) {
            const double th3 = 2.0 * M_PI * (i3 + 0.5) / n_theta;
            const double ux[3] = {1.0, std::cos(th2), std::cos(th3)};
            const double uy[3] = {0.0, std::sin(th2), std::sin(th3)};
            for (double t1 : ts)
                for (double t2 : ts)
                    for (double t3 : ts) {
                        const double c[3] = {1.0 + t1, 1.0 + t2, 1.0 + t3};
                        DiskCutResult r = disk_cut(2.0, 3, ux, uy, c);
                        sum += width ? r.perimeter / M_PI - 2.0
                                     : r.area - M_PI;
                        ++nodes;
                    }
        }
    }
    return sum / static_cast<double>(nodes);
}

}  // namespace oracle
