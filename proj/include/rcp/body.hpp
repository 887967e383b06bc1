#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcp/geometry.hpp"

namespace rcp {

struct OriginArgument : GeometryError {
    using GeometryError::GeometryError;
};
struct NonpositiveOffset : GeometryError {
    using GeometryError::GeometryError;
};

// ---------------------------------------------------------------------------
// the map phi of the polar point model: ru <-> H(u, 1/r)

inline Hyperplane phi(const Vec& x) {
    const double r = norm(x);
    if (r == 0.0) throw OriginArgument("phi: origin has no image");
    Vec u = x;
    for (double& c : u) c /= r;
    return Hyperplane(std::move(u), 1.0 / r);
}

inline Vec phi_inv(const Hyperplane& H) {
    if (H.offset <= 0.0) throw NonpositiveOffset("phi_inv: offset must be positive");
    Vec x = H.normal;
    for (double& c : x) c /= H.offset;
    return x;
}

// ---------------------------------------------------------------------------
// polarity for polytopes

/// P* = {y : <x,y> <= 1 for all x in P}; requires o strictly interior.
/// Vertices of P* are facet normals scaled by 1/offset.
inline Polytope polar_polytope(const Polytope& P, const Tolerance& tol = {}) {
    std::vector<Vec> dual_vertices;
    dual_vertices.reserve(P.facets.size());
    for (const Facet& f : P.facets) {
        if (f.offset <= tol.geom)
            throw OriginNotInterior("polar_polytope: origin not interior to P");
        Vec v = f.normal;
        for (double& c : v) c /= f.offset;
        dual_vertices.push_back(std::move(v));
    }
    return convex_hull(dual_vertices, tol);
}

// ---------------------------------------------------------------------------
// point-to-set distances used by the K_1 containment tests

namespace detail {

inline double point_segment_dist2(const double* p, const Vec& a, const Vec& b, int d) {
    double ab2 = 0.0, ap_ab = 0.0;
    for (int i = 0; i < d; ++i) {
        const double e = b[i] - a[i];
        ab2 += e * e;
        ap_ab += (p[i] - a[i]) * e;
    }
    const double t = ab2 > 0.0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
    double d2 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double e = p[i] - a[i] - t * (b[i] - a[i]);
        d2 += e * e;
    }
    return d2;
}

/// Closest-point distance from p to triangle abc in R^3.
inline double point_triangle_dist2(const double* p, const Vec& a, const Vec& b,
                                   const Vec& c) {
    double ab[3], ac[3], ap[3];
    for (int i = 0; i < 3; ++i) {
        ab[i] = b[i] - a[i];
        ac[i] = c[i] - a[i];
        ap[i] = p[i] - a[i];
    }
    const double d1 = dot(ab, ap, 3), d2 = dot(ac, ap, 3);
    auto dist2_to = [&](double x, double y) {
        double q2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double e = ap[i] - x * ab[i] - y * ac[i];
            q2 += e * e;
        }
        return q2;
    };
    if (d1 <= 0.0 && d2 <= 0.0) return dot(ap, ap, 3); // vertex a

    double bp[3];
    for (int i = 0; i < 3; ++i) bp[i] = p[i] - b[i];
    const double d3 = dot(ab, bp, 3), d4 = dot(ac, bp, 3);
    if (d3 >= 0.0 && d4 <= d3) return dot(bp, bp, 3); // vertex b

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) { // edge ab
        const double t = d1 / (d1 - d3);
        return dist2_to(t, 0.0);
    }

    double cp[3];
    for (int i = 0; i < 3; ++i) cp[i] = p[i] - c[i];
    const double d5 = dot(ab, cp, 3), d6 = dot(ac, cp, 3);
    if (d6 >= 0.0 && d5 <= d6) return dot(cp, cp, 3); // vertex c

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) { // edge ac
        const double t = d2 / (d2 - d6);
        return dist2_to(0.0, t);
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) { // edge bc
        const double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return dist2_to(1.0 - t, t);
    }

    const double denom = 1.0 / (va + vb + vc);
    return dist2_to(vb * denom, vc * denom);
}

}  // namespace detail

/// Euclidean distance from x to the polytope P (0 when inside). d <= 3.
inline double distance_to_polytope(const Polytope& P, const double* x,
                                   const Tolerance& tol = {}) {
    if (contains(P, x, tol)) return 0.0;
    double best = std::numeric_limits<double>::max();
    if (P.dim == 2) {
        for (const std::vector<int>& s : P.boundary_simplices)
            best = std::min(best, detail::point_segment_dist2(x, P.vertices[s[0]],
                                                              P.vertices[s[1]], 2));
    } else if (P.dim == 3) {
        for (const std::vector<int>& s : P.boundary_simplices)
            best = std::min(best,
                            detail::point_triangle_dist2(x, P.vertices[s[0]],
                                                         P.vertices[s[1]],
                                                         P.vertices[s[2]]));
    } else {
        throw GeometryError("distance_to_polytope: only d <= 3 supported");
    }
    return std::sqrt(best);
}

// ---------------------------------------------------------------------------
// the reference convex body K

enum class BodyKind { Ball, Poly, RegularPolygon };

/// Reference convex body with o in its interior. Polytopal bodies cache
/// their polar at construction, so all reads are thread-safe.
struct Body {
    BodyKind kind = BodyKind::Ball;
    int dim = 0;
    std::string name;

    // Ball
    Vec center;
    double radius = 1.0;

    // Poly / RegularPolygon
    int ngon = 0;
    Polytope poly;
    Polytope polar; // cached, polytopal bodies only

    double support(const double* u) const {
        if (kind == BodyKind::Ball) return dot(center.data(), u, dim) + radius;
        double best = -std::numeric_limits<double>::max();
        for (const Vec& v : poly.vertices) best = std::max(best, dot(v.data(), u, dim));
        return best;
    }
    double support(const Vec& u) const { return support(u.data()); }

    /// Support of the parallel body K_1 = K + B^d.
    double support_parallel(const Vec& u) const { return support(u) + 1.0; }

    /// dist(x, K); 0 inside.
    double distance(const double* x) const {
        if (kind == BodyKind::Ball) {
            double d2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double t = x[i] - center[i];
                d2 += t * t;
            }
            return std::max(0.0, std::sqrt(d2) - radius);
        }
        return distance_to_polytope(poly, x);
    }
    double distance(const Vec& x) const { return distance(x.data()); }

    /// Exact mean width (quadrature only for polytopal bodies with d >= 4).
    double mean_width_exact() const {
        if (kind == BodyKind::Ball) return 2.0 * radius;
        return mean_width(poly, 2000000);
    }

    double volume_exact() const {
        if (kind == BodyKind::Ball) {
            const double vb = std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
            return vb * std::pow(radius, dim);
        }
        return volume(poly);
    }
};

/// h(K, x) for arbitrary (not necessarily unit) x, by positive homogeneity.
inline double support_raw(const Body& K, const Vec& x) {
    if (K.kind == BodyKind::Ball) return dot(K.center, x) + K.radius * norm(x);
    double best = -std::numeric_limits<double>::max();
    for (const Vec& v : K.poly.vertices) best = std::max(best, dot(v, x));
    return best;
}

/// x in K_1^* = (K + B^d)^*  <=>  h(K, x) + |x| <= 1.
inline bool in_K1_star(const Body& K, const Vec& x, const Tolerance& tol = {}) {
    return support_raw(K, x) + norm(x) <= 1.0 + tol.geom;
}

/// x in X_K = cl(K^* \ K_1^*): inside K^* but not strictly inside K_1^*.
inline bool in_X_K(const Body& K, const Vec& x, const Tolerance& tol = {}) {
    if (support_raw(K, x) > 1.0 + tol.geom) return false;
    return support_raw(K, x) + norm(x) >= 1.0 - tol.geom;
}

// ---------------------------------------------------------------------------
// constructors

inline Body make_ball(int d, double radius = 1.0, Vec center = {}) {
    Body K;
    K.kind = BodyKind::Ball;
    K.dim = d;
    K.radius = radius;
    K.center = center.empty() ? Vec(d, 0.0) : std::move(center);
    K.name = "ball";
    if (radius <= 0.0) throw GeometryError("make_ball: radius must be positive");
    return K;
}

inline Body make_poly_body(std::vector<Vec> vertices, bool recenter = true,
                           std::string name = "poly", const Tolerance& tol = {}) {
    Body K;
    K.kind = BodyKind::Poly;
    K.dim = static_cast<int>(vertices[0].size());
    K.name = std::move(name);
    if (recenter) {
        Vec c(K.dim, 0.0);
        for (const Vec& v : vertices)
            for (int i = 0; i < K.dim; ++i) c[i] += v[i];
        for (int i = 0; i < K.dim; ++i) c[i] /= static_cast<double>(vertices.size());
        for (Vec& v : vertices)
            for (int i = 0; i < K.dim; ++i) v[i] -= c[i];
    }
    K.poly = convex_hull(vertices, tol);
    for (const Facet& f : K.poly.facets)
        if (f.offset <= tol.geom)
            throw OriginNotInterior("make_poly_body: origin not interior");
    K.polar = polar_polytope(K.poly, tol);
    return K;
}

/// Regular k-gon with circumradius R, first vertex on the positive x-axis.
inline Body make_regular_polygon(int k, double R = 1.0) {
    if (k < 3) throw GeometryError("make_regular_polygon: need k >= 3");
    std::vector<Vec> vs;
    vs.reserve(k);
    for (int i = 0; i < k; ++i) {
        const double a = 2.0 * M_PI * i / k;
        vs.push_back({R * std::cos(a), R * std::sin(a)});
    }
    Body K = make_poly_body(std::move(vs), false, "polygon:" + std::to_string(k));
    K.kind = BodyKind::RegularPolygon;
    K.ngon = k;
    return K;
}

/// Regular d-simplex centered at the origin with circumradius 1.
inline Body make_simplex_body(int d) {
    // vertices of the standard simplex in R^{d+1}, centered, mapped to R^d
    // through an orthonormal basis of the hyperplane {sum = 0}
    std::vector<Vec> high(d + 1, Vec(d + 1, 0.0));
    for (int i = 0; i <= d; ++i) high[i][i] = 1.0;
    const double mean = 1.0 / (d + 1);
    for (Vec& v : high)
        for (double& c : v) c -= mean;
    // Gram-Schmidt on the first d centered vertices
    std::vector<Vec> basis;
    for (int i = 0; i < d; ++i) {
        Vec r = detail::residual(high[i], basis);
        basis.push_back(normalized(std::move(r)));
    }
    std::vector<Vec> vs;
    for (const Vec& v : high) {
        Vec w(d);
        for (int i = 0; i < d; ++i) w[i] = dot(v, basis[i]);
        vs.push_back(std::move(w));
    }
    double R = norm(vs[0]);
    for (Vec& v : vs)
        for (double& c : v) c /= R;
    return make_poly_body(std::move(vs), false, "simplex");
}

/// Cube [-1, 1]^d.
inline Body make_cube_body(int d) {
    std::vector<Vec> vs;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        vs.push_back(std::move(v));
    }
    return make_poly_body(std::move(vs), false, "cube");
}

/// Vertex-list file: first line "d n", then n lines of d decimals.
inline Body load_body_file(const std::string& path, bool recenter = true) {
    std::ifstream in(path);
    if (!in) throw GeometryError("load_body_file: cannot open " + path);
    int d = 0;
    long n = 0;
    in >> d >> n;
    if (d < 2 || n < d + 1)
        throw GeometryError("load_body_file: bad header in " + path);
    std::vector<Vec> vs(n, Vec(d));
    for (long i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k)
            if (!(in >> vs[i][k]))
                throw GeometryError("load_body_file: short file " + path);
    return make_poly_body(std::move(vs), recenter, "file:" + path);
}

/// Body spec grammar: ball | simplex | cube | polygon:k | file:PATH
/// (plus the aliases triangle = polygon:3 and square = polygon:4 in d = 2).
inline Body make_body(const std::string& spec, int d) {
    if (spec == "ball") return make_ball(d);
    if (spec == "simplex") return make_simplex_body(d);
    if (spec == "cube") return make_cube_body(d);
    if (spec == "triangle") {
        if (d != 2) throw GeometryError("triangle body requires --dim 2");
        return make_regular_polygon(3);
    }
    if (spec == "square") {
        if (d != 2) throw GeometryError("square body requires --dim 2");
        return make_regular_polygon(4);
    }
    if (spec.rfind("polygon:", 0) == 0) {
        if (d != 2) throw GeometryError("polygon body requires --dim 2");
        return make_regular_polygon(std::stoi(spec.substr(8)));
    }
    if (spec.rfind("file:", 0) == 0) return load_body_file(spec.substr(5));
    throw GeometryError("unknown body spec: " + spec);
}

/// Support of K_1^* in direction nu (unit): 1 / max{lambda : lambda*nu in K_1},
/// with the radial maximum found by bisection on dist(lambda*nu, K) <= 1.
inline double support_K1_star(const Body& K, const Vec& nu, double lambda_tol = 1e-10) {
    if (K.kind == BodyKind::Ball && norm(K.center) == 0.0)
        return 1.0 / (K.radius + 1.0);
    Vec x(K.dim);
    auto inside = [&](double lam) {
        for (int i = 0; i < K.dim; ++i) x[i] = lam * nu[i];
        return K.distance(x.data()) <= 1.0;
    };
    double lo = 0.0, hi = 1.0;
    while (inside(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw GeometryError("support_K1_star: unbounded body?");
    }
    while (hi - lo > lambda_tol) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
    }
    return 1.0 / lo; // certified inside radius
}

}  // namespace rcp
