#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcp/rng.hpp"

namespace rcp {

using Vec = std::vector<double>;

struct Tolerance {
    double geom = 1e-9;  // absolute coordinate tolerance
    double unit = 1e-12; // relative tolerance on unit-vector norms
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateInput : GeometryError {
    using GeometryError::GeometryError;
};
struct WitnessViolation : GeometryError {
    using GeometryError::GeometryError;
};
struct OriginNotInterior : GeometryError {
    using GeometryError::GeometryError;
};

// ---------------------------------------------------------------------------
// small dense linear algebra on raw ranges

inline double dot(const double* a, const double* b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

inline double dot(const Vec& a, const Vec& b) {
    return dot(a.data(), b.data(), static_cast<int>(a.size()));
}

inline double norm(const double* a, int d) { return std::sqrt(dot(a, a, d)); }
inline double norm(const Vec& a) { return norm(a.data(), static_cast<int>(a.size())); }

inline double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return std::sqrt(s);
}

inline Vec normalized(Vec v) {
    const double n = norm(v);
    if (n == 0.0) throw GeometryError("cannot normalize zero vector");
    for (double& x : v) x /= n;
    return v;
}

/// d x d determinant by Gaussian elimination with partial pivoting.
/// `m` is row-major and is destroyed.
inline double det_inplace(std::vector<double>& m, int d) {
    double det = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(m[r * d + col]) > std::abs(m[piv * d + col])) piv = r;
        if (m[piv * d + col] == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < d; ++c) std::swap(m[piv * d + c], m[col * d + c]);
            det = -det;
        }
        det *= m[col * d + col];
        const double inv = 1.0 / m[col * d + col];
        for (int r = col + 1; r < d; ++r) {
            const double f = m[r * d + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < d; ++c) m[r * d + c] -= f * m[col * d + c];
        }
    }
    return det;
}

/// Solves the d x d system m x = b in place (row-major m, both destroyed);
/// returns false when singular within machine precision.
inline bool solve_linear(std::vector<double>& m, std::vector<double>& b, int d) {
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(m[r * d + col]) > std::abs(m[piv * d + col])) piv = r;
        if (m[piv * d + col] == 0.0) return false;
        if (piv != col) {
            for (int c = 0; c < d; ++c) std::swap(m[piv * d + c], m[col * d + c]);
            std::swap(b[piv], b[col]);
        }
        const double inv = 1.0 / m[col * d + col];
        for (int r = col + 1; r < d; ++r) {
            const double f = m[r * d + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < d; ++c) m[r * d + c] -= f * m[col * d + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = d - 1; r >= 0; --r) {
        for (int c = r + 1; c < d; ++c) b[r] -= m[r * d + c] * b[c];
        b[r] /= m[r * d + r];
    }
    return true;
}

/// Volume of the simplex spanned by `k+1` points of dimension `k`
/// (rows of `pts`, row-major, stride `k`).
inline double simplex_volume(const double* pts, int k) {
    if (k == 0) return 1.0;
    std::vector<double> m(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            m[r * k + c] = pts[(r + 1) * k + c] - pts[c];
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return std::abs(det_inplace(m, k)) / f;
}

// ---------------------------------------------------------------------------

/// H(u, c) = {x : <x,u> = c} with the body-side halfspace <x,u> <= c.
struct Hyperplane {
    Vec normal;     // unit
    double offset;  // c

    Hyperplane() = default;
    Hyperplane(Vec u, double c, const Tolerance& tol = {})
        : normal(std::move(u)), offset(c) {
        const double n = norm(normal);
        if (std::abs(n - 1.0) > 1e3 * tol.unit)
            for (double& x : normal) x /= n;
    }
};

struct Facet {
    Vec normal;    // outward unit normal
    double offset; // <v, normal> = offset for incident vertices
    std::vector<int> vertex_ids;
};

struct Edge {
    int v0 = -1, v1 = -1; // vertex indices
    int f0 = -1, f1 = -1; // adjacent facet indices (d <= 3)
};

/// Convex polytope in vertex + facet-inequality representation.
/// `boundary_simplices` is a simplicial decomposition of the boundary
/// (d vertex ids per entry) used for volume and distance computations;
/// `edges` holds the 1-faces for d <= 3.
struct Polytope {
    int dim = 0;
    std::vector<Vec> vertices;
    std::vector<Facet> facets;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> boundary_simplices;
    std::vector<int> simplex_facet; // facet index of each boundary simplex

    Vec centroid() const {
        Vec c(dim, 0.0);
        for (const Vec& v : vertices)
            for (int i = 0; i < dim; ++i) c[i] += v[i];
        for (int i = 0; i < dim; ++i) c[i] /= static_cast<double>(vertices.size());
        return c;
    }
};

inline bool contains(const Polytope& P, const double* x, const Tolerance& tol = {}) {
    for (const Facet& f : P.facets)
        if (dot(f.normal.data(), x, P.dim) > f.offset + tol.geom) return false;
    return true;
}

inline bool contains(const Polytope& P, const Vec& x, const Tolerance& tol = {}) {
    return contains(P, x.data(), tol);
}

// ---------------------------------------------------------------------------
// convex hull, d = 2: monotone chain

namespace detail {

inline Polytope hull_2d(const double* pts, std::size_t n, const Tolerance& tol) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[2 * a] != pts[2 * b]) return pts[2 * a] < pts[2 * b];
        return pts[2 * a + 1] < pts[2 * b + 1];
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](int a, int b) {
                              return std::abs(pts[2 * a] - pts[2 * b]) <= tol.geom &&
                                     std::abs(pts[2 * a + 1] - pts[2 * b + 1]) <= tol.geom;
                          }),
              idx.end());
    const std::size_t m = idx.size();
    if (m < 3) throw DegenerateInput("hull_2d: fewer than 3 distinct points");

    auto cross = [&](int o, int a, int b) {
        return (pts[2 * a] - pts[2 * o]) * (pts[2 * b + 1] - pts[2 * o + 1]) -
               (pts[2 * a + 1] - pts[2 * o + 1]) * (pts[2 * b] - pts[2 * o]);
    };

    std::vector<int> h(2 * m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) { // lower chain
        while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = m - 1; i-- > 0;) { // upper chain
        while (k >= lower && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1); // last point equals first
    if (h.size() < 3) throw DegenerateInput("hull_2d: input is collinear");

    Polytope P;
    P.dim = 2;
    const int nv = static_cast<int>(h.size());
    P.vertices.reserve(nv);
    for (int i : h) P.vertices.push_back({pts[2 * i], pts[2 * i + 1]});
    for (int i = 0; i < nv; ++i) {
        const int j = (i + 1) % nv;
        const double ex = P.vertices[j][0] - P.vertices[i][0];
        const double ey = P.vertices[j][1] - P.vertices[i][1];
        const double len = std::hypot(ex, ey);
        Facet f;
        f.normal = {ey / len, -ex / len}; // outward for CCW order
        f.offset = f.normal[0] * P.vertices[i][0] + f.normal[1] * P.vertices[i][1];
        f.vertex_ids = {i, j};
        P.facets.push_back(std::move(f));
        P.edges.push_back({i, j, i, i});
        P.boundary_simplices.push_back({i, j});
        P.simplex_facet.push_back(i);
    }
    return P;
}

// ---------------------------------------------------------------------------
// convex hull, d >= 3: incremental beneath-beyond with a simplicial facet graph

struct HullFacet {
    std::vector<int> verts;  // d point indices
    std::vector<int> nbrs;   // nbrs[i] shares the ridge opposite verts[i]
    Vec normal;
    double offset = 0.0;
    bool alive = true;
    int group = -1;          // coplanar-merge group, assigned at the end
};

/// Component of v orthogonal to the orthonormal rows of `basis`.
inline Vec residual(const Vec& v, const std::vector<Vec>& basis) {
    Vec r = v;
    for (const Vec& b : basis) {
        const double p = dot(r, b);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p * b[i];
    }
    return r;
}

class IncrementalHull {
public:
    IncrementalHull(const double* pts, std::size_t n, int d, const Tolerance& tol)
        : pts_(pts), n_(n), d_(d), tol_(tol) {}

    Polytope run() {
        build_initial_simplex();
        for (std::size_t i = 0; i < n_; ++i) {
            if (in_simplex_[i]) continue;
            insert(static_cast<int>(i));
        }
        return finish();
    }

private:
    const double* pts_;
    std::size_t n_;
    int d_;
    Tolerance tol_;
    std::vector<HullFacet> facets_;
    Vec interior_;
    std::vector<char> in_simplex_;

    const double* pt(int i) const { return pts_ + static_cast<std::size_t>(i) * d_; }

    Vec point(int i) const { return Vec(pt(i), pt(i) + d_); }

    /// Outward unit normal and offset for the facet spanned by `verts`.
    std::pair<Vec, double> facet_plane(const std::vector<int>& verts) const {
        std::vector<Vec> basis;
        const Vec v0 = point(verts[0]);
        for (int k = 1; k < d_; ++k) {
            Vec e = point(verts[k]);
            for (int i = 0; i < d_; ++i) e[i] -= v0[i];
            Vec r = residual(e, basis);
            const double rn = norm(r);
            if (rn < tol_.geom)
                throw DegenerateInput("hull: degenerate facet");
            for (double& x : r) x /= rn;
            basis.push_back(std::move(r));
        }
        Vec probe = v0;
        for (int i = 0; i < d_; ++i) probe[i] -= interior_[i];
        Vec nrm = residual(probe, basis);
        const double nn = norm(nrm);
        if (nn < tol_.geom)
            throw DegenerateInput("hull: interior point on facet plane");
        for (double& x : nrm) x /= nn;
        return {std::move(nrm), dot(nrm.data(), pt(verts[0]), d_)};
    }

    void build_initial_simplex() {
        in_simplex_.assign(n_, 0);
        std::vector<int> chosen;
        std::vector<Vec> basis;
        chosen.push_back(0);
        Vec origin = point(0);
        while (static_cast<int>(chosen.size()) < d_ + 1) {
            int best = -1;
            double best_r = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                Vec e = point(static_cast<int>(i));
                for (int k = 0; k < d_; ++k) e[k] -= origin[k];
                const double r = norm(residual(e, basis));
                if (r > best_r) {
                    best_r = r;
                    best = static_cast<int>(i);
                }
            }
            if (best < 0 || best_r <= tol_.geom)
                throw DegenerateInput("hull: points are not full-dimensional");
            Vec e = point(best);
            for (int k = 0; k < d_; ++k) e[k] -= origin[k];
            Vec r = residual(e, basis);
            const double rn = norm(r);
            for (double& x : r) x /= rn;
            basis.push_back(std::move(r));
            chosen.push_back(best);
        }
        for (int i : chosen) in_simplex_[i] = 1;

        interior_.assign(d_, 0.0);
        for (int i : chosen)
            for (int k = 0; k < d_; ++k) interior_[k] += pt(i)[k];
        for (int k = 0; k < d_; ++k) interior_[k] /= static_cast<double>(d_ + 1);

        // one facet per omitted vertex
        for (int omit = 0; omit <= d_; ++omit) {
            HullFacet f;
            for (int j = 0; j <= d_; ++j)
                if (j != omit) f.verts.push_back(chosen[j]);
            auto [nrm, off] = facet_plane(f.verts);
            f.normal = std::move(nrm);
            f.offset = off;
            facets_.push_back(std::move(f));
        }
        // adjacency: facets omit distinct vertices; facet a and b share the
        // ridge missing both omitted vertices
        for (int a = 0; a <= d_; ++a) {
            facets_[a].nbrs.resize(d_);
            for (int slot = 0; slot < d_; ++slot) {
                const int opp = facets_[a].verts[slot];
                // neighbor is the facet that omits `opp`
                for (int b = 0; b <= d_; ++b) {
                    if (b == a) continue;
                    bool omits = std::find(facets_[b].verts.begin(), facets_[b].verts.end(),
                                           opp) == facets_[b].verts.end();
                    if (omits) {
                        facets_[a].nbrs[slot] = b;
                        break;
                    }
                }
            }
        }
    }

    void insert(int p) {
        const double* x = pt(p);
        std::vector<int> visible;
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!facets_[f].alive) continue;
            if (dot(facets_[f].normal.data(), x, d_) - facets_[f].offset > tol_.geom)
                visible.push_back(static_cast<int>(f));
        }
        if (visible.empty()) return; // inside current hull

        std::vector<char> is_visible(facets_.size(), 0);
        for (int f : visible) is_visible[f] = 1;

        struct NewFacet {
            int id;
            std::vector<int> ridge; // sorted, without p
        };
        std::vector<NewFacet> fresh;
        for (int f : visible) {
            for (int slot = 0; slot < d_; ++slot) {
                const int nb = facets_[f].nbrs[slot];
                if (is_visible[nb]) continue;
                // horizon ridge: facet f minus verts[slot]
                HullFacet nf;
                for (int j = 0; j < d_; ++j)
                    if (j != slot) nf.verts.push_back(facets_[f].verts[j]);
                std::vector<int> ridge = nf.verts;
                std::sort(ridge.begin(), ridge.end());
                nf.verts.push_back(p);
                auto [nrm, off] = facet_plane(nf.verts);
                nf.normal = std::move(nrm);
                nf.offset = off;
                nf.nbrs.assign(d_, -1);
                // slot of p is d_-1 after push_back ordering below; we fill
                // neighbor links by ridge matching instead of slot arithmetic
                const int id = static_cast<int>(facets_.size());
                // outward side of the old neighbor now borders the new facet
                for (int s2 = 0; s2 < d_; ++s2)
                    if (facets_[nb].nbrs[s2] == f) facets_[nb].nbrs[s2] = id;
                // new facet's ridge without p is shared with nb: that ridge is
                // opposite vertex p, stored last
                nf.nbrs[d_ - 1] = nb;
                facets_.push_back(std::move(nf));
                fresh.push_back({id, std::move(ridge)});
            }
        }
        for (int f : visible) facets_[f].alive = false;

        // link fresh facets along ridges containing p
        std::map<std::vector<int>, std::pair<int, int>> open; // ridge -> (facet, slot)
        for (const NewFacet& nf : fresh) {
            HullFacet& F = facets_[nf.id];
            for (int slot = 0; slot + 1 < d_; ++slot) {
                // ridge omitting F.verts[slot] (contains p)
                std::vector<int> key;
                for (int j = 0; j < d_; ++j)
                    if (j != slot) key.push_back(F.verts[j]);
                std::sort(key.begin(), key.end());
                auto it = open.find(key);
                if (it == open.end()) {
                    open.emplace(std::move(key), std::make_pair(nf.id, slot));
                } else {
                    F.nbrs[slot] = it->second.first;
                    facets_[it->second.first].nbrs[it->second.second] = nf.id;
                    open.erase(it);
                }
            }
        }
        if (!open.empty())
            throw DegenerateInput("hull: inconsistent horizon (near-degenerate input)");
    }

    Polytope finish() {
        // coplanar merge: flood fill over adjacent facets with matching planes
        constexpr double kMergeAngle = 1e-7;
        constexpr double kMergeOffset = 1e-7;
        int ngroups = 0;
        for (std::size_t f0 = 0; f0 < facets_.size(); ++f0) {
            if (!facets_[f0].alive || facets_[f0].group >= 0) continue;
            const int g = ngroups++;
            std::vector<int> stack{static_cast<int>(f0)};
            facets_[f0].group = g;
            while (!stack.empty()) {
                const int f = stack.back();
                stack.pop_back();
                for (int nb : facets_[f].nbrs) {
                    if (!facets_[nb].alive || facets_[nb].group >= 0) continue;
                    if (std::abs(dot(facets_[f].normal, facets_[nb].normal) - 1.0) < kMergeAngle &&
                        std::abs(facets_[f].offset - facets_[nb].offset) < kMergeOffset) {
                        facets_[nb].group = g;
                        stack.push_back(nb);
                    }
                }
            }
        }

        Polytope P;
        P.dim = d_;
        // vertex relabeling
        std::map<int, int> vmap;
        for (const HullFacet& f : facets_) {
            if (!f.alive) continue;
            for (int v : f.verts)
                if (!vmap.count(v)) {
                    const int id = static_cast<int>(vmap.size());
                    vmap[v] = id;
                }
        }
        P.vertices.resize(vmap.size());
        for (const auto& [orig, id] : vmap) P.vertices[id] = point(orig);

        P.facets.resize(ngroups);
        std::vector<std::vector<char>> seen(ngroups,
                                            std::vector<char>(vmap.size(), 0));
        for (const HullFacet& f : facets_) {
            if (!f.alive) continue;
            Facet& out = P.facets[f.group];
            if (out.normal.empty()) {
                out.normal = f.normal;
                out.offset = f.offset;
            }
            std::vector<int> tri;
            for (int v : f.verts) {
                const int id = vmap[v];
                tri.push_back(id);
                if (!seen[f.group][id]) {
                    seen[f.group][id] = 1;
                    out.vertex_ids.push_back(id);
                }
            }
            P.boundary_simplices.push_back(std::move(tri));
            P.simplex_facet.push_back(f.group);
        }
        for (Facet& f : P.facets) std::sort(f.vertex_ids.begin(), f.vertex_ids.end());

        if (d_ == 3) {
            // edges are ridges between distinct merge groups
            std::map<std::pair<int, int>, std::pair<int, int>> edge_map;
            for (const HullFacet& f : facets_) {
                if (!f.alive) continue;
                for (int slot = 0; slot < d_; ++slot) {
                    const HullFacet& nb = facets_[f.nbrs[slot]];
                    if (nb.group == f.group) continue;
                    std::vector<int> ridge;
                    for (int j = 0; j < d_; ++j)
                        if (j != slot) ridge.push_back(vmap[f.verts[j]]);
                    std::sort(ridge.begin(), ridge.end());
                    const auto key = std::make_pair(ridge[0], ridge[1]);
                    const auto groups = std::minmax(f.group, nb.group);
                    edge_map[key] = {groups.first, groups.second};
                }
            }
            for (const auto& [vs, fs] : edge_map)
                P.edges.push_back({vs.first, vs.second, fs.first, fs.second});
        }
        return P;
    }
};

}  // namespace detail

/// Convex hull of `n` points of dimension `d` (row-major).
/// Throws DegenerateInput when the points are not full-dimensional.
inline Polytope convex_hull(const double* pts, std::size_t n, int d,
                            const Tolerance& tol = {}) {
    if (d < 2) throw DegenerateInput("convex_hull: dimension must be >= 2");
    if (n < static_cast<std::size_t>(d) + 1)
        throw DegenerateInput("convex_hull: need at least d+1 points");
    if (d == 2) return detail::hull_2d(pts, n, tol);
    return detail::IncrementalHull(pts, n, d, tol).run();
}

inline Polytope convex_hull(const std::vector<Vec>& points, const Tolerance& tol = {}) {
    if (points.empty()) throw DegenerateInput("convex_hull: no points");
    const int d = static_cast<int>(points[0].size());
    std::vector<double> flat;
    flat.reserve(points.size() * d);
    for (const Vec& p : points) flat.insert(flat.end(), p.begin(), p.end());
    return convex_hull(flat.data(), points.size(), d, tol);
}

// ---------------------------------------------------------------------------
// halfspace intersection by polar duality

enum class HsiStatus { Bounded, Unbounded, Degenerate };

struct HsiResult {
    HsiStatus status = HsiStatus::Unbounded;
    Polytope poly;
    std::vector<int> active; // input halfspace indices realized as facets
    bool bounded() const { return status == HsiStatus::Bounded; }
};

/// Core of the duality route: hull the dual points u_i / c_i (witness already
/// at the origin) and read primal vertices off the dual facets. `shift` is
/// added back to every primal vertex.
inline HsiResult intersect_from_duals(const double* duals, std::size_t n, int d,
                                      const Vec& shift, const Tolerance& tol = {},
                                      bool want_active = false) {
    HsiResult res;
    Polytope dual_hull;
    try {
        dual_hull = convex_hull(duals, n, d, tol);
    } catch (const DegenerateInput&) {
        // rank-deficient dual cloud: the primal intersection has a free
        // direction
        res.status = HsiStatus::Unbounded;
        return res;
    }
    for (const Facet& f : dual_hull.facets) {
        if (f.offset <= tol.geom) {
            res.status = HsiStatus::Unbounded;
            return res;
        }
    }

    std::vector<Vec> primal_vertices;
    primal_vertices.reserve(dual_hull.facets.size());
    for (const Facet& f : dual_hull.facets) {
        Vec v(d);
        for (int k = 0; k < d; ++k) v[k] = f.normal[k] / f.offset + shift[k];
        primal_vertices.push_back(std::move(v));
    }
    try {
        res.poly = convex_hull(primal_vertices, tol);
    } catch (const DegenerateInput&) {
        res.status = HsiStatus::Degenerate;
        return res;
    }
    res.status = HsiStatus::Bounded;

    if (!want_active) return res;

    // facets of the intersection correspond to dual hull vertices; recover
    // the input indices by nearest-dual-point lookup
    res.active.reserve(dual_hull.vertices.size());
    for (const Vec& y : dual_hull.vertices) {
        int best = -1;
        double best_d2 = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double t = duals[i * d + k] - y[k];
                d2 += t * t;
            }
            if (d2 < best_d2) {
                best_d2 = d2;
                best = static_cast<int>(i);
            }
        }
        res.active.push_back(best);
    }
    return res;
}

/// Intersection of halfspaces <x, u_i> <= c_i. The witness must strictly
/// satisfy every constraint; the computation translates the witness to the
/// origin and delegates to intersect_from_duals.
inline HsiResult halfspace_intersection(const std::vector<Hyperplane>& halfspaces,
                                        const Vec& witness,
                                        const Tolerance& tol = {},
                                        bool want_active = false) {
    const int d = static_cast<int>(witness.size());
    const std::size_t n = halfspaces.size();
    std::vector<double> duals(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = halfspaces[i].offset - dot(halfspaces[i].normal, witness);
        if (c <= tol.geom)
            throw WitnessViolation("halfspace_intersection: witness not strictly interior");
        for (int k = 0; k < d; ++k) duals[i * d + k] = halfspaces[i].normal[k] / c;
    }
    return intersect_from_duals(duals.data(), n, d, witness, tol, want_active);
}

// ---------------------------------------------------------------------------
// functionals

/// Surface area of the unit sphere S^{d-1}.
inline double sphere_surface(int d) {
    return 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
}

/// Monte Carlo estimate of (2/sigma(S^{d-1})) * integral of h over S^{d-1},
/// i.e. of the mean width of the body with support function `h_eval`.
/// Deterministic for a fixed quadrature seed.
template <class SupportFn>
std::pair<double, double> mean_width_quadrature(SupportFn&& h_eval, int d,
                                                long budget,
                                                std::uint64_t seed = 0x5eedULL) {
    if (budget < 1000) throw GeometryError("mean_width_quadrature: budget < 1000");
    RngStream rng(seed, 0);
    Vec u(d);
    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < budget; ++i) {
        sample_direction(rng, d, u.data());
        const double v = 2.0 * h_eval(u);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / static_cast<double>(budget);
    const double var =
        std::max(0.0, sum2 / static_cast<double>(budget) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(budget))};
}

/// Mean width. d=2: perimeter / pi (Cauchy). d=3: sum over edges of
/// length * exterior-dihedral / (4 pi). d>=4: spherical quadrature over the
/// vertex support function.
inline double mean_width(const Polytope& P, long quad_budget = 200000) {
    if (P.dim == 2) {
        double per = 0.0;
        for (const Facet& f : P.facets)
            per += dist(P.vertices[f.vertex_ids[0]], P.vertices[f.vertex_ids[1]]);
        return per / M_PI;
    }
    if (P.dim == 3) {
        double acc = 0.0;
        for (const Edge& e : P.edges) {
            const double len = dist(P.vertices[e.v0], P.vertices[e.v1]);
            double c = dot(P.facets[e.f0].normal, P.facets[e.f1].normal);
            c = std::clamp(c, -1.0, 1.0);
            acc += len * std::acos(c); // exterior angle = angle between normals
        }
        return acc / (4.0 * M_PI);
    }
    auto h = [&P](const Vec& u) {
        double best = -std::numeric_limits<double>::max();
        for (const Vec& v : P.vertices) best = std::max(best, dot(v, u));
        return best;
    };
    return mean_width_quadrature(h, P.dim, quad_budget).first;
}

/// Lebesgue volume via signed cone decomposition over the boundary simplices.
inline double volume(const Polytope& P) {
    const int d = P.dim;
    const Vec c = P.centroid();
    std::vector<double> m(static_cast<std::size_t>(d) * d);
    double f = 1.0;
    for (int i = 2; i <= d; ++i) f *= i;
    double vol = 0.0;
    for (const std::vector<int>& s : P.boundary_simplices) {
        for (int r = 0; r < d; ++r)
            for (int k = 0; k < d; ++k) m[r * d + k] = P.vertices[s[r]][k] - c[k];
        std::vector<double> tmp = m;
        vol += std::abs(det_inplace(tmp, d));
    }
    return vol / f;
}

}  // namespace rcp
