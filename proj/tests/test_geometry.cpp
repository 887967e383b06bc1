#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "rcp/geometry.hpp"

using namespace rcp;

namespace {

std::vector<Vec> random_points(RngStream& rng, int n, int d, double scale = 1.0) {
    std::vector<Vec> pts(n, Vec(d));
    for (auto& p : pts)
        for (int k = 0; k < d; ++k) p[k] = scale * (2.0 * rng.uniform() - 1.0);
    return pts;
}

}  // namespace

TEST_CASE("convex hull drops interior points and keeps extremes") {
    std::vector<Vec> pts = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}};
    Polytope P = convex_hull(pts);
    REQUIRE(P.vertices.size() == 4);
    REQUIRE(P.facets.size() == 4);
    for (const Vec& v : P.vertices) REQUIRE(v[0] * (1 - v[0]) + v[1] * (1 - v[1]) == 0.0);
}

TEST_CASE("hull of a 3-simplex has 4 facets and 6 edges") {
    std::vector<Vec> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Polytope P = convex_hull(pts);
    REQUIRE(P.vertices.size() == 4);
    REQUIRE(P.facets.size() == 4);
    REQUIRE(P.edges.size() == 6);
}

TEST_CASE("collinear points are rejected") {
    std::vector<Vec> pts = {{0, 0}, {1, 1}, {2, 2}};
    REQUIRE_THROWS_AS(convex_hull(pts), DegenerateInput);
}

TEST_CASE("halfspace intersection of an axis box") {
    std::vector<Hyperplane> hs = {Hyperplane({1, 0}, 1), Hyperplane({-1, 0}, 1),
                                  Hyperplane({0, 1}, 1), Hyperplane({0, -1}, 1)};
    HsiResult r = halfspace_intersection(hs, Vec{0, 0});
    REQUIRE(r.status == HsiStatus::Bounded);
    REQUIRE(r.poly.vertices.size() == 4);
    for (const Vec& v : r.poly.vertices) {
        REQUIRE(std::abs(v[0]) == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(std::abs(v[1]) == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("two halfplanes never bound") {
    std::vector<Hyperplane> hs = {Hyperplane({1, 0}, 1), Hyperplane({0, 1}, 1)};
    HsiResult r = halfspace_intersection(hs, Vec{0, 0});
    REQUIRE(r.status == HsiStatus::Unbounded);
}

TEST_CASE("facet halfspaces of a regular simplex reproduce its vertices") {
    Polytope S = convex_hull(std::vector<Vec>{
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}});
    std::vector<Hyperplane> hs;
    for (const Facet& f : S.facets) hs.push_back(Hyperplane(f.normal, f.offset));
    Vec c = S.centroid();
    HsiResult r = halfspace_intersection(hs, c);
    REQUIRE(r.status == HsiStatus::Bounded);
    REQUIRE(r.poly.vertices.size() == 4);
    for (const Vec& v : r.poly.vertices) {
        double best = 1e300;
        for (const Vec& w : S.vertices) best = std::min(best, dist(v, w));
        REQUIRE(best < 1e-9);
    }
}

TEST_CASE("witness violation is detected") {
    std::vector<Hyperplane> hs = {Hyperplane({1, 0}, 1), Hyperplane({-1, 0}, 1),
                                  Hyperplane({0, 1}, 1), Hyperplane({0, -1}, 1)};
    REQUIRE_THROWS_AS(halfspace_intersection(hs, Vec{2, 0}), WitnessViolation);
}

TEST_CASE("mean width closed forms") {
    Polytope sq = convex_hull(std::vector<Vec>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    REQUIRE(mean_width(sq) == Catch::Approx(4.0 / M_PI).epsilon(1e-12));

    std::vector<Vec> cube;
    for (int m = 0; m < 8; ++m)
        cube.push_back({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
    Polytope C = convex_hull(cube);
    REQUIRE(C.edges.size() == 12);
    REQUIRE(mean_width(C) == Catch::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("quadrature path: segment in d=3 has width L/2") {
    const double L = 2.7;
    auto h = [&](const Vec& u) { return 0.5 * L * std::abs(u[0]); };
    auto [w, se] = mean_width_quadrature(h, 3, 400000);
    REQUIRE(std::abs(w - L / 2.0) < 4.0 * se);
}

TEST_CASE("quadrature matches constants for balls and the square") {
    auto hb = [](const Vec&) { return 1.0; };
    auto [w1, se1] = mean_width_quadrature(hb, 4, 50000);
    REQUIRE(w1 == Catch::Approx(2.0).margin(1e-12));

    const double r = 0.35;
    auto hr = [&](const Vec&) { return r; };
    auto [w2, se2] = mean_width_quadrature(hr, 3, 50000);
    REQUIRE(w2 == Catch::Approx(2.0 * r).margin(1e-12));

    auto hs = [](const Vec& u) {
        return std::max(0.0, u[0]) + std::max(0.0, u[1]);
    };
    auto [w3, se3] = mean_width_quadrature(hs, 2, 400000);
    REQUIRE(std::abs(w3 - 4.0 / M_PI) < 4.0 * se3);
}

TEST_CASE("volume closed forms") {
    std::vector<Vec> cube;
    for (int m = 0; m < 8; ++m)
        cube.push_back({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
    REQUIRE(volume(convex_hull(cube)) == Catch::Approx(1.0).epsilon(1e-12));

    Polytope S3 = convex_hull(std::vector<Vec>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    REQUIRE(volume(S3) == Catch::Approx(1.0 / 6.0).epsilon(1e-12));

    Polytope sq = convex_hull(std::vector<Vec>{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    REQUIRE(volume(sq) == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("containment predicate, closed convention") {
    Polytope sq = convex_hull(std::vector<Vec>{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    REQUIRE(contains(sq, Vec{0, 0}));
    REQUIRE_FALSE(contains(sq, Vec{2, 0}));
    REQUIRE(contains(sq, Vec{1, 0}));
}

TEST_CASE("hull idempotence on random instances") {
    for (int it = 0; it < 30; ++it) {
        RngStream rng(41, it);
        const int d = 2 + it % 2;
        Polytope P = convex_hull(random_points(rng, 25, d));
        Polytope Q = convex_hull(P.vertices);
        REQUIRE(Q.vertices.size() == P.vertices.size());
        for (const Vec& v : Q.vertices) {
            double best = 1e300;
            for (const Vec& w : P.vertices) best = std::min(best, dist(v, w));
            REQUIRE(best < 1e-9);
        }
    }
}

TEST_CASE("duality round-trip on random instances") {
    for (int it = 0; it < 30; ++it) {
        RngStream rng(42, it);
        const int d = 2 + it % 2;
        Polytope P = convex_hull(random_points(rng, 20, d));
        std::vector<Hyperplane> hs;
        for (const Facet& f : P.facets) hs.push_back(Hyperplane(f.normal, f.offset));
        HsiResult r = halfspace_intersection(hs, P.centroid());
        REQUIRE(r.status == HsiStatus::Bounded);
        REQUIRE(r.poly.vertices.size() == P.vertices.size());
        for (const Vec& v : r.poly.vertices) {
            double best = 1e300;
            for (const Vec& w : P.vertices) best = std::min(best, dist(v, w));
            REQUIRE(best < 1e-8);
        }
    }
}

TEST_CASE("Euler relation on random d=3 hulls") {
    for (int it = 0; it < 30; ++it) {
        RngStream rng(43, it);
        Polytope P = convex_hull(random_points(rng, 30, 3));
        const long f0 = static_cast<long>(P.vertices.size());
        const long f1 = static_cast<long>(P.edges.size());
        const long f2 = static_cast<long>(P.facets.size());
        REQUIRE(f0 - f1 + f2 == 2);
    }
}

TEST_CASE("edge formula agrees with quadrature on random d=3 hulls") {
    for (int it = 0; it < 15; ++it) {
        RngStream rng(44, it);
        Polytope P = convex_hull(random_points(rng, 20, 3));
        const double w = mean_width(P);
        auto h = [&](const Vec& u) {
            double best = -1e300;
            for (const Vec& v : P.vertices) best = std::max(best, dot(v, u));
            return best;
        };
        auto [wq, se] = mean_width_quadrature(h, 3, 200000, 900 + it);
        REQUIRE(std::abs(w - wq) < 4.0 * se);
    }
}

TEST_CASE("volume agrees with rejection oracle on random instances") {
    for (int it = 0; it < 20; ++it) {
        RngStream rng(45, it);
        const int d = 2 + it % 2;
        Polytope P = convex_hull(random_points(rng, 25, d));
        RngStream orng(46, it);
        const double vo = oracle::volume_rejection(P, 400000, orng);
        REQUIRE(volume(P) == Catch::Approx(vo).epsilon(0.01));
    }
}

TEST_CASE("mean width is translation invariant and monotone under inclusion") {
    RngStream rng(47, 0);
    Polytope P = convex_hull(random_points(rng, 20, 3));
    std::vector<Vec> shifted = P.vertices;
    for (Vec& v : shifted) {
        v[0] += 3.5;
        v[1] -= 1.25;
        v[2] += 0.75;
    }
    Polytope Q = convex_hull(shifted);
    REQUIRE(mean_width(Q) == Catch::Approx(mean_width(P)).epsilon(1e-12));

    // P grown by extra outside points contains P
    std::vector<Vec> grown = P.vertices;
    for (const Vec& v : random_points(rng, 10, 3, 2.0)) grown.push_back(v);
    Polytope G = convex_hull(grown);
    REQUIRE(mean_width(P) <= mean_width(G) + 1e-9);
}
