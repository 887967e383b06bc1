#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

#include "rcp/body.hpp"
#include "rcp/sampling.hpp"

using namespace rcp;

TEST_CASE("support function values") {
    Body ball = make_ball(2);
    Vec u = {std::sqrt(0.5), std::sqrt(0.5)};
    REQUIRE(ball.support(u) == Catch::Approx(1.0).margin(1e-12));

    Body sq = make_poly_body({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}, /*recenter=*/false);
    REQUIRE(sq.support(Vec{1, 0}) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(sq.support(u) == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("parallel-body support is support plus one") {
    Body ball = make_ball(2);
    REQUIRE(ball.support_parallel(Vec{0, 1}) == Catch::Approx(2.0).margin(1e-12));
    Body sq = make_poly_body({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}, false);
    REQUIRE(sq.support_parallel(Vec{1, 0}) == Catch::Approx(2.0).margin(1e-12));
    RngStream rng(1, 0);
    Body tri = make_body("triangle", 2);
    Vec u(2);
    for (int i = 0; i < 50; ++i) {
        sample_direction(rng, 2, u.data());
        REQUIRE(tri.support_parallel(u) - tri.support(u) ==
                Catch::Approx(1.0).margin(1e-15));
    }
}

TEST_CASE("polar of the centered square is the cross-polytope") {
    Polytope sq = convex_hull(std::vector<Vec>{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    Polytope cp = polar_polytope(sq);
    REQUIRE(cp.vertices.size() == 4);
    for (const Vec& v : cp.vertices) {
        REQUIRE(norm(v) == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(std::min(std::abs(v[0]), std::abs(v[1])) ==
                Catch::Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("polar of a regular k-gon is the rotated inradius-1 k-gon") {
    const int k = 7;
    Body P = make_regular_polygon(k);
    Polytope polar = P.polar;
    REQUIRE(polar.vertices.size() == static_cast<std::size_t>(k));
    const double rho = std::cos(M_PI / k); // inradius of the primal
    // polar vertices: circumradius 1/rho, directions offset by pi/k
    for (const Vec& v : polar.vertices) {
        REQUIRE(norm(v) == Catch::Approx(1.0 / rho).margin(1e-9));
        double ang = std::atan2(v[1], v[0]);
        double frac = ang / (2.0 * M_PI / k); // should be half-integer offsets
        double nearest = std::round(frac - 0.5) + 0.5;
        REQUIRE(frac == Catch::Approx(nearest).margin(1e-9));
    }
    // inradius of the polar is 1
    double inr = 1e300;
    for (const Facet& f : polar.facets) inr = std::min(inr, f.offset);
    REQUIRE(inr == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("polar is an involution") {
    Polytope S = convex_hull(
        std::vector<Vec>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}});
    Polytope back = polar_polytope(polar_polytope(S));
    REQUIRE(back.vertices.size() == S.vertices.size());
    for (const Vec& v : back.vertices) {
        double best = 1e300;
        for (const Vec& w : S.vertices) best = std::min(best, dist(v, w));
        REQUIRE(best < 1e-9);
    }
}

TEST_CASE("polar pair incidence") {
    Body tri = make_body("triangle", 2);
    for (std::size_t fi = 0; fi < tri.poly.facets.size(); ++fi) {
        const Facet& f = tri.poly.facets[fi];
        // the polar vertex u_F / c_F pairs with f: incident primal vertices
        Vec w = f.normal;
        for (double& c : w) c /= f.offset;
        for (int vid : f.vertex_ids)
            REQUIRE(dot(tri.poly.vertices[vid], w) == Catch::Approx(1.0).margin(1e-9));
        // and every primal vertex satisfies <v, w> <= 1
        for (const Vec& v : tri.poly.vertices) REQUIRE(dot(v, w) <= 1.0 + 1e-9);
    }
}

TEST_CASE("phi and phi_inv") {
    Hyperplane H = phi(Vec{2, 0});
    REQUIRE(H.normal[0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(H.offset == Catch::Approx(0.5).margin(1e-12));

    Vec x = phi_inv(Hyperplane({0, 1}, 4));
    REQUIRE(x[0] == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(x[1] == Catch::Approx(0.25).margin(1e-12));

    RngStream rng(2, 0);
    for (int i = 0; i < 100; ++i) {
        Vec y = {4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0};
        if (norm(y) < 1e-3) continue;
        Vec back = phi_inv(phi(y));
        REQUIRE(dist(back, y) < 1e-12);
    }
    REQUIRE_THROWS_AS(phi(Vec{0, 0}), OriginArgument);
    REQUIRE_THROWS_AS(phi_inv(Hyperplane({1, 0}, 0.0)), NonpositiveOffset);
}

TEST_CASE("K_1^* membership for the unit ball") {
    Body ball = make_ball(2);
    REQUIRE(in_K1_star(ball, Vec{0.4, 0.0}));
    REQUIRE_FALSE(in_K1_star(ball, Vec{0.6, 0.0}));
    REQUIRE(in_K1_star(ball, Vec{0.0, 0.0}));
}

TEST_CASE("X_K membership for the unit ball is the annulus") {
    Body ball = make_ball(2);
    REQUIRE(in_X_K(ball, Vec{0.75, 0.0}));
    REQUIRE_FALSE(in_X_K(ball, Vec{1.2, 0.0}));
    REQUIRE_FALSE(in_X_K(ball, Vec{0.3, 0.0}));
}

TEST_CASE("mu_K^* samples always land in X_K") {
    for (const char* spec : {"ball", "triangle"}) {
        Body K = make_body(spec, 2);
        RngStream rng(3, 0);
        for (int i = 0; i < 10000; ++i) {
            Vec x = sample_mu_K_star(rng, K);
            REQUIRE(in_X_K(K, x));
        }
    }
}

TEST_CASE("phi maps X_K into H_K") {
    Body K = make_body("square", 2);
    RngStream rng(4, 0);
    int tested = 0;
    while (tested < 10000) {
        Vec x = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        if (!in_X_K(K, x) || norm(x) < 1e-6) continue;
        Hyperplane H = phi(x);
        const double h = K.support(H.normal);
        REQUIRE(H.offset >= h - 1e-9);
        REQUIRE(H.offset <= h + 1.0 + 1e-9);
        ++tested;
    }
}

TEST_CASE("support homogeneity via support_raw") {
    Body K = make_body("triangle", 2);
    RngStream rng(5, 0);
    Vec u(2);
    for (int i = 0; i < 100; ++i) {
        sample_direction(rng, 2, u.data());
        const double s = 0.1 + 3.0 * rng.uniform();
        Vec su = u;
        for (double& c : su) c *= s;
        REQUIRE(support_raw(K, su) == Catch::Approx(s * K.support(u)).epsilon(1e-12));
    }
}

TEST_CASE("support_K1_star certified value for the ball") {
    Body ball = make_ball(2, 1.5);
    Vec nu = {1.0, 0.0};
    REQUIRE(support_K1_star(ball, nu) == Catch::Approx(1.0 / 2.5).epsilon(1e-8));
}

TEST_CASE("standard bodies have the documented exact functionals") {
    Body tri = make_body("triangle", 2);
    REQUIRE(tri.mean_width_exact() == Catch::Approx(3.0 * std::sqrt(3.0) / M_PI));
    REQUIRE(tri.volume_exact() ==
            Catch::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-12));

    Body cube = make_body("cube", 3);
    REQUIRE(cube.volume_exact() == Catch::Approx(8.0).epsilon(1e-12));
    REQUIRE(cube.mean_width_exact() == Catch::Approx(3.0).epsilon(1e-12));

    Body ball = make_ball(3, 2.0);
    REQUIRE(ball.mean_width_exact() == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(ball.volume_exact() ==
            Catch::Approx(4.0 / 3.0 * M_PI * 8.0).epsilon(1e-12));
}

TEST_CASE("vertex-list file round trip") {
    const std::string path = "body_roundtrip.txt";
    {
        std::ofstream out(path);
        out << "2 4\n-1 -1\n1 -1\n-1 1\n1 1\n";
    }
    Body K = load_body_file(path);
    REQUIRE(K.dim == 2);
    REQUIRE(K.poly.vertices.size() == 4);
    REQUIRE(K.volume_exact() == Catch::Approx(4.0).epsilon(1e-12));
    Body viaspec = make_body("file:" + path, 2);
    REQUIRE(viaspec.poly.vertices.size() == 4);
    std::remove(path.c_str());
}

TEST_CASE("body spec grammar rejects unknowns") {
    REQUIRE_THROWS_AS(make_body("dodecahedron", 3), GeometryError);
    REQUIRE(make_body("polygon:5", 2).poly.vertices.size() == 5);
    REQUIRE(make_body("simplex", 3).poly.vertices.size() == 4);
}
