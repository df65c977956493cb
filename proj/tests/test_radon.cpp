#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <eucalc/linalg.hpp>
#include <eucalc/radon.hpp>
#include "test_helpers.hpp"

using namespace eucalc;
using namespace eucalc::testing;

namespace {

// cone over the standard triangle placed at height 1 in RP^2
ProjBody triangle_body() {
    std::vector<Vec> gens = {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1})};
    return ProjBody(2, gens, vec({0, 0, 1}));
}

// cone over the standard tetrahedron at height 1 in RP^3
ProjBody tetra_body() {
    std::vector<Vec> gens = {vec({0, 0, 0, 1}), vec({1, 0, 0, 1}),
                             vec({0, 1, 0, 1}), vec({0, 0, 1, 1})};
    return ProjBody(3, gens, vec({0, 0, 0, 1}));
}

ProjConstructibleFn random_proj_fn(std::mt19937_64& rng, int n, int nterms,
                                   bool with_constant) {
    ProjConstructibleFn f;
    f.n = n;
    if (with_constant) f.constant = random_rational(rng, 3);
    for (int i = 0; i < nterms; ++i) {
        ProjBody k = random_proj_body(rng, n, 4 + static_cast<int>(rng() % 2));
        while (!k.full_dimensional())
            k = random_proj_body(rng, n, 4 + static_cast<int>(rng() % 2));
        Rational w = random_rational(rng, 3);
        if (sgn(w) == 0) w = 1;
        f.terms.emplace_back(w, std::move(k));
    }
    return f;
}

} // namespace

TEST_CASE("radon of an indicator: miss, interior, tangent") {
    ProjBody k = triangle_body();
    RadonImage psi = radon(ProjConstructibleFn::indicator(k));
    // the witness hyperplane misses K
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({0, 0, 1}))) == 0);
    // a hyperplane through the interior point (1/4, 1/4)
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({1, -1, 0}))) == 1);
    // tangent along the edge x = 0: on the boundary of K^v, still counted
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({1, 0, 0}))) == 1);
}

TEST_CASE("radon of the constant function on RP^2 vanishes") {
    ProjConstructibleFn one;
    one.n = 2;
    one.constant = 1;
    RadonImage psi = radon(one);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i)
        REQUIRE(eval_radon(psi, random_proj_point(rng, 2)) == 0);
}

TEST_CASE("radon of the constant function on RP^3 is chi(RP^2) = 1") {
    ProjConstructibleFn one;
    one.n = 3;
    one.constant = 1;
    RadonImage psi = radon(one);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i)
        REQUIRE(eval_radon(psi, random_proj_point(rng, 3)) == 1);
}

TEST_CASE("eval_radon: cancelling weights and two-body linearity") {
    ProjBody k = triangle_body();
    ProjConstructibleFn cancel;
    cancel.n = 2;
    cancel.terms.emplace_back(Rational(1), k);
    cancel.terms.emplace_back(Rational(-1), k);
    RadonImage zero = radon(cancel);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i)
        REQUIRE(eval_radon(zero, random_proj_point(rng, 2)) == 0);

    // K near (2,2), L near (2,-2); the x-axis hyperplane separates them
    std::vector<Vec> kg = {vec({7, 7, 4}), vec({9, 7, 4}), vec({7, 9, 4}), vec({9, 9, 4})};
    std::vector<Vec> lg = {vec({7, -7, 4}), vec({9, -7, 4}), vec({7, -9, 4}), vec({9, -9, 4})};
    ProjBody kk(2, kg, vec({0, 0, 1})), ll(2, lg, vec({0, 0, 1}));
    ProjConstructibleFn two;
    two.n = 2;
    two.terms.emplace_back(Rational(1), kk);
    two.terms.emplace_back(Rational(1), ll);
    RadonImage psi = radon(two);
    // hyperplane x = 2y meets K (through its interior point (2,1)... scaled)
    // use x - 2 z = 0 in chart coordinates: passes through K, misses L? no —
    // vertical line x = 2 hits both. Take y = 2z (the line y = 2): meets K only.
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({0, 1, -2}))) == 1);
    // y = -2 meets L only
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({0, 1, 2}))) == 1);
    // x = 2 meets both
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({1, 0, -2}))) == 2);
}

TEST_CASE("dual transform closed form on the triangle, n=2") {
    RadonImage psi = radon(ProjConstructibleFn::indicator(triangle_body()));
    ProjPoint inside(vec({1, 1, 4}));
    ProjPoint outside(vec({5, 5, 1}));
    ProjPoint boundary(vec({1, 0, 2}));
    REQUIRE(dual_radon_eval(psi, inside) == 0);
    REQUIRE(dual_radon_eval(psi, outside) == 1);
    REQUIRE(dual_radon_eval(psi, boundary) == 0); // boundary grouped with inside
    REQUIRE(dual_radon_oracle(psi, inside) == 0);
    REQUIRE(dual_radon_oracle(psi, outside) == 1);
    REQUIRE(dual_radon_oracle(psi, boundary) == 0);
}

TEST_CASE("dual transform on the tetra patch, n=3: R^tR recovers 1_K") {
    ProjBody k = tetra_body();
    RadonImage psi = radon(ProjConstructibleFn::indicator(k));
    ProjPoint inside(vec({1, 1, 1, 4}));
    ProjPoint outside(vec({3, 3, 3, 1}));
    REQUIRE(dual_radon_eval(psi, inside) == 1);
    REQUIRE(dual_radon_eval(psi, outside) == 0);
    REQUIRE(dual_radon_oracle(psi, inside) == 1);
    REQUIRE(dual_radon_oracle(psi, outside) == 0);
}

TEST_CASE("closed form agrees with the pencil oracle on random data") {
    std::mt19937_64 rng(17);
    for (int n : {2, 3}) {
        int pairs = 0;
        while (pairs < 200) {
            ProjConstructibleFn f = random_proj_fn(rng, n, 1 + static_cast<int>(rng() % 3),
                                                   rng() % 2 == 0);
            RadonImage psi = radon(f);
            // random points plus generators (boundary points) of each body
            std::vector<ProjPoint> pts;
            for (int i = 0; i < 3; ++i) pts.push_back(random_proj_point(rng, n));
            for (const auto& [w, k] : f.terms)
                pts.emplace_back(k.generators().front());
            for (const auto& x : pts) {
                REQUIRE(dual_radon_eval(psi, x) == dual_radon_oracle(psi, x));
                ++pairs;
            }
        }
    }
}

TEST_CASE("inversion formula holds exactly for random functions, n=2 and n=3") {
    std::mt19937_64 rng(23);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 12; ++trial) {
            ProjConstructibleFn f = random_proj_fn(rng, n, 1 + static_cast<int>(rng() % 5),
                                                   rng() % 2 == 0);
            std::vector<ProjPoint> samples;
            for (int i = 0; i < 5; ++i) samples.push_back(random_proj_point(rng, n));
            for (const auto& [w, k] : f.terms) {
                samples.emplace_back(k.generators().front());
                Vec interior(n + 1, Rational(0));
                for (const auto& g : k.generators()) interior = add(interior, g);
                samples.emplace_back(interior);
            }
            InversionReport rep = verify_inversion(f, samples);
            REQUIRE(rep.all_zero);
            for (const auto& e : rep.entries) REQUIRE(e.residual == 0);
        }
    }
}

TEST_CASE("kernel probe: constants die iff n is even") {
    std::mt19937_64 rng(31);
    std::vector<ProjHyperplane> h2, h3;
    for (int i = 0; i < 100; ++i) {
        h2.push_back(random_proj_point(rng, 2));
        h3.push_back(random_proj_point(rng, 3));
    }
    KernelProbeReport r2 = kernel_probe(2, h2);
    REQUIRE(r2.consistent);
    REQUIRE(r2.constant_image_value == 0);
    for (const auto& v : r2.sampled_values) REQUIRE(v == 0);
    KernelProbeReport r3 = kernel_probe(3, h3);
    REQUIRE(r3.consistent);
    REQUIRE(r3.constant_image_value == 1);
    for (const auto& v : r3.sampled_values) REQUIRE(v == 1);
    REQUIRE_THROWS_AS(kernel_probe(4, {}), DimensionUnsupported);
}

TEST_CASE("the kernel contains only constants: a mean-zero difference survives") {
    // 1_K - 1_L with disjoint bodies has Euler integral 0 but nonzero image
    std::vector<Vec> kg = {vec({3, 3, 4}), vec({5, 3, 4}), vec({3, 5, 4}), vec({5, 5, 4})};
    std::vector<Vec> lg = {vec({3, -3, 4}), vec({5, -3, 4}), vec({3, -5, 4}), vec({5, -5, 4})};
    ProjBody k(2, kg, vec({0, 0, 1})), l(2, lg, vec({0, 0, 1}));
    ProjConstructibleFn f;
    f.n = 2;
    f.terms.emplace_back(Rational(1), k);
    f.terms.emplace_back(Rational(-1), l);
    REQUIRE(euler_integral(f) == 0);
    RadonImage psi = radon(f);
    // y = 1 meets K only
    REQUIRE(eval_radon(psi, ProjHyperplane(vec({0, 1, -1}))) == 1);
}

TEST_CASE("radon and dual_radon_eval are Q-linear") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        ProjConstructibleFn f = random_proj_fn(rng, n, 2, true);
        ProjConstructibleFn g = random_proj_fn(rng, n, 2, false);
        Rational a = random_rational(rng, 3), b = random_rational(rng, 3);
        ProjConstructibleFn comb;
        comb.n = n;
        comb.constant = a * f.constant + b * g.constant;
        for (const auto& [w, k] : f.terms) comb.terms.emplace_back(a * w, k);
        for (const auto& [w, k] : g.terms) comb.terms.emplace_back(b * w, k);
        RadonImage pf = radon(f), pg = radon(g), pc = radon(comb);
        for (int i = 0; i < 5; ++i) {
            ProjHyperplane h = random_proj_point(rng, n);
            REQUIRE(eval_radon(pc, h) == a * eval_radon(pf, h) + b * eval_radon(pg, h));
            ProjPoint x = random_proj_point(rng, n);
            REQUIRE(dual_radon_eval(pc, x) ==
                    a * dual_radon_eval(pf, x) + b * dual_radon_eval(pg, x));
        }
    }
}

TEST_CASE("PGL equivariance: transform bodies by g, hyperplanes by g^{-T}") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2;
        ProjBody k = random_proj_body(rng, n, 4);
        Mat g;
        std::optional<Mat> g_inv;
        do {
            g.clear();
            for (int i = 0; i <= n; ++i) g.push_back(random_vec(rng, n + 1, 2));
            g_inv = inverse(g);
        } while (!g_inv);
        Mat g_inv_t = transpose(*g_inv);
        std::vector<Vec> moved;
        for (const auto& v : k.generators()) moved.push_back(eucalc::apply(g, v));
        ProjBody gk(n, moved, eucalc::apply(g_inv_t, k.witness()));
        RadonImage psi = radon(ProjConstructibleFn::indicator(k));
        RadonImage gpsi = radon(ProjConstructibleFn::indicator(gk));
        for (int i = 0; i < 10; ++i) {
            ProjHyperplane h = random_proj_point(rng, n);
            ProjHyperplane gh(eucalc::apply(g_inv_t, h.homogeneous));
            REQUIRE(eval_radon(psi, h) == eval_radon(gpsi, gh));
        }
    }
}

TEST_CASE("affine line transform: square, miss, and a U-shaped union") {
    ConstructibleFn sq = ConstructibleFn::indicator(unit_box(2));
    REQUIRE(radon_affine_line(sq, vec({0, 1}), Rational(1, 2)) == 1);
    REQUIRE(radon_affine_line(sq, vec({0, 1}), Rational(5)) == 0);

    // U-shape: base [0,3]x[0,1], arms [0,1]x[1,3] and [2,3]x[1,3];
    // subtract the two seam segments so the sum is a true union indicator
    auto rect = [](const Rational& x0, const Rational& x1, const Rational& y0,
                   const Rational& y1) {
        std::vector<Vec> vs = {Vec{x0, y0}, Vec{x1, y0}, Vec{x0, y1}, Vec{x1, y1}};
        return Polytope::from_vertices(2, vs);
    };
    ConstructibleFn u = ConstructibleFn::indicator(rect(0, 3, 0, 1)) +
                        ConstructibleFn::indicator(rect(0, 1, 1, 3)) +
                        ConstructibleFn::indicator(rect(2, 3, 1, 3)) -
                        ConstructibleFn::indicator(rect(0, 1, 1, 1)) -
                        ConstructibleFn::indicator(rect(2, 3, 1, 1));
    // the line y = 2 crosses both arms
    REQUIRE(radon_affine_line(u, vec({0, 1}), Rational(2)) == 2);
    // y = 1/2 crosses only the base
    REQUIRE(radon_affine_line(u, vec({0, 1}), Rational(1, 2)) == 1);

    // linearity
    std::mt19937_64 rng(53);
    ConstructibleFn f = random_constructible(rng, 2, 3);
    ConstructibleFn h = random_constructible(rng, 2, 2);
    Rational a = 3, b = Rational(-1, 2);
    ConstructibleFn comb = a * f + b * h;
    Vec normal = vec({1, 2});
    Rational off(1, 3);
    REQUIRE(radon_affine_line(comb, normal, off) ==
            a * radon_affine_line(f, normal, off) + b * radon_affine_line(h, normal, off));

    std::vector<Halfspace> hs = {Halfspace{vec({1, 0}), Rational(0)}};
    ConstructibleFn half = ConstructibleFn::indicator(Polytope::from_halfspaces(2, hs));
    REQUIRE_THROWS_AS(radon_affine_line(half, vec({0, 1}), Rational(0)),
                      NotCompactlySupported);
}

TEST_CASE("classical sinogram of the unit square") {
    ConstructibleFn sq = ConstructibleFn::indicator(unit_box(2));
    double pi = std::acos(-1.0);
    auto m = classical_sinogram(sq, {0.0, pi / 4}, {0.5, std::sqrt(2.0) / 2, 5.0});
    // theta=0, p=1/2: full horizontal chord
    REQUIRE(m[0][0] == Catch::Approx(1.0).margin(1e-12));
    // theta=pi/4 through the center: the main diagonal, length sqrt(2)
    REQUIRE(m[1][1] == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    // disjoint line
    REQUIRE(m[0][2] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("shear contrast: Euler kernel sees incidence, length kernel sees measure") {
    // area-preserving shear (x, y) -> (x + y, y)
    ConstructibleFn sq = ConstructibleFn::indicator(unit_box(2));
    AffineMap shear{{vec({1, 1}), vec({0, 1})}, vec({0, 0})};
    ConstructibleFn sheared = pushforward(sq, shear);

    // Euler line transform: the vertical line x = 1/2 meets both convex
    // bodies, so both values are 1 — incidence only
    REQUIRE(radon_affine_line(sq, vec({1, 0}), Rational(1, 2)) == 1);
    REQUIRE(radon_affine_line(sheared, vec({1, 0}), Rational(1, 2)) == 1);

    // the length kernel changes: chord of the square at x = 1/2 is 1,
    // chord of the parallelogram is 1/2
    auto ms = classical_sinogram(sq, {0.0}, {0.5});
    auto mp = classical_sinogram(sheared, {0.0}, {0.5});
    REQUIRE(ms[0][0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(mp[0][0] == Catch::Approx(0.5).margin(1e-12));
}
