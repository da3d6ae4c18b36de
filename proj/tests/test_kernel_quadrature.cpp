#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "convolution.hpp"
#include "grid.hpp"
#include "kernel.hpp"
#include "oracles.hpp"

using namespace nls;

TEST_CASE("build_grid basics") {
    Grid g = build_grid(1.0, 2);
    REQUIRE(g.n() == 5);
    const double expected_nodes[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    const double expected_weights[5] = {0.25, 0.5, 0.5, 0.5, 0.25};
    for (int i = 0; i < 5; ++i) {
        CHECK(g.nodes[i] == doctest::Approx(expected_nodes[i]).epsilon(1e-15));
        CHECK(g.weights[i] == doctest::Approx(expected_weights[i]).epsilon(1e-15));
    }
    double total = 0;
    for (double w : g.weights) total += w;
    CHECK(std::fabs(total - 2.0) < 1e-12);

    Grid g2 = build_grid(5.0, 40);
    CHECK(g2.n() == 401);
    CHECK(g2.weights[200] == doctest::Approx(0.025).epsilon(1e-15));
    double total2 = 0;
    for (double w : g2.weights) total2 += w;
    CHECK(std::fabs(total2 - 10.0) < 1e-12);
}

TEST_CASE("build_grid rejects bad input") {
    CHECK_THROWS_AS(build_grid(0.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1.23, 10), std::invalid_argument);  // L*inv_h not integer
}

TEST_CASE("standard kernel profile and analytic masses") {
    KernelSpec k = standard_kernel();
    CHECK(k.profile(0.0) == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
    CHECK(k.profile(1.0) == 0.0);
    CHECK(k.derivative(1.0) == 0.0);
    CHECK_NOTHROW(validate_kernel(k, 40));

    // unit mass and the 53/512 tail, by analytic antiderivative and quadrature
    CHECK(std::fabs(kernel_integral(k, -1.0, 1.0) - 1.0) < 1e-12);
    CHECK(std::fabs(kernel_integral(k, 0.5, 1.0) - 53.0 / 512.0) < 1e-12);
    const double tail_oracle = oracle::simpson([&](double z) { return oracle::quartic_bump(z); }, 0.5, 1.0);
    CHECK(std::fabs(tail_oracle - 53.0 / 512.0) < 1e-12);
}

TEST_CASE("discrete kernel mass is renormalized to one") {
    KernelSpec k = standard_kernel();
    for (int inv_h : {20, 40, 80}) {
        DiscreteKernel dk = discretize(k, inv_h);
        const double h = dk.h;
        // lattice trapezoid mass of the quartic bump is exactly 1 - h^4/16
        CHECK(dk.raw_mass == doctest::Approx(1.0 - h * h * h * h / 16.0).epsilon(1e-13));
        double mass = 0.0;
        for (int j = -dk.m; j <= dk.m; ++j) mass += h * dk.at(j);
        CHECK(std::fabs(mass - 1.0) < 1e-10);
    }
}

TEST_CASE("dirichlet convolution of constants") {
    Grid g = build_grid(2.0, 40);
    DiscreteKernel dk = discretize(standard_kernel(), 40);
    Vec ones(g.n(), 1.0);
    Vec c = convolve(g, dk, ones, BoundaryKind::dirichlet);
    CHECK(std::fabs(c[g.center()] - 1.0) < 1e-12);       // full support inside
    CHECK(std::fabs(c.back() - 0.5) < 1e-12);            // half the mass outside
    CHECK(std::fabs(c.front() - 0.5) < 1e-12);
}

TEST_CASE("boundary mass stays within [1/2, 1]") {
    Grid g = build_grid(2.0, 40);
    DiscreteKernel dk = discretize(standard_kernel(), 40);
    Vec b = boundary_mass(g, dk);
    for (double v : b) {
        CHECK(v >= 0.5 - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(std::fabs(b[g.center()] - 1.0) < 1e-12);
    const int at_lm1 = g.center() + g.inv_h;  // x = L - 1
    CHECK(std::fabs(b[at_lm1] - 1.0) < 1e-12);
    CHECK(std::fabs(b.back() - 0.5) < 1e-12);
}

TEST_CASE("neumann convolution preserves constants at every node") {
    Grid g = build_grid(1.0, 20);
    DiscreteKernel dk = discretize(standard_kernel(), 20);
    Vec ones(g.n(), 1.0);
    Vec c = convolve(g, dk, ones, BoundaryKind::neumann);
    for (double v : c) CHECK(std::fabs(v - 1.0) < 1e-10);
}

TEST_CASE("convolution is symmetric as a weighted bilinear form") {
    Grid g = build_grid(1.5, 20);
    DiscreteKernel dk = discretize(standard_kernel(), 20);
    oracle::Lcg rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        Vec u(g.n()), v(g.n());
        for (int i = 0; i < g.n(); ++i) {
            u[i] = rng.symmetric();
            v[i] = rng.symmetric();
        }
        for (BoundaryKind bc : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
            Vec ju = convolve(g, dk, u, bc);
            Vec jv = convolve(g, dk, v, bc);
            double lhs = 0, rhs = 0, scale = 0;
            for (int i = 0; i < g.n(); ++i) {
                lhs += g.weights[i] * u[i] * jv[i];
                rhs += g.weights[i] * v[i] * ju[i];
                scale += g.weights[i] * (std::fabs(u[i] * jv[i]) + std::fabs(v[i] * ju[i]));
            }
            CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("positivity preservation") {
    Grid g = build_grid(1.0, 16);
    DiscreteKernel dk = discretize(standard_kernel(), 16);
    oracle::Lcg rng(777);
    Vec v(g.n());
    for (auto& x : v) x = rng.uniform();
    for (BoundaryKind bc : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
        Vec c = convolve(g, dk, v, bc);
        for (double y : c) CHECK(y >= 0.0);
    }
}

TEST_CASE("trapezoid order: halving h shrinks the error by about four") {
    // errors measured against a grid four times finer than each resolution
    KernelSpec k = standard_kernel();
    auto smooth = [](double x) { return std::cos(1.3 * x) + 0.25 * x; };
    auto max_err = [&](int inv_h) {
        Grid g = build_grid(2.0, inv_h);
        Grid fine = build_grid(2.0, 4 * inv_h);
        DiscreteKernel dk = discretize(k, inv_h);
        DiscreteKernel dkf = discretize(k, 4 * inv_h);
        Vec v(g.n()), vf(fine.n());
        for (int i = 0; i < g.n(); ++i) v[i] = smooth(g.nodes[i]);
        for (int i = 0; i < fine.n(); ++i) vf[i] = smooth(fine.nodes[i]);
        Vec c = convolve(g, dk, v, BoundaryKind::dirichlet);
        Vec cf = convolve(fine, dkf, vf, BoundaryKind::dirichlet);
        double err = 0;
        for (int i = 0; i < g.n(); ++i) err = std::max(err, std::fabs(c[i] - cf[4 * i]));
        return err;
    };
    const double e1 = max_err(10);
    const double e2 = max_err(20);
    const double ratio = e1 / e2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("whole-line convolution maps the clamp constant to itself") {
    Grid g = build_grid(3.0, 20);
    DiscreteKernel dk = discretize(standard_kernel(), 20);
    Vec v(g.n(), 0.7);
    Vec c = convolve_whole_line(g, dk, v, 0.7, 0.7);
    for (double y : c) CHECK(std::fabs(y - 0.7) < 1e-13);
}

TEST_CASE("table kernels reproduce the quartic profile") {
    Vec z, j;
    for (int i = -1000; i <= 1000; ++i) {
        z.push_back(i / 1000.0);
        j.push_back(oracle::quartic_bump(i / 1000.0));
    }
    KernelSpec table = kernel_from_table(z, j);
    CHECK_NOTHROW(validate_kernel(table, 100));
    for (double x : {-0.733, -0.2, 0.0, 0.41, 0.9991}) {
        CHECK(std::fabs(table.profile(x) - oracle::quartic_bump(x)) < 2e-6);
    }
    CHECK(table.profile(1.2) == 0.0);
}

TEST_CASE("kernel table loading and registry") {
    const char* path = "kernel_table_test.txt";
    {
        std::ofstream os(path);
        os << "# z J\n";
        for (int i = -200; i <= 200; ++i) {
            const double z = i / 200.0;
            os << z << " " << oracle::quartic_bump(z) << "\n";
        }
    }
    KernelSpec loaded = load_kernel_table(path);
    CHECK(loaded.profile(0.0) == doctest::Approx(15.0 / 16.0).epsilon(1e-6));
    CHECK_NOTHROW(register_kernel("quartic_table", loaded));
    KernelSpec back = kernel_by_name("quartic_table");
    CHECK(back.profile(0.25) == doctest::Approx(loaded.profile(0.25)).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_by_name("no_such_kernel"), std::invalid_argument);
    std::remove(path);

    {
        std::ofstream os(path);
        os << "0.0 1.0\nbad line here\n";
    }
    CHECK_THROWS(load_kernel_table(path));
    std::remove(path);
}

TEST_CASE("convolve rejects mismatched input") {
    Grid g = build_grid(1.0, 10);
    DiscreteKernel dk = discretize(standard_kernel(), 10);
    Vec wrong(g.n() + 1, 0.0);
    CHECK_THROWS_AS(convolve(g, dk, wrong, BoundaryKind::dirichlet), std::invalid_argument);
    DiscreteKernel other = discretize(standard_kernel(), 20);
    Vec right(g.n(), 0.0);
    CHECK_THROWS_AS(convolve(g, other, right, BoundaryKind::dirichlet), std::invalid_argument);
}
