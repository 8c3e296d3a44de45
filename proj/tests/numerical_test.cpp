#include <catch2/catch.hpp>

#include <hdual/numerical.hpp>

#include <cmath>
#include <numbers>

using namespace hdual;

TEST_CASE("finite differences") {
    REQUIRE(finite_difference([](double x) { return x * x; }, 1.7, 2, 1e-3) ==
            Approx(2.0).margin(1e-9));
    REQUIRE(finite_difference([](double x) { return std::exp(x); }, 0.0, 1, 1e-5) ==
            Approx(1.0).margin(1e-9));

    // default steps on sin: all four orders
    const double x = 0.6;
    REQUIRE(finite_difference([](double t) { return std::sin(t); }, x, 1) ==
            Approx(std::cos(x)).margin(1e-9));
    REQUIRE(finite_difference([](double t) { return std::sin(t); }, x, 2) ==
            Approx(-std::sin(x)).margin(1e-6));
    REQUIRE(finite_difference([](double t) { return std::sin(t); }, x, 3) ==
            Approx(-std::cos(x)).margin(1e-5));
    REQUIRE(finite_difference([](double t) { return std::sin(t); }, x, 4) ==
            Approx(std::sin(x)).margin(1e-3));

    REQUIRE_THROWS_AS(finite_difference([](double t) { return t; }, 0.0, 5, 1e-4),
                      unsupported_order);
    REQUIRE_THROWS_AS(finite_difference([](double t) { return t; }, 0.0, 0),
                      unsupported_order);
    REQUIRE_THROWS_AS(finite_difference([](double t) { return t; }, 0.0, 1, 0.0),
                      std::invalid_argument);
}

TEST_CASE("adaptive Simpson on finite intervals") {
    REQUIRE(integrate([](double) { return 1.0; }, 0.0, 1.0) == 1.0);
    REQUIRE(integrate([](double x) { return x * x * x; }, 0.0, 1.0) == Approx(0.25).margin(1e-14));
    REQUIRE(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
            Approx(2.0).margin(1e-10));
    REQUIRE(integrate([](double x) { return std::exp(-x * x); }, 1.0, 1.0) == 0.0);

    // refusal to converge surfaces as an error
    REQUIRE_THROWS_AS(integrate([](double x) { return std::exp(-1e8 * x * x); }, -1.0, 1.0,
                                {1e-14, 3}),
                      max_depth_exceeded);
}

TEST_CASE("real-line quadrature with decay truncation") {
    REQUIRE(integrate_real_line([](double x) { return std::exp(-x * x); }) ==
            Approx(std::sqrt(std::numbers::pi)).margin(1e-10));
    REQUIRE(integrate_real_line([](double x) { return x * std::exp(-x * x); }) ==
            Approx(0.0).margin(1e-12));
    // algebraic decay via the tangent substitution
    REQUIRE(integrate_real_line_algebraic([](double x) { return 1.0 / (1.0 + x * x); }) ==
            Approx(std::numbers::pi).margin(1e-8));
}

TEST_CASE("quadrature convergence under tolerance halving") {
    auto f = [](double x) { return std::exp(-x * x); };
    for (const double tol : {1e-6, 1e-8, 1e-10}) {
        const double c1 = integrate(f, -8.0, 8.0, {tol, 50});
        const double c2 = integrate(f, -8.0, 8.0, {tol / 2.0, 50});
        REQUIRE(std::abs(c1 - c2) <= tol);
    }
}

TEST_CASE("heat kernel convolution") {
    // kernel mass is one for any x and tau
    for (const double tau : {1e-3, 1e-2, 0.1, 1.0})
        REQUIRE(heat_convolve([](double) { return 1.0; }, 0.3, tau, {1e-13, 60}) ==
                Approx(1.0).margin(1e-12));

    // odd initial data vanishes at the origin
    REQUIRE(heat_convolve([](double s) { return s; }, 0.0, 0.25) == Approx(0.0).margin(1e-10));

    REQUIRE_THROWS_AS(heat_convolve([](double) { return 1.0; }, 0.0, 0.0),
                      std::invalid_argument);
}

TEST_CASE("grid sampling") {
    const auto g = grid_function<double>::sample([](double x) { return 2.0 * x; }, 0.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    REQUIRE(g.dx == Approx(0.25));
    REQUIRE(g.x(2) == Approx(0.5));
    REQUIRE(g.values[4] == Approx(2.0));

    REQUIRE_THROWS_AS(grid_function<double>(0.0, -0.1, {1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(grid_function<double>(0.0, 0.1, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(grid_function<double>::sample([](double x) { return x; }, 0.0, 1.0, 1),
                      std::invalid_argument);
}
