#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vofrac/caputo.hpp"
#include "vofrac/errors.hpp"
#include "vofrac/problems.hpp"

using namespace vofrac;

namespace {

constexpr double kPi = std::numbers::pi;

// Residual of u = (1 + t) g(x) written out by hand, with the Caputo term of the
// linear time factor in closed form.
double residual_linear(const ProblemSpec& p, double g, double dg, double d2g, double x, double t) {
    const double b = p.beta(x, t);
    const double caputo = g * std::pow(t, 1 - b) / std::tgamma(2 - b);
    return g + caputo + (1 + t) * dg - (1 + t) * d2g - p.source(x, t);
}

}  // namespace

TEST_CASE("example 1 data") {
    const auto p = example1();
    CHECK(p.initial(0.5) == doctest::Approx(0.625));
    CHECK_FALSE(p.order_constraint_violated);
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK((*p.exact)(x, 0.0) == doctest::Approx(p.initial(x)).epsilon(1e-15));
    }
    auto g = [](double x) { return 10 * x * x * (1 - x) * (1 - x); };
    auto dg = [](double x) { return 10 * (2 * x - 6 * x * x + 4 * x * x * x); };
    auto d2g = [](double x) { return 10 * (2 - 12 * x + 12 * x * x); };
    CHECK(std::abs(residual_linear(p, g(0.3), dg(0.3), d2g(0.3), 0.3, 0.7)) <= 1e-8);
    CHECK(std::abs(pde_residual(p, 0.3, 0.7)) <= 1e-8);
    CHECK(p.beta(0.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("manufactured quartic reproduces the example 1 source") {
    const auto e1 = example1();
    SpatialProfile g{[](double x) { return 10 * x * x * (1 - x) * (1 - x); },
                     [](double x) { return 10 * (2 * x - 6 * x * x + 4 * x * x * x); },
                     [](double x) { return 10 * (2 - 12 * x + 12 * x * x); }};
    const auto m = manufactured(g, [](double x, double t) { return 1 - std::exp(-x * t) / 2; }, "b");
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng), t = u(rng);
        CHECK(m.source(x, t) == doctest::Approx(e1.source(x, t)).epsilon(1e-13));
    }
}

TEST_CASE("example 2 data") {
    const auto p = example2();
    CHECK(p.initial(0.5) == doctest::Approx(5.0));
    CHECK(p.order_constraint_violated);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng), t = 0.01 + u(rng);
        const double s = 5 * std::sin(kPi * x);
        const double r = residual_linear(p, s, 5 * kPi * std::cos(kPi * x), -kPi * kPi * s, x, t);
        CHECK(std::abs(r) <= 1e-8);
    }
    // The printed source flips the sign of the cosine term.
    const double diff = p.source(0.5, 0.3) - example2_printed_source(0.5, 0.3);
    CHECK(std::abs(diff) <= 1e-12);
    const double off = p.source(0.2, 0.3) - example2_printed_source(0.2, 0.3);
    CHECK(off == doctest::Approx(2 * 5 * kPi * 1.3 * std::cos(kPi * 0.2)).epsilon(1e-12));
}

TEST_CASE("zero profile") {
    const auto p = resolve_problem("manufactured:zero");
    for (double x : {0.0, 0.3, 1.0})
        for (double t : {0.0, 0.5, 1.0}) {
            CHECK(p.source(x, t) == 0.0);
            CHECK((*p.exact)(x, t) == 0.0);
        }
}

TEST_CASE("sine profile residual through the quadrature oracle") {
    const auto p = resolve_problem("manufactured:sine");
    REQUIRE(p.constant_beta.has_value());
    CHECK(*p.constant_beta == 0.5);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        const double x = u(rng), t = 0.05 + u(rng);
        const double g = std::sin(kPi * x);
        const double caputo = caputo_quadrature_oracle([g](double) { return g; }, 0.5, t);
        const double r = g + caputo + (1 + t) * kPi * std::cos(kPi * x) + (1 + t) * kPi * kPi * g - p.source(x, t);
        CHECK(std::abs(r) <= 1e-10);
    }
}

TEST_CASE("quadratic time profile residual") {
    const auto p = resolve_problem("manufactured:sine-quadratic-time@0.3");
    for (double x : {0.2, 0.6})
        for (double t : {0.1, 0.9}) CHECK(std::abs(pde_residual(p, x, t)) <= 1e-10);
}

TEST_CASE("registry") {
    CHECK_FALSE(problem_names().empty());
    for (const auto& n : problem_names()) CHECK_NOTHROW(resolve_problem(n));
    CHECK(*resolve_problem("manufactured:quartic@0.25").constant_beta == 0.25);
    CHECK_THROWS_AS(resolve_problem("nope"), ParameterError);
    CHECK_THROWS_AS(resolve_problem("manufactured:sine@x"), ParameterError);
    CHECK_THROWS_AS(manufactured(SpatialProfile{}, [](double, double) { return 0.5; }, "b"), ParameterError);
}
