#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vofrac/errors.hpp"
#include "vofrac/grid.hpp"

using namespace vofrac;

namespace {

std::vector<double> random_field(std::mt19937_64& rng, int M) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::vector<double> u(M + 1);
    for (auto& v : u) v = d(rng);
    return u;
}

}  // namespace

TEST_CASE("half index arithmetic") {
    const auto a = HalfIndex::half_above(3);
    CHECK(a.twice() == 7);
    CHECK(a.value() == 3.5);
    CHECK_FALSE(a.is_whole());
    CHECK(a.floor() == 3);
    CHECK(a.next() == HalfIndex::whole(4));
    CHECK(a.prev() == HalfIndex::whole(3));
    CHECK(HalfIndex::whole(2) < HalfIndex::half_above(2));
    CHECK(HalfIndex::from_twice(-1).floor() == -1);
    CHECK(HalfIndex::half_above(0).str() == "1/2");
    CHECK(HalfIndex::whole(5).str() == "5");
}

TEST_CASE("grid construction and validation") {
    const Grid1D g(0.0, 1.0, 10);
    CHECK(g.spacing() == doctest::Approx(0.1));
    CHECK(g.node(10) == doctest::Approx(1.0));
    CHECK(g.interior_size() == 7u);
    CHECK(g.last_interior() == 8);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 3), ParameterError);
    CHECK_THROWS_AS(Grid1D(1.0, 0.0, 8), ParameterError);
    CHECK_THROWS_AS(g.node(11), IndexError);
}

TEST_CASE("time mesh validates alpha") {
    CHECK_THROWS_AS(TimeMesh(1.0, 4, 0.0), ParameterError);
    CHECK_THROWS_AS(TimeMesh(1.0, 4, 0.5), ParameterError);
    CHECK_THROWS_AS(TimeMesh(1.0, 0, 0.25), ParameterError);
    const TimeMesh m(1.0, 4, 0.25);
    CHECK(m.step() == 0.25);
    CHECK(m.time(HalfIndex::half_above(1)) == doctest::Approx(0.375));
    CHECK(m.shifted_time(HalfIndex::whole(1)) == doctest::Approx(0.3125));
}

TEST_CASE("discrete l2 norm examples") {
    const Grid1D g10(0.0, 1.0, 10);
    CHECK(discrete_l2_norm(std::vector<double>(11, 0.0), g10) == 0.0);
    CHECK(discrete_l2_norm(std::vector<double>(11, 1.0), g10) == doctest::Approx(0.836660).epsilon(1e-6));
    const Grid1D g5(0.0, 1.0, 5);
    CHECK(discrete_l2_norm(g5.nodes(), g5) == doctest::Approx(0.322490).epsilon(1e-6));
    CHECK_THROWS_AS(discrete_l2_norm(std::vector<double>(10, 1.0), g10), DimensionError);
}

TEST_CASE("inner product examples") {
    const Grid1D g(0.0, 1.0, 10);
    CHECK(inner_product(std::vector<double>(11, 1.0), std::vector<double>(11, 2.0), g) == doctest::Approx(1.4));
    CHECK_THROWS_AS(inner_product(std::vector<double>(11, 1.0), std::vector<double>(12, 1.0), g), DimensionError);
}

TEST_CASE("norm and inner product properties on random fields") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-5.0, 5.0);
    std::uniform_int_distribution<int> mdist(4, 64);
    for (int trial = 0; trial < 300; ++trial) {
        const int M = mdist(rng);
        const Grid1D g(0.0, 1.0, M);
        const auto u = random_field(rng, M);
        const auto v = random_field(rng, M);
        const double a = c(rng);
        std::vector<double> au(u);
        for (auto& x : au) x *= a;
        const double nu = discrete_l2_norm(u, g);
        CHECK(std::abs(discrete_l2_norm(au, g) - std::abs(a) * nu) <= 1e-13 * (1 + std::abs(a) * nu));
        CHECK(std::abs(inner_product(u, u, g) - nu * nu) <= 1e-14 * (1 + nu * nu));
        CHECK(inner_product(u, v, g) == doctest::Approx(inner_product(v, u, g)).epsilon(1e-15));
        CHECK(std::abs(inner_product(u, v, g)) <= nu * discrete_l2_norm(v, g) + 1e-13);
    }
}

TEST_CASE("delta_t examples and exactness on linear time") {
    const Grid1D g(0.0, 1.0, 8);
    const GridField zero(g, HalfIndex::whole(0));
    GridField one(std::vector<double>(9, 1.0), HalfIndex::half_above(0));
    const auto d = delta_t(one, zero, 0.5);
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(d[j] == 4.0);
    CHECK(d.level() == HalfIndex::whole(0));
    const auto same = delta_t(one, one, 0.5);
    for (std::size_t j = 0; j < same.size(); ++j) CHECK(same[j] == 0.0);
    CHECK_THROWS_AS(delta_t(one, zero, 0.0), ParameterError);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> kd(1e-3, 1.0), td(0.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double k = kd(rng), t = td(rng);
        const GridField a(std::vector<double>(9, t), HalfIndex::whole(0));
        const GridField b(std::vector<double>(9, t + 0.5 * k), HalfIndex::half_above(0));
        const auto r = delta_t(b, a, k);
        for (std::size_t j = 0; j < r.size(); ++j) CHECK(std::abs(r[j] - 1.0) <= 1e-13 / k);
    }
}

TEST_CASE("centered half differences") {
    const Grid1D g(0.0, 1.0, 4);
    const std::vector<double> c(5, 3.0);
    CHECK(delta_x_centered_half(c, HalfIndex::half_above(1), 0.25) == 0.0);
    const auto x = g.nodes();
    for (int j = 0; j < 4; ++j) CHECK(delta_x_centered_half(x, HalfIndex::half_above(j), 0.25) == doctest::Approx(1.0));
    std::vector<double> sq(5);
    for (int j = 0; j <= 4; ++j) sq[j] = x[j] * x[j];
    CHECK(delta_x_centered_half(sq, HalfIndex::half_above(1), 0.25) == doctest::Approx(0.75));
    CHECK_THROWS_AS(delta_x_centered_half(sq, HalfIndex::half_above(4), 0.25), IndexError);
    CHECK_THROWS_AS(delta_x_centered_half(sq, HalfIndex::whole(2), 0.25), IndexError);
}

TEST_CASE("sup over time and convergence rate") {
    const Grid1D g(0.0, 1.0, 10);
    const double n1 = discrete_l2_norm(std::vector<double>(11, 1.0), g);
    std::vector<GridField> fs;
    for (double s : {1.0, 3.0, 2.0}) fs.emplace_back(std::vector<double>(11, s / n1), HalfIndex::whole(0));
    CHECK(sup_l2_over_time(fs, g) == doctest::Approx(3.0));
    CHECK(sup_l2_over_time(std::span<const GridField>(fs.data(), 1), g) == doctest::Approx(1.0));
    std::vector<GridField> zeros(3, GridField(g, HalfIndex::whole(0)));
    CHECK(sup_l2_over_time(zeros, g) == 0.0);
    CHECK_THROWS_AS(sup_l2_over_time(std::vector<GridField>{}, g), ParameterError);

    // Published rate 3.5671 is within 0.01 of log2 of the published errors.
    CHECK(convergence_rate(6.4483e-2, 5.4102e-3) == doctest::Approx(std::log2(6.4483e-2 / 5.4102e-3)).epsilon(1e-15));
    CHECK(std::abs(convergence_rate(6.4483e-2, 5.4102e-3) - 3.5671) < 0.01);
    CHECK(convergence_rate(0.3, 0.3) == 0.0);
    CHECK(convergence_rate(16e-5, 1e-5) == doctest::Approx(4.0));
    for (int p = 1; p <= 4; ++p) CHECK(std::abs(convergence_rate(std::ldexp(0.37, p), 0.37) - p) <= 1e-13);
    CHECK_THROWS_AS(convergence_rate(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(convergence_rate(1.0, -1.0), ParameterError);
}

TEST_CASE("difference norm matches sum of squared half differences") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int M = 4 + static_cast<int>(rng() % 30);
        const Grid1D g(0.0, 1.0, M);
        const auto u = random_field(rng, M);
        double s = 0.0;
        for (int j = 1; j <= M - 2; ++j) {
            const double d = (u[j + 1] - u[j]) / g.spacing();
            s += g.spacing() * d * d;
        }
        CHECK(difference_norm(u, g) == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
    }
}
