#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "vofrac/errors.hpp"
#include "vofrac/stencil.hpp"

using namespace vofrac;

namespace {

std::vector<double> sample(const Grid1D& g, double (*f)(double)) {
    auto x = g.nodes();
    for (auto& v : x) v = f(v);
    return x;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("second derivative stencil") {
    const Grid1D g(0.0, 1.0, 8);
    const auto q = sample(g, [](double x) { return x * x; });
    for (int j = 2; j <= 6; ++j) CHECK(stencil_second(q, j, g.spacing()) == doctest::Approx(2.0).epsilon(1e-12));
    const Grid1D g4(0.0, 1.0, 4);
    const auto x4 = sample(g4, [](double x) { return x * x * x * x; });
    CHECK(stencil_second(x4, 2, 0.25) == doctest::Approx(3.0).epsilon(1e-13));
    const Grid1D g64(0.0, 1.0, 64);
    const auto s = sample(g64, [](double x) { return std::sin(std::numbers::pi * x); });
    const double pi = std::numbers::pi, h = g64.spacing();
    const double bound = 10 * std::pow(h, 4) * std::pow(pi, 6) / 360;
    for (int j = 2; j <= 62; ++j)
        CHECK(std::abs(stencil_second(s, j, h) + pi * pi * std::sin(pi * g64.node(j))) <= bound);
    CHECK_THROWS_AS(stencil_second(q, 1, g.spacing()), IndexError);
    CHECK_THROWS_AS(stencil_second(q, 7, g.spacing()), IndexError);
}

TEST_CASE("first derivative stencil") {
    const Grid1D g(0.0, 1.0, 4);
    const std::vector<double> c(5, 2.0);
    CHECK(stencil_first(c, 2, 0.25) == 0.0);
    CHECK(stencil_first(g.nodes(), 2, 0.25) == doctest::Approx(1.0));
    const auto cube = sample(g, [](double x) { return x * x * x; });
    CHECK(stencil_first(cube, 2, 0.25) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("combined operator") {
    const Grid1D g(0.0, 1.0, 10);
    for (double v : apply_Lh(g.nodes(), g.spacing())) CHECK(v == doctest::Approx(-1.0));
    const auto q = sample(g, [](double x) { return x * x; });
    const auto lq = apply_Lh(q, g.spacing());
    for (std::size_t i = 0; i < lq.size(); ++i) CHECK(lq[i] == doctest::Approx(2 - 2 * g.node(int(i) + 2)));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto u = random_vec(rng, 11), v = random_vec(rng, 11);
        const double a = 1.7, b = -0.3;
        std::vector<double> w(11);
        for (int j = 0; j < 11; ++j) w[j] = a * u[j] + b * v[j];
        const auto lu = apply_Lh(u, 0.1), lv = apply_Lh(v, 0.1), lw = apply_Lh(w, 0.1);
        for (std::size_t i = 0; i < lw.size(); ++i) CHECK(std::abs(lw[i] - a * lu[i] - b * lv[i]) <= 1e-13 * 1e3);
    }
}

TEST_CASE("operator matrix assembly") {
    const Grid1D g(0.0, 1.0, 8);
    const auto id = assemble_operator_matrix(g, 0.0, OperatorSide::Implicit);
    for (std::size_t i = 0; i < id.size(); ++i)
        for (std::size_t j = 0; j < id.size(); ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));
    CHECK_THROWS_AS(assemble_operator_matrix(g, -1.0, OperatorSide::Implicit), ParameterError);

    const double al = 0.25, h = g.spacing(), k = std::pow(h, 4);
    const auto a0 = assemble_operator_matrix(g, al * k, OperatorSide::Implicit);
    CHECK(a0.band(2, 0) == doctest::Approx(1 + 2.5 * al * k / (h * h)).epsilon(1e-14));
    const auto a = assemble_operator_matrix(g, (1 + 4 * al) * k / 4, OperatorSide::Implicit);
    CHECK(a.band(2, 1) == doctest::Approx((1 + 4 * al) * k / (6 * h) * (1 - 2 / h)).epsilon(1e-13));
    CHECK(a0.provenance() == Provenance::StencilDerived);
}

TEST_CASE("scheme matrix coefficients and printed bands") {
    const double k = 0.01;
    for (double al : {0.1, 0.25, 0.4}) {
        const auto a2 = scheme_matrix_coefficient(SchemeMatrix::A2, k, al);
        const double signed_c = (1 - 4 * al) * k / 4;
        CHECK(a2.c >= 0.0);
        CHECK((a2.side == OperatorSide::Explicit ? a2.c : -a2.c) == doctest::Approx(signed_c));
    }
    const Grid1D g(0.0, 1.0, 10);
    for (auto which : {SchemeMatrix::A0, SchemeMatrix::A1, SchemeMatrix::A, SchemeMatrix::A2}) {
        const auto mc = scheme_matrix_coefficient(which, k, 0.3);
        const auto s = assemble_operator_matrix(g, mc.c, mc.side);
        const auto p = assemble_printed(which, g, k, 0.3);
        CHECK(p.provenance() == Provenance::Printed);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (int o = -2; o <= 2; ++o) {
                if (long(i) + o < 0 || long(i) + o >= long(s.size())) continue;
                CHECK(s.band(i, o) == doctest::Approx(p.band(i, o)).epsilon(1e-13));
            }
    }
}

TEST_CASE("operator application and boundary split reproduce the full stencil") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const int M = 5 + int(rng() % 20);
        const Grid1D g(0.0, 1.0, M);
        const auto u = random_vec(rng, M + 1);
        const double c = 0.01;
        for (auto side : {OperatorSide::Implicit, OperatorSide::Explicit}) {
            const auto full = apply_operator(u, g.spacing(), c, side);
            const auto p = assemble_operator_matrix(g, c, side);
            const std::vector<double> inner(u.begin() + 2, u.end() - 2);
            const auto mv = matvec(p, inner);
            const auto bc = boundary_contribution(u, g.spacing(), c, side);
            for (std::size_t i = 0; i < full.size(); ++i)
                CHECK(std::abs(full[i] - mv[i] - bc[i]) <= 1e-12 * (1 + std::abs(full[i])));
        }
    }
}

TEST_CASE("matvec") {
    const Grid1D g(0.0, 1.0, 8);
    const auto id = assemble_operator_matrix(g, 0.0, OperatorSide::Explicit);
    const std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(matvec(id, v) == v);
    const auto p = assemble_operator_matrix(g, 0.05, OperatorSide::Implicit);
    for (double x : matvec(p, std::vector<double>(5, 0.0))) CHECK(x == 0.0);
    std::mt19937_64 rng(19);
    const auto x = random_vec(rng, 5);
    const auto d = p.dense();
    const auto y = matvec(p, x);
    for (std::size_t i = 0; i < 5; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 5; ++j) s += d[i * 5 + j] * x[j];
        CHECK(std::abs(s - y[i]) <= 1e-13 * (1 + std::abs(s)));
    }
    CHECK_THROWS_AS(matvec(p, std::vector<double>(4, 0.0)), DimensionError);
}
