#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "vofrac/errors.hpp"
#include "vofrac/solver.hpp"

using namespace vofrac;

namespace {

Pentadiagonal random_pentadiagonal(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Pentadiagonal p(n, Provenance::StencilDerived);
    for (std::size_t i = 0; i < n; ++i)
        for (int o = -2; o <= 2; ++o) {
            const long j = long(i) + o;
            if (j >= 0 && j < long(n)) p.set_band(i, o, d(rng) + (o == 0 ? 3.0 : 0.0));
        }
    return p;
}

std::vector<double> oracle_solve(const Pentadiagonal& p, const std::vector<double>& b) {
    const auto d = p.dense();
    const std::size_t n = p.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = d[i * n + j];
    return oracle::gauss(a, b);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("banded LU on identity") {
    const auto id = assemble_operator_matrix(Grid1D(0.0, 1.0, 10), 0.0, OperatorSide::Implicit);
    const std::vector<double> b{1, 2, 3, 4, 5, 6, 7};
    CHECK(lu_factor(id).solve(b) == b);
}

TEST_CASE("banded LU matches dense elimination on A0") {
    const Grid1D g(0.0, 1.0, 8);
    const double h = 0.125, k = std::pow(h, 4);
    const auto a0 = assemble_operator_matrix(g, 0.25 * k, OperatorSide::Implicit);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1, 1);
    std::vector<double> b(a0.size());
    for (auto& x : b) x = d(rng);
    CHECK(max_diff(lu_factor(a0).solve(b), oracle_solve(a0, b)) <= 1e-12);
}

TEST_CASE("banded LU with pivoting on random pentadiagonal systems") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng() % 40;
        const auto p = random_pentadiagonal(rng, n);
        std::vector<double> b(n);
        for (auto& x : b) x = d(rng);
        const auto x = lu_factor(p).solve(b);
        CHECK(max_diff(x, oracle_solve(p, b)) <= 1e-9);
        CHECK(relative_residual(p, x, b) <= 1e-12);
    }
}

TEST_CASE("singular system is rejected") {
    const Grid1D g(0.0, 1.0, 8);
    auto p = assemble_operator_matrix(g, 0.01, OperatorSide::Implicit);
    for (int o = -2; o <= 2; ++o) p.set_band(2, o, 0.0);
    CHECK_THROWS_AS(lu_factor(p), SingularMatrixError);
    CHECK_THROWS_AS(lu_factor(p).solve(std::vector<double>(p.size(), 1.0)), SingularMatrixError);
}

TEST_CASE("gmres") {
    const Grid1D g8(0.0, 1.0, 8);
    const double al = 0.49, k = std::pow(0.125, 4);
    const auto a = assemble_operator_matrix(g8, (1 + 4 * al) * k / 4, OperatorSide::Implicit);
    const auto zero = gmres_solve(a, std::vector<double>(a.size(), 0.0));
    CHECK(zero.iterations == 0);
    for (double x : zero.x) CHECK(x == 0.0);

    std::vector<double> b(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(double(i) + 1);
    for (auto pc : {Preconditioner::None, Preconditioner::Jacobi, Preconditioner::ILU0}) {
        GmresConfig cfg;
        cfg.preconditioner = pc;
        const auto r = gmres_solve(a, b, cfg);
        CHECK(max_diff(r.x, lu_factor(a).solve(b)) <= 1e-8);
    }

    const Grid1D g16(0.0, 1.0, 16);
    const double k16 = std::pow(1.0 / 16, 4);
    const auto a0 = assemble_operator_matrix(g16, 0.25 * k16, OperatorSide::Implicit);
    // Nonuniform diagonal so that diagonal scaling has something to remove.
    std::vector<double> shift(a0.size());
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = 50.0 * double(i * i);
    const auto scaled = a0.with_diagonal_shift(shift);
    std::vector<double> b16(scaled.size(), 1.0);
    GmresConfig none, jac;
    jac.preconditioner = Preconditioner::Jacobi;
    const auto rn = gmres_solve(scaled, b16, none);
    const auto rj = gmres_solve(scaled, b16, jac);
    CHECK(rj.iterations < rn.iterations);
    const auto ra0n = gmres_solve(a0, b16, none);
    const auto ra0j = gmres_solve(a0, b16, jac);
    // A0 has a constant diagonal, so Jacobi is a scalar scaling and leaves the Krylov iterates unchanged.
    CHECK(ra0j.iterations == ra0n.iterations);
}

TEST_CASE("gmres reports non-convergence with best iterate") {
    std::mt19937_64 rng(4);
    const auto p = random_pentadiagonal(rng, 60);
    GmresConfig cfg;
    cfg.restart = 2;
    cfg.max_iters = 4;
    cfg.rel_tol = 1e-14;
    try {
        gmres_solve(p, std::vector<double>(60, 1.0), cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_iterate().size() == 60u);
        CHECK(e.residual() > 1e-14);
        CHECK(e.iterations() >= 4);
    }
}

TEST_CASE("dense solve") {
    const auto x = dense_solve({2, 1, 1, 3}, {3, 5});
    CHECK(x[0] == doctest::Approx(0.8));
    CHECK(x[1] == doctest::Approx(1.4));
    CHECK_THROWS_AS(dense_solve({1, 2, 2, 4}, {1, 1}), SingularMatrixError);
}
