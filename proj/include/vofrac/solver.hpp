#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vofrac/stencil.hpp"

namespace vofrac {

/// PLU factors of a pentadiagonal matrix with row partial pivoting.
///
/// U keeps up to four superdiagonals after pivoting fill-in.
class BandedLU {
public:
    static constexpr int kLower = 2;
    static constexpr int kUpper = 2;
    static constexpr int kUpperFilled = kLower + kUpper;
    static constexpr double kPivotTolerance = 1e-14;

    explicit BandedLU(const Pentadiagonal& p);

    std::size_t size() const { return n_; }
    std::vector<double> solve(std::span<const double> b) const;
    const std::vector<std::size_t>& pivots() const { return piv_; }

private:
    static constexpr int kWidth = kLower + kUpperFilled + 1;
    double& at(std::size_t row, std::size_t col) {
        return a_[row * kWidth + (col + kLower - row)];
    }
    double at(std::size_t row, std::size_t col) const {
        return a_[row * kWidth + (col + kLower - row)];
    }

    std::size_t n_;
    std::vector<double> a_;
    std::vector<double> mult_;  // kLower multipliers per step
    std::vector<std::size_t> piv_;
};

/// Factorizes P; throws SingularMatrixError when a pivot falls below 1e-14 * ||row||.
BandedLU lu_factor(const Pentadiagonal& p);

enum class Preconditioner { None, Jacobi, ILU0 };

struct GmresConfig {
    int restart = 30;
    double rel_tol = 1e-10;
    int max_iters = 2000;
    Preconditioner preconditioner = Preconditioner::None;
};

struct GmresResult {
    std::vector<double> x;
    int iterations = 0;
    double residual = 0.0;  ///< ||P x - b|| / ||b||
};

/// Restarted right-preconditioned GMRES from x0 = 0.
GmresResult gmres_solve(const Pentadiagonal& p, std::span<const double> b, const GmresConfig& cfg = {});

/// Dense Gaussian elimination with partial pivoting on a row-major n x n matrix.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b);

/// ||P x - b||_2 / ||b||_2 (or ||P x|| when b = 0).
double relative_residual(const Pentadiagonal& p, std::span<const double> x, std::span<const double> b);

}  // namespace vofrac
