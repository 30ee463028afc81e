#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "vofrac/grid.hpp"

namespace vofrac {

/// (1/12h^2)[-u_{j+2} + 16u_{j+1} - 30u_j + 16u_{j-1} - u_{j-2}].
double stencil_second(std::span<const double> u, int j, double h);

/// (1/12h)[-u_{j+2} + 8u_{j+1} - 8u_{j-1} + u_{j-2}].
double stencil_first(std::span<const double> u, int j, double h);

/// L_h u = stencil_second - stencil_first on j = 2..M-2 (length M-3).
std::vector<double> apply_Lh(std::span<const double> u, double h);

/// Origin of a matrix's entries.
enum class Provenance { StencilDerived, Printed };

/// Five-band square matrix on the interior unknowns, bands at offsets -2..+2.
class Pentadiagonal {
public:
    Pentadiagonal() = default;
    Pentadiagonal(std::size_t size, Provenance provenance);

    std::size_t size() const { return n_; }
    Provenance provenance() const { return provenance_; }

    /// Entry (i, i + offset); zero for offsets outside the matrix.
    double band(std::size_t i, int offset) const;
    void set_band(std::size_t i, int offset, double value);
    double operator()(std::size_t i, std::size_t j) const;

    /// Copy with diag(shift) added.
    Pentadiagonal with_diagonal_shift(std::span<const double> shift) const;

    /// Row-major dense copy.
    std::vector<double> dense() const;

private:
    std::size_t n_ = 0;
    Provenance provenance_ = Provenance::StencilDerived;
    std::vector<std::array<double, 5>> rows_;
};

/// Whether L_h enters with a minus (left-hand side) or plus (right-hand side) sign.
enum class OperatorSide {
    Implicit,  ///< I - c L_h
    Explicit,  ///< I + c L_h
};

/// Interior matrix of I -+ c L_h, assembled from the stencils.
Pentadiagonal assemble_operator_matrix(const Grid1D& grid, double c, OperatorSide side);

/// (I -+ c L_h) u on j = 2..M-2 using the full field, boundary nodes included.
std::vector<double> apply_operator(std::span<const double> u, double h, double c, OperatorSide side);

/// Contribution of nodes 0, 1, M-1, M to (I -+ c L_h) u on the interior rows.
std::vector<double> boundary_contribution(std::span<const double> u, double h, double c, OperatorSide side);

/// The four system matrices of the two-step scheme.
enum class SchemeMatrix {
    A0,  ///< I - alpha k L_h
    A1,  ///< I + (1/2 - alpha) k L_h
    A,   ///< I - (1+4alpha)/4 k L_h
    A2,  ///< I + (1-4alpha)/4 k L_h
};

/// Coefficient c and side of a scheme matrix.
struct MatrixCoefficient {
    double c;
    OperatorSide side;
};
MatrixCoefficient scheme_matrix_coefficient(SchemeMatrix which, double k, double alpha);

/// Band values [offset -2, -1, 0, +1, +2] from the closed-form first-row formulas.
std::array<double, 5> printed_band_entries(SchemeMatrix which, double k, double h, double alpha);

/// Toeplitz matrix built from printed_band_entries (provenance Printed).
Pentadiagonal assemble_printed(SchemeMatrix which, const Grid1D& grid, double k, double alpha);

/// P v.
std::vector<double> matvec(const Pentadiagonal& p, std::span<const double> v);

}  // namespace vofrac
