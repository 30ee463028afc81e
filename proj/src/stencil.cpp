#include "vofrac/stencil.hpp"

#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

constexpr std::array<double, 5> kSecond{-1.0, 16.0, -30.0, 16.0, -1.0};  // offsets -2..+2
constexpr std::array<double, 5> kFirst{1.0, -8.0, 0.0, 8.0, -1.0};

void check_node(std::span<const double> u, int j) {
    const int m = static_cast<int>(u.size()) - 1;
    if (m < 4) throw DimensionError("stencil: field needs at least 5 nodes");
    if (j < 2 || j > m - 2) {
        throw IndexError("stencil: node " + std::to_string(j) + " outside 2.." + std::to_string(m - 2));
    }
}

// Stencil weights of L_h at offset o (index o+2).
std::array<double, 5> lh_weights(double h) {
    std::array<double, 5> w{};
    for (std::size_t o = 0; o < 5; ++o) w[o] = kSecond[o] / (12.0 * h * h) - kFirst[o] / (12.0 * h);
    return w;
}

double side_sign(OperatorSide side) { return side == OperatorSide::Implicit ? -1.0 : 1.0; }

}  // namespace

double stencil_second(std::span<const double> u, int j, double h) {
    check_node(u, j);
    const auto c = static_cast<std::size_t>(j);
    return (-u[c + 2] + 16.0 * u[c + 1] - 30.0 * u[c] + 16.0 * u[c - 1] - u[c - 2]) / (12.0 * h * h);
}

double stencil_first(std::span<const double> u, int j, double h) {
    check_node(u, j);
    const auto c = static_cast<std::size_t>(j);
    return (-u[c + 2] + 8.0 * u[c + 1] - 8.0 * u[c - 1] + u[c - 2]) / (12.0 * h);
}

std::vector<double> apply_Lh(std::span<const double> u, double h) {
    const int m = static_cast<int>(u.size()) - 1;
    if (m < 4) throw DimensionError("apply_Lh: field needs at least 5 nodes");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m - 3));
    for (int j = 2; j <= m - 2; ++j) out.push_back(stencil_second(u, j, h) - stencil_first(u, j, h));
    return out;
}

Pentadiagonal::Pentadiagonal(std::size_t size, Provenance provenance)
    : n_(size), provenance_(provenance), rows_(size, std::array<double, 5>{}) {}

double Pentadiagonal::band(std::size_t i, int offset) const {
    if (i >= n_ || offset < -2 || offset > 2) throw IndexError("pentadiagonal: band index out of range");
    const auto col = static_cast<long long>(i) + offset;
    if (col < 0 || col >= static_cast<long long>(n_)) return 0.0;
    return rows_[i][static_cast<std::size_t>(offset + 2)];
}

void Pentadiagonal::set_band(std::size_t i, int offset, double value) {
    if (i >= n_ || offset < -2 || offset > 2) throw IndexError("pentadiagonal: band index out of range");
    const auto col = static_cast<long long>(i) + offset;
    if (col < 0 || col >= static_cast<long long>(n_)) {
        throw IndexError("pentadiagonal: entry lies outside the matrix");
    }
    rows_[i][static_cast<std::size_t>(offset + 2)] = value;
}

double Pentadiagonal::operator()(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw IndexError("pentadiagonal: entry out of range");
    const long long off = static_cast<long long>(j) - static_cast<long long>(i);
    if (off < -2 || off > 2) return 0.0;
    return rows_[i][static_cast<std::size_t>(off + 2)];
}

Pentadiagonal Pentadiagonal::with_diagonal_shift(std::span<const double> shift) const {
    if (shift.size() != n_) throw DimensionError("pentadiagonal: diagonal shift length mismatch");
    Pentadiagonal p = *this;
    for (std::size_t i = 0; i < n_; ++i) p.rows_[i][2] += shift[i];
    return p;
}

std::vector<double> Pentadiagonal::dense() const {
    std::vector<double> d(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (int o = -2; o <= 2; ++o) {
            const long long j = static_cast<long long>(i) + o;
            if (j >= 0 && j < static_cast<long long>(n_)) d[i * n_ + static_cast<std::size_t>(j)] = band(i, o);
        }
    }
    return d;
}

Pentadiagonal assemble_operator_matrix(const Grid1D& grid, double c, OperatorSide side) {
    if (c < 0.0) throw ParameterError("assemble_operator_matrix: coefficient c must be >= 0");
    const std::size_t n = grid.interior_size();
    const auto w = lh_weights(grid.spacing());
    const double s = side_sign(side) * c;
    Pentadiagonal p(n, Provenance::StencilDerived);
    for (std::size_t i = 0; i < n; ++i) {
        for (int o = -2; o <= 2; ++o) {
            const long long j = static_cast<long long>(i) + o;
            if (j < 0 || j >= static_cast<long long>(n)) continue;
            const double v = (o == 0 ? 1.0 : 0.0) + s * w[static_cast<std::size_t>(o + 2)];
            p.set_band(i, o, v);
        }
    }
    return p;
}

std::vector<double> apply_operator(std::span<const double> u, double h, double c, OperatorSide side) {
    auto l = apply_Lh(u, h);
    const double s = side_sign(side) * c;
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = u[i + 2] + s * l[i];
    return l;
}

std::vector<double> boundary_contribution(std::span<const double> u, double h, double c, OperatorSide side) {
    std::vector<double> b(u.begin(), u.end());
    for (std::size_t j = 2; j + 2 < b.size(); ++j) b[j] = 0.0;
    return apply_operator(b, h, c, side);
}

MatrixCoefficient scheme_matrix_coefficient(SchemeMatrix which, double k, double alpha) {
    switch (which) {
        case SchemeMatrix::A0: return {alpha * k, OperatorSide::Implicit};
        case SchemeMatrix::A1: return {(0.5 - alpha) * k, OperatorSide::Explicit};
        case SchemeMatrix::A: return {(1.0 + 4.0 * alpha) * k / 4.0, OperatorSide::Implicit};
        case SchemeMatrix::A2: {
            // For alpha > 1/4 the coefficient turns negative; I + cL = I - |c|L.
            const double c = (1.0 - 4.0 * alpha) * k / 4.0;
            return c >= 0.0 ? MatrixCoefficient{c, OperatorSide::Explicit}
                            : MatrixCoefficient{-c, OperatorSide::Implicit};
        }
    }
    throw ParameterError("unknown scheme matrix");
}

std::array<double, 5> printed_band_entries(SchemeMatrix which, double k, double h, double alpha) {
    // Closed forms written per matrix: diagonal a, super b, super-2 c, sub d, sub-2 e.
    double a = 0, b = 0, c = 0, d = 0, e = 0;
    switch (which) {
        case SchemeMatrix::A0:
            a = 1.0 + 2.5 * alpha * k / (h * h);
            b = (2.0 * alpha * k / (3.0 * h)) * (1.0 - 2.0 / h);
            c = (alpha * k / (12.0 * h)) * (-1.0 + 1.0 / h);
            d = -(2.0 * alpha * k / (3.0 * h)) * (1.0 + 2.0 / h);
            e = (alpha * k / (12.0 * h)) * (1.0 + 1.0 / h);
            break;
        case SchemeMatrix::A:
            a = 1.0 + 5.0 * (1.0 + 4.0 * alpha) * k / (8.0 * h * h);
            b = ((1.0 + 4.0 * alpha) * k / (6.0 * h)) * (1.0 - 2.0 / h);
            c = ((1.0 + 4.0 * alpha) * k / (48.0 * h)) * (-1.0 + 1.0 / h);
            d = -((1.0 + 4.0 * alpha) * k / (6.0 * h)) * (1.0 + 2.0 / h);
            e = ((1.0 + 4.0 * alpha) * k / (48.0 * h)) * (1.0 + 1.0 / h);
            break;
        case SchemeMatrix::A1:
            a = 1.0 - 5.0 * (1.0 - 2.0 * alpha) * k / (4.0 * h * h);
            b = -((1.0 - 2.0 * alpha) * k / (3.0 * h)) * (1.0 - 2.0 / h);
            c = -((1.0 - 2.0 * alpha) * k / (24.0 * h)) * (-1.0 + 1.0 / h);
            d = ((1.0 - 2.0 * alpha) * k / (3.0 * h)) * (1.0 + 2.0 / h);
            e = -((1.0 - 2.0 * alpha) * k / (24.0 * h)) * (1.0 + 1.0 / h);
            break;
        case SchemeMatrix::A2:
            a = 1.0 - 5.0 * (1.0 - 4.0 * alpha) * k / (8.0 * h * h);
            b = -((1.0 - 4.0 * alpha) * k / (6.0 * h)) * (1.0 - 2.0 / h);
            c = -((1.0 - 4.0 * alpha) * k / (48.0 * h)) * (-1.0 + 1.0 / h);
            d = ((1.0 - 4.0 * alpha) * k / (6.0 * h)) * (1.0 + 2.0 / h);
            e = -((1.0 - 4.0 * alpha) * k / (48.0 * h)) * (1.0 + 1.0 / h);
            break;
    }
    return {e, d, a, b, c};
}

Pentadiagonal assemble_printed(SchemeMatrix which, const Grid1D& grid, double k, double alpha) {
    const auto bands = printed_band_entries(which, k, grid.spacing(), alpha);
    const std::size_t n = grid.interior_size();
    Pentadiagonal p(n, Provenance::Printed);
    for (std::size_t i = 0; i < n; ++i) {
        for (int o = -2; o <= 2; ++o) {
            const long long j = static_cast<long long>(i) + o;
            if (j >= 0 && j < static_cast<long long>(n)) p.set_band(i, o, bands[static_cast<std::size_t>(o + 2)]);
        }
    }
    return p;
}

std::vector<double> matvec(const Pentadiagonal& p, std::span<const double> v) {
    if (v.size() != p.size()) throw DimensionError("matvec: vector length does not match matrix size");
    std::vector<double> out(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        double s = 0.0;
        for (int o = -2; o <= 2; ++o) {
            const long long j = static_cast<long long>(i) + o;
            if (j >= 0 && j < static_cast<long long>(p.size())) s += p.band(i, o) * v[static_cast<std::size_t>(j)];
        }
        out[i] = s;
    }
    return out;
}

}  // namespace vofrac
