#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vofrac {

/// Exact half-integer index stored as twice its value.
///
/// Used both for time levels l in {0, 1/2, 1, ...} and for half-node
/// positions j +- 1/2 in space.
class HalfIndex {
public:
    constexpr HalfIndex() = default;

    static constexpr HalfIndex whole(std::int64_t n) { return HalfIndex(2 * n); }
    static constexpr HalfIndex half_above(std::int64_t n) { return HalfIndex(2 * n + 1); }
    static constexpr HalfIndex from_twice(std::int64_t m) { return HalfIndex(m); }

    constexpr std::int64_t twice() const { return twice_; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
    constexpr bool is_whole() const { return twice_ % 2 == 0; }
    /// Integer part for whole indices, lower neighbour for half indices.
    constexpr std::int64_t floor() const {
        return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2);
    }
    constexpr HalfIndex next() const { return HalfIndex(twice_ + 1); }
    constexpr HalfIndex prev() const { return HalfIndex(twice_ - 1); }

    constexpr auto operator<=>(const HalfIndex&) const = default;

    std::string str() const;

private:
    constexpr explicit HalfIndex(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

/// Uniform space mesh x_j = L0 + j h, j = 0..M.
class Grid1D {
public:
    static constexpr int kMinIntervals = 4;

    Grid1D(double left, double right, int intervals);

    double left() const { return left_; }
    double right() const { return right_; }
    int intervals() const { return m_; }
    double spacing() const { return h_; }
    double node(int j) const;
    std::vector<double> nodes() const;

    /// Interior unknowns j = 2..M-2.
    static constexpr int first_interior() { return 2; }
    int last_interior() const { return m_ - 2; }
    std::size_t interior_size() const { return static_cast<std::size_t>(m_ - 3); }

private:
    double left_;
    double right_;
    int m_;
    double h_;
};

/// Time axis with full step k = T/N and shift alpha in (0, 1/2).
class TimeMesh {
public:
    TimeMesh(double final_time, int steps, double alpha);

    double final_time() const { return t_; }
    int steps() const { return n_; }
    double step() const { return k_; }
    double alpha() const { return alpha_; }

    /// t_l = l k.
    double time(HalfIndex level) const { return level.value() * k_; }
    /// t_{l+alpha} = (l + alpha) k.
    double shifted_time(HalfIndex level) const { return (level.value() + alpha_) * k_; }

private:
    double t_;
    int n_;
    double k_;
    double alpha_;
};

/// Values on nodes x_0..x_M tagged with the time level they represent.
class GridField {
public:
    GridField() = default;
    GridField(std::vector<double> values, HalfIndex level);
    /// Zero field of length M+1.
    GridField(const Grid1D& grid, HalfIndex level);

    std::size_t size() const { return values_.size(); }
    HalfIndex level() const { return level_; }
    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    /// Copy of entries j = 2..M-2.
    std::vector<double> interior() const;

    bool all_finite() const;

private:
    std::vector<double> values_;
    HalfIndex level_;
};

/// (h sum_{j=2}^{M-2} u_j^2)^{1/2}.
double discrete_l2_norm(std::span<const double> u, const Grid1D& grid);
double discrete_l2_norm(const GridField& u, const Grid1D& grid);

/// h sum_{j=2}^{M-2} u_j v_j.
double inner_product(std::span<const double> u, std::span<const double> v, const Grid1D& grid);
double inner_product(const GridField& u, const GridField& v, const Grid1D& grid);

/// (u_next - u_curr) / (k/2), tagged with the level of u_curr.
GridField delta_t(const GridField& u_next, const GridField& u_curr, double k);

/// delta_x u at a half node p = j + 1/2: (u_{j+1} - u_j) / h.
double delta_x_centered_half(std::span<const double> u, HalfIndex half_node, double h);

/// h sum over half nodes 3/2..M-3/2 of delta_x u * delta_x v.
double difference_inner_product(std::span<const double> u, std::span<const double> v,
                                const Grid1D& grid);
/// Square root of difference_inner_product(u, u).
double difference_norm(std::span<const double> u, const Grid1D& grid);

/// max over the supplied levels of discrete_l2_norm.
double sup_l2_over_time(std::span<const GridField> fields, const Grid1D& grid);

/// log2(err_coarse / err_fine).
double convergence_rate(double err_coarse, double err_fine);

}  // namespace vofrac
