#include "vofrac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

void require_length(std::size_t n, const Grid1D& grid, const char* what) {
    if (n != static_cast<std::size_t>(grid.intervals() + 1)) {
        std::ostringstream os;
        os << what << ": field length " << n << " does not match M+1 = " << grid.intervals() + 1;
        throw DimensionError(os.str());
    }
}

}  // namespace

std::string HalfIndex::str() const {
    std::ostringstream os;
    if (is_whole()) {
        os << twice_ / 2;
    } else {
        os << twice_ << "/2";
    }
    return os.str();
}

Grid1D::Grid1D(double left, double right, int intervals) : left_(left), right_(right), m_(intervals) {
    if (!std::isfinite(left) || !std::isfinite(right) || !(right > left)) {
        throw ParameterError("grid: need finite endpoints with L > L0");
    }
    if (intervals < kMinIntervals) {
        throw ParameterError("grid: M must be >= 4 so that interior nodes j = 2..M-2 exist (got M = " +
                             std::to_string(intervals) + ")");
    }
    h_ = (right - left) / intervals;
}

double Grid1D::node(int j) const {
    if (j < 0 || j > m_) {
        throw IndexError("grid: node index " + std::to_string(j) + " outside 0.." + std::to_string(m_));
    }
    return j == m_ ? right_ : left_ + j * h_;
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> x(static_cast<std::size_t>(m_ + 1));
    for (int j = 0; j <= m_; ++j) x[static_cast<std::size_t>(j)] = node(j);
    return x;
}

TimeMesh::TimeMesh(double final_time, int steps, double alpha) : t_(final_time), n_(steps), alpha_(alpha) {
    if (!(final_time > 0) || !std::isfinite(final_time)) {
        throw ParameterError("time mesh: T must be positive and finite");
    }
    if (steps < 1) throw ParameterError("time mesh: N must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw ParameterError("time mesh: alpha must satisfy alpha ∈ (0, 1/2)");
    }
    k_ = final_time / steps;
}

GridField::GridField(std::vector<double> values, HalfIndex level) : values_(std::move(values)), level_(level) {}

GridField::GridField(const Grid1D& grid, HalfIndex level)
    : values_(static_cast<std::size_t>(grid.intervals() + 1), 0.0), level_(level) {}

std::vector<double> GridField::interior() const {
    if (values_.size() < 5) throw DimensionError("field too short for interior extraction");
    return {values_.begin() + 2, values_.end() - 2};
}

bool GridField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double discrete_l2_norm(std::span<const double> u, const Grid1D& grid) {
    return std::sqrt(inner_product(u, u, grid));
}

double discrete_l2_norm(const GridField& u, const Grid1D& grid) { return discrete_l2_norm(u.values(), grid); }

double inner_product(std::span<const double> u, std::span<const double> v, const Grid1D& grid) {
    require_length(u.size(), grid, "inner product");
    require_length(v.size(), grid, "inner product");
    double s = 0.0;
    for (int j = 2; j <= grid.intervals() - 2; ++j) {
        s += u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
    }
    return grid.spacing() * s;
}

double inner_product(const GridField& u, const GridField& v, const Grid1D& grid) {
    return inner_product(u.values(), v.values(), grid);
}

GridField delta_t(const GridField& u_next, const GridField& u_curr, double k) {
    if (!(k > 0)) throw ParameterError("delta_t: k must be positive");
    if (u_next.size() != u_curr.size()) throw DimensionError("delta_t: field lengths differ");
    std::vector<double> d(u_curr.size());
    const double scale = 2.0 / k;
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = (u_next[j] - u_curr[j]) * scale;
    return GridField(std::move(d), u_curr.level());
}

double delta_x_centered_half(std::span<const double> u, HalfIndex half_node, double h) {
    if (half_node.is_whole()) {
        throw IndexError("delta_x: index " + half_node.str() + " is not a half node");
    }
    if (!(h > 0)) throw ParameterError("delta_x: h must be positive");
    const std::int64_t j = half_node.floor();
    if (j < 0 || j + 1 >= static_cast<std::int64_t>(u.size())) {
        throw IndexError("delta_x: half node " + half_node.str() + " has no neighbours in the field");
    }
    return (u[static_cast<std::size_t>(j + 1)] - u[static_cast<std::size_t>(j)]) / h;
}

double difference_inner_product(std::span<const double> u, std::span<const double> v, const Grid1D& grid) {
    require_length(u.size(), grid, "difference inner product");
    require_length(v.size(), grid, "difference inner product");
    const double h = grid.spacing();
    double s = 0.0;
    for (int j = 2; j <= grid.intervals() - 1; ++j) {
        const auto p = HalfIndex::half_above(j - 1);
        s += delta_x_centered_half(u, p, h) * delta_x_centered_half(v, p, h);
    }
    return h * s;
}

double difference_norm(std::span<const double> u, const Grid1D& grid) {
    return std::sqrt(difference_inner_product(u, u, grid));
}

double sup_l2_over_time(std::span<const GridField> fields, const Grid1D& grid) {
    if (fields.empty()) throw ParameterError("sup_l2_over_time: empty sequence");
    double m = 0.0;
    for (const auto& f : fields) m = std::max(m, discrete_l2_norm(f, grid));
    return m;
}

double convergence_rate(double err_coarse, double err_fine) {
    if (!(err_coarse > 0) || !(err_fine > 0)) {
        throw ParameterError("convergence_rate: errors must be positive");
    }
    return std::log2(err_coarse / err_fine);
}

}  // namespace vofrac
