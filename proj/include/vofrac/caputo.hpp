#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vofrac/grid.hpp"

namespace vofrac {

/// Which target time a coefficient sequence serves.
enum class CoeffFamily {
    Half,  ///< a_{n+1/2, p}, target t_{n+1/2+alpha}, 2n+1 entries
    Int,   ///< a_{n+1, p}, target t_{n+1+alpha}, 2n+2 entries
};

/// Assignment of d~-f~ and f~ inside each quadratic pair of the half family.
enum class HalfLayout {
    Realigned,  ///< pairs [t_{i+1/2}, t_{i+3/2}]: half-integer l gets d~-f~
    Printed,    ///< literal case table: integer l gets d~-f~
};

/// Value of the single n = 0 entry of the half family.
enum class HalfSeed {
    AlphaSeed,  ///< (1/2) alpha^{-beta}
    Shifted,    ///< f~_{1/2,0} = (1/2 + alpha)^{1-beta}
};

struct FamilyOptions {
    HalfLayout layout = HalfLayout::Realigned;
    HalfSeed seed = HalfSeed::AlphaSeed;
};

/// Gamma function for positive arguments.
double gamma_fn(double x);

/// (n_eff+alpha-i)^{1-beta} - (n_eff+alpha-i-1)^{1-beta}.
double dtilde(double n_eff, int i, double alpha, double beta);

/// 2/(2-beta)[a^{2-beta} - (a-1)^{2-beta}] - 1/2[a^{1-beta} + 3(a-1)^{1-beta}], a = n_eff+alpha-i.
double ftilde(double n_eff, int i, double alpha, double beta);

/// f~_{., n} = alpha^{1-beta}.
double ftilde_endpoint(double alpha, double beta);

/// f-dot_{n+1/2,0} = (n+1/2+alpha)^{1-beta} - (n+alpha)^{1-beta}.
double ftilde_dot(int n, double alpha, double beta);

/// f~_{1/2,0} = (1/2+alpha)^{1-beta}.
double ftilde_half_start(double alpha, double beta);

/// (1/2) alpha^{-beta}: weight of the very first step at target t_alpha.
double start_coefficient(double alpha, double beta);

/// Number of entries of a family at level n (2n+1 or 2n+2).
std::size_t family_size(CoeffFamily family, int n);

/// a_{n+s, p} for p = 1/2, 1, ..., n+s, evaluated case by case.
double a_coeff(CoeffFamily family, int n, HalfIndex p, double alpha, double beta,
               FamilyOptions options = {});

/// All entries of a family; element m multiplies delta_t u^{m/2}, i.e. p = (m+1)/2.
std::vector<double> family_weights(CoeffFamily family, int n, double alpha, double beta,
                                   FamilyOptions options = {});

/// Reusable power tables for repeated family evaluation at a fixed alpha.
class KernelWorkspace {
public:
    explicit KernelWorkspace(double alpha, FamilyOptions options = {});

    double alpha() const { return alpha_; }
    const FamilyOptions& options() const { return options_; }

    /// Writes family_weights(family, n, alpha, beta) into out (resized).
    void weights(CoeffFamily family, int n, double beta, std::vector<double>& out);

private:
    void prepare(int r_max, double beta);
    double p1(int r) const { return p1_[static_cast<std::size_t>(r)]; }
    double p2(int r) const { return p2_[static_cast<std::size_t>(r)]; }

    double alpha_;
    FamilyOptions options_;
    std::vector<double> log_;  // log(r + alpha)
    std::vector<double> p1_;   // (r + alpha)^{1-beta}
    std::vector<double> p2_;   // (r + alpha)^{2-beta}
    double cached_beta_ = -1.0;
    int cached_r_ = -1;
};

/// Per-node theta weights k^{1-beta_j} Gamma(2-beta_j)^{-1} a_{n+s, l+1/2}.
class ThetaWeights {
public:
    ThetaWeights() = default;
    ThetaWeights(std::size_t nodes, std::size_t count);

    std::size_t nodes() const { return nodes_; }
    std::size_t count() const { return count_; }
    double at(std::size_t node, std::size_t m) const { return data_[node * count_ + m]; }
    double& at(std::size_t node, std::size_t m) { return data_[node * count_ + m]; }
    std::span<const double> node(std::size_t i) const { return {data_.data() + i * count_, count_}; }
    std::span<double> node(std::size_t i) { return {data_.data() + i * count_, count_}; }

private:
    std::size_t nodes_ = 0;
    std::size_t count_ = 0;
    std::vector<double> data_;
};

/// k^{1-beta} / Gamma(2-beta).
double theta_scale(double k, double beta);

/// Theta weights for interior nodes; beta_per_node holds beta at the target time.
ThetaWeights theta_weights(CoeffFamily family, int n, double k, std::span<const double> beta_per_node,
                           KernelWorkspace& workspace);
ThetaWeights theta_weights(CoeffFamily family, int n, double k, double alpha,
                           std::span<const double> beta_per_node, FamilyOptions options = {});

/// theta0 = k^{1-beta}/Gamma(2-beta) * (1/2) alpha^{-beta}.
double theta_start(double k, double alpha, double beta);

/// Append-only store of delta_t U^l, l = 0, 1/2, 1, ...
class HistoryBuffer {
public:
    explicit HistoryBuffer(double k);

    double step() const { return k_; }
    std::size_t size() const { return deltas_.size(); }
    bool empty() const { return deltas_.empty(); }
    const GridField& operator[](std::size_t m) const { return deltas_[m]; }
    /// Appends delta_t U^l; l must equal the next expected level.
    void append(GridField delta);
    void reserve(std::size_t n) { deltas_.reserve(n); }

private:
    double k_;
    std::vector<GridField> deltas_;
};

/// sum_{m < terms} theta_{m}(node) delta_t U^{m/2}_j, with node = j - 2.
/// terms defaults to weights.count().
double discrete_caputo(const HistoryBuffer& history, const ThetaWeights& weights, int j,
                       std::size_t terms = static_cast<std::size_t>(-1));

/// Gamma(1-beta)^{-1} int_0^t u'(s) (t-s)^{-beta} ds by composite Gauss-Legendre after
/// the substitution t - s = w^{1/(1-beta)}. derivative is u'.
double caputo_quadrature_oracle(const std::function<double(double)>& derivative, double beta,
                                double t_target, int subdivisions = 128);

}  // namespace vofrac
