#include "vofrac/caputo.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

double checked_pow(double base, double exponent) {
    if (base < 0.0) {
        std::ostringstream os;
        os << "negative base " << base << " in coefficient power";
        throw DomainError(os.str());
    }
    return std::pow(base, exponent);
}

void check_alpha_beta(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ParameterError("alpha must satisfy alpha ∈ (0, 1/2)");
    if (!(beta > 0.0 && beta < 2.0)) throw ParameterError("beta must lie in (0, 2)");
}

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
struct GaussRule {
    static constexpr int kOrder = 16;
    std::array<double, kOrder> x{};
    std::array<double, kOrder> w{};

    GaussRule() {
        for (int i = 0; i < kOrder; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = z;
                for (int k = 2; k <= kOrder; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kOrder * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[static_cast<std::size_t>(i)] = z;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussRule& gauss_rule() {
    static const GaussRule rule;
    return rule;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

double dtilde(double n_eff, int i, double alpha, double beta) {
    const double a = n_eff + alpha - i;
    return checked_pow(a, 1.0 - beta) - checked_pow(a - 1.0, 1.0 - beta);
}

double ftilde(double n_eff, int i, double alpha, double beta) {
    const double a = n_eff + alpha - i;
    const double b = a - 1.0;
    return 2.0 / (2.0 - beta) * (checked_pow(a, 2.0 - beta) - checked_pow(b, 2.0 - beta)) -
           0.5 * (checked_pow(a, 1.0 - beta) + 3.0 * checked_pow(b, 1.0 - beta));
}

double ftilde_endpoint(double alpha, double beta) { return checked_pow(alpha, 1.0 - beta); }

double ftilde_dot(int n, double alpha, double beta) {
    return checked_pow(n + 0.5 + alpha, 1.0 - beta) - checked_pow(n + alpha, 1.0 - beta);
}

double ftilde_half_start(double alpha, double beta) { return checked_pow(0.5 + alpha, 1.0 - beta); }

double start_coefficient(double alpha, double beta) { return 0.5 * checked_pow(alpha, -beta); }

std::size_t family_size(CoeffFamily family, int n) {
    if (n < 0) throw IndexError("coefficient family level n must be >= 0");
    const auto nn = static_cast<std::size_t>(n);
    return family == CoeffFamily::Int ? 2 * nn + 2 : 2 * nn + 1;
}

double a_coeff(CoeffFamily family, int n, HalfIndex p, double alpha, double beta, FamilyOptions options) {
    check_alpha_beta(alpha, beta);
    const auto size = static_cast<std::int64_t>(family_size(family, n));
    const std::int64_t m = p.twice() - 1;
    if (m < 0 || m >= size) {
        throw IndexError("a_coeff: index " + p.str() + " outside the family range 1/2.." +
                         HalfIndex::from_twice(size).str());
    }
    const int i = static_cast<int>(m / 2);
    if (family == CoeffFamily::Int) {
        const double lead = n + 1.0;
        if (m == size - 1) return ftilde(lead, n, alpha, beta) + ftilde_endpoint(alpha, beta);
        if (m % 2 == 0) return dtilde(lead, i, alpha, beta) - ftilde(lead, i, alpha, beta);
        return ftilde(lead, i, alpha, beta);
    }
    if (n == 0) {
        return options.seed == HalfSeed::AlphaSeed ? start_coefficient(alpha, beta)
                                                   : ftilde_half_start(alpha, beta);
    }
    const double lead = n;
    if (m == 0) return ftilde_dot(n, alpha, beta);
    if (m == size - 1) return ftilde(lead, n - 1, alpha, beta) + ftilde_endpoint(alpha, beta);
    if (options.layout == HalfLayout::Realigned) {
        if (m % 2 == 1) return dtilde(lead, i, alpha, beta) - ftilde(lead, i, alpha, beta);
        return ftilde(lead, i - 1, alpha, beta);
    }
    if (m % 2 == 0) return dtilde(lead, i, alpha, beta) - ftilde(lead, i, alpha, beta);
    return ftilde(lead, i, alpha, beta);
}

std::vector<double> family_weights(CoeffFamily family, int n, double alpha, double beta, FamilyOptions options) {
    KernelWorkspace ws(alpha, options);
    std::vector<double> out;
    ws.weights(family, n, beta, out);
    return out;
}

KernelWorkspace::KernelWorkspace(double alpha, FamilyOptions options) : alpha_(alpha), options_(options) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ParameterError("alpha must satisfy alpha ∈ (0, 1/2)");
}

void KernelWorkspace::prepare(int r_max, double beta) {
    const auto need = static_cast<std::size_t>(r_max + 1);
    while (log_.size() < need) log_.push_back(std::log(static_cast<double>(log_.size()) + alpha_));
    int start = 0;
    if (beta == cached_beta_) {
        if (r_max <= cached_r_) return;
        start = cached_r_ + 1;
    }
    p1_.resize(std::max(p1_.size(), need));
    p2_.resize(std::max(p2_.size(), need));
    const double e = 1.0 - beta;
    for (int r = start; r <= r_max; ++r) {
        const auto ru = static_cast<std::size_t>(r);
        p1_[ru] = std::exp(e * log_[ru]);
        p2_[ru] = (r + alpha_) * p1_[ru];
    }
    cached_beta_ = beta;
    cached_r_ = r_max;
}

void KernelWorkspace::weights(CoeffFamily family, int n, double beta, std::vector<double>& out) {
    if (!(beta > 0.0 && beta < 2.0)) throw ParameterError("beta must lie in (0, 2)");
    const std::size_t size = family_size(family, n);
    out.resize(size);
    prepare(n + 1, beta);
    const double c = 2.0 / (2.0 - beta);
    auto dt = [&](int r) { return p1(r) - p1(r - 1); };
    auto ft = [&](int r) { return c * (p2(r) - p2(r - 1)) - 0.5 * (p1(r) + 3.0 * p1(r - 1)); };

    if (family == CoeffFamily::Int) {
        for (int i = 0; i <= n; ++i) {
            const int r = n + 1 - i;
            const double f = ft(r);
            out[static_cast<std::size_t>(2 * i)] = dt(r) - f;
            if (i < n) out[static_cast<std::size_t>(2 * i + 1)] = f;
        }
        out[size - 1] = ft(1) + p1(0);
        return;
    }
    if (n == 0) {
        out[0] = options_.seed == HalfSeed::AlphaSeed ? start_coefficient(alpha_, beta)
                                                      : ftilde_half_start(alpha_, beta);
        return;
    }
    out[0] = std::pow(n + 0.5 + alpha_, 1.0 - beta) - p1(n);
    if (options_.layout == HalfLayout::Realigned) {
        for (int i = 0; i < n; ++i) {
            const int r = n - i;
            const double f = ft(r);
            out[static_cast<std::size_t>(2 * i + 1)] = dt(r) - f;
            if (i + 1 < n) out[static_cast<std::size_t>(2 * i + 2)] = f;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const int r = n - i;
            out[static_cast<std::size_t>(2 * i + 1)] = ft(r);
            if (i >= 1) out[static_cast<std::size_t>(2 * i)] = dt(r) - ft(r);
        }
    }
    out[size - 1] = ft(1) + p1(0);
}

ThetaWeights::ThetaWeights(std::size_t nodes, std::size_t count)
    : nodes_(nodes), count_(count), data_(nodes * count, 0.0) {}

double theta_scale(double k, double beta) {
    if (!(k > 0.0)) throw ParameterError("theta: k must be positive");
    return std::pow(k, 1.0 - beta) / gamma_fn(2.0 - beta);
}

ThetaWeights theta_weights(CoeffFamily family, int n, double k, std::span<const double> beta_per_node,
                           KernelWorkspace& workspace) {
    ThetaWeights tw(beta_per_node.size(), family_size(family, n));
    std::vector<double> a;
    for (std::size_t i = 0; i < beta_per_node.size(); ++i) {
        const double beta = beta_per_node[i];
        workspace.weights(family, n, beta, a);
        const double s = theta_scale(k, beta);
        auto row = tw.node(i);
        for (std::size_t m = 0; m < a.size(); ++m) row[m] = s * a[m];
    }
    return tw;
}

ThetaWeights theta_weights(CoeffFamily family, int n, double k, double alpha, std::span<const double> beta_per_node,
                           FamilyOptions options) {
    KernelWorkspace ws(alpha, options);
    return theta_weights(family, n, k, beta_per_node, ws);
}

double theta_start(double k, double alpha, double beta) {
    check_alpha_beta(alpha, beta);
    return theta_scale(k, beta) * start_coefficient(alpha, beta);
}

HistoryBuffer::HistoryBuffer(double k) : k_(k) {
    if (!(k > 0.0)) throw ParameterError("history: k must be positive");
}

void HistoryBuffer::append(GridField delta) {
    if (delta.level().twice() != static_cast<std::int64_t>(deltas_.size())) {
        throw StateError("history: expected delta_t at level " +
                         HalfIndex::from_twice(static_cast<std::int64_t>(deltas_.size())).str() + ", got " +
                         delta.level().str());
    }
    if (!deltas_.empty() && delta.size() != deltas_.front().size()) {
        throw DimensionError("history: field length changed during the march");
    }
    deltas_.push_back(std::move(delta));
}

double discrete_caputo(const HistoryBuffer& history, const ThetaWeights& weights, int j, std::size_t terms) {
    if (terms == static_cast<std::size_t>(-1)) terms = weights.count();
    if (terms > weights.count()) throw IndexError("discrete_caputo: more terms than weights");
    if (history.size() < terms) {
        throw StateError("discrete_caputo: history holds " + std::to_string(history.size()) +
                         " differences, " + std::to_string(terms) + " required");
    }
    const int node = j - Grid1D::first_interior();
    if (node < 0 || static_cast<std::size_t>(node) >= weights.nodes()) {
        throw IndexError("discrete_caputo: node " + std::to_string(j) + " has no weights");
    }
    const auto w = weights.node(static_cast<std::size_t>(node));
    const auto ju = static_cast<std::size_t>(j);
    double s = 0.0;
    for (std::size_t m = 0; m < terms; ++m) s += w[m] * history[m][ju];
    return s;
}

double caputo_quadrature_oracle(const std::function<double(double)>& derivative, double beta, double t_target,
                                int subdivisions) {
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("quadrature oracle: beta must lie in (0, 1)");
    if (t_target < 0.0) throw ParameterError("quadrature oracle: t must be nonnegative");
    if (subdivisions < 1) throw ParameterError("quadrature oracle: subdivisions must be positive");
    if (t_target == 0.0) return 0.0;
    const double q = 1.0 / (1.0 - beta);
    const double width = std::pow(t_target, 1.0 - beta);
    const auto& rule = gauss_rule();
    auto integrate = [&](int panels) {
        const double hw = width / panels;
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double mid = (p + 0.5) * hw;
            double s = 0.0;
            for (int g = 0; g < GaussRule::kOrder; ++g) {
                const double w = mid + 0.5 * hw * rule.x[static_cast<std::size_t>(g)];
                s += rule.w[static_cast<std::size_t>(g)] * derivative(t_target - std::pow(w, q));
            }
            total += 0.5 * hw * s;
        }
        return total;
    };
    double coarse = integrate(subdivisions);
    double diff = 0.0;
    for (int panels = 2 * subdivisions; panels <= subdivisions << 12; panels *= 2) {
        const double fine = integrate(panels);
        diff = std::abs(fine - coarse);
        if (diff <= 1e-8 * std::abs(fine) || diff <= 1e-15) return fine / gamma_fn(2.0 - beta);
        coarse = fine;
    }
    throw NumericError("quadrature oracle did not reach relative accuracy 1e-8", diff);
}

}  // namespace vofrac
