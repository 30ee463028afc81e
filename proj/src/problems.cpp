#include "vofrac/problems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vofrac/caputo.hpp"
#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

constexpr double kPi = std::numbers::pi;

void check_compatibility(const ProblemSpec& p) {
    if (std::abs(p.initial(p.left) - p.left_boundary(0.0)) > 1e-12 ||
        std::abs(p.initial(p.right) - p.right_boundary(0.0)) > 1e-12) {
        throw ParameterError("problem " + p.name + ": initial and boundary data disagree at the corners");
    }
    if (p.exact) {
        for (int i = 0; i <= 100; ++i) {
            const double x = p.left + (p.right - p.left) * i / 100.0;
            if (std::abs((*p.exact)(x, 0.0) - p.initial(x)) > 1e-12) {
                throw ParameterError("problem " + p.name + ": exact solution does not match u0");
            }
        }
    }
}

void check_residual(const ProblemSpec& p) {
    for (int a = 1; a < 5; ++a) {
        for (int b = 1; b < 5; ++b) {
            const double x = p.left + (p.right - p.left) * a / 5.0;
            const double t = p.final_time * b / 5.0;
            const double r = pde_residual(p, x, t);
            if (!(std::abs(r) <= 1e-8)) {
                std::ostringstream os;
                os << "problem " << p.name << ": source inconsistent with exact solution at (" << x << ", " << t
                   << "), residual " << r;
                throw StateError(os.str());
            }
        }
    }
}

SpatialProfile quartic_profile(double scale) {
    return {[scale](double x) { return scale * x * x * (1 - x) * (1 - x); },
            [scale](double x) { return scale * (2 * x - 6 * x * x + 4 * x * x * x); },
            [scale](double x) { return scale * (2 - 12 * x + 12 * x * x); }};
}

SpatialProfile sine_profile(double scale) {
    return {[scale](double x) { return scale * std::sin(kPi * x); },
            [scale](double x) { return scale * kPi * std::cos(kPi * x); },
            [scale](double x) { return -scale * kPi * kPi * std::sin(kPi * x); }};
}

SpatialProfile zero_profile() {
    auto z = [](double) { return 0.0; };
    return {z, z, z};
}

double beta_example1(double x, double t) { return 1.0 - 0.5 * std::exp(-x * t); }
double beta_example2(double x, double t) { return 4.0 / 3.0 - 5e-3 * std::cos(x * t) * std::sin(x * t); }

}  // namespace

TemporalProfile linear_time() {
    return {"1+t", [](double t) { return 1.0 + t; }, [](double) { return 1.0; },
            [](double t, double beta) { return t <= 0.0 ? 0.0 : std::pow(t, 1.0 - beta) / gamma_fn(2.0 - beta); }};
}

TemporalProfile quadratic_time() {
    return {"1+t+t^2", [](double t) { return 1.0 + t + t * t; }, [](double t) { return 1.0 + 2.0 * t; },
            [](double t, double beta) {
                if (t <= 0.0) return 0.0;
                return std::pow(t, 1.0 - beta) / gamma_fn(2.0 - beta) +
                       2.0 * std::pow(t, 2.0 - beta) / gamma_fn(3.0 - beta);
            }};
}

ProblemSpec manufactured(const SpatialProfile& g, SpaceTimeFunction beta, std::string beta_name, Domain domain,
                         TemporalProfile time) {
    if (!g.g || !g.dg || !g.d2g) throw ParameterError("manufactured: g, g' and g'' must all be supplied");
    if (!beta) throw ParameterError("manufactured: beta must be supplied");
    ProblemSpec p;
    p.name = "manufactured";
    p.left = domain.left;
    p.right = domain.right;
    p.final_time = domain.final_time;
    p.beta = beta;
    p.beta_name = std::move(beta_name);
    const auto tp = time;
    p.source = [g, beta, tp](double x, double t) {
        const double gx = g.g(x);
        const double pt = tp.p(t);
        return tp.dp(t) * gx + gx * tp.caputo(t, beta(x, t)) + pt * g.dg(x) - pt * g.d2g(x);
    };
    p.initial = [g, tp](double x) { return tp.p(0.0) * g.g(x); };
    p.left_boundary = [g, tp, l = domain.left](double t) { return tp.p(t) * g.g(l); };
    p.right_boundary = [g, tp, r = domain.right](double t) { return tp.p(t) * g.g(r); };
    p.exact = [g, tp](double x, double t) { return tp.p(t) * g.g(x); };
    p.profile = g;
    p.time_profile = tp;
    check_compatibility(p);
    return p;
}

ProblemSpec example1() {
    ProblemSpec p;
    p.name = "example1";
    p.beta = beta_example1;
    p.beta_name = "1-exp(-xt)/2";
    p.source = [](double x, double t) {
        const double b = beta_example1(x, t);
        const double q = 10 * x * x * (1 - x) * (1 - x);
        const double caputo = t <= 0.0 ? 0.0 : q * std::pow(t, 1 - b) / gamma_fn(2 - b);
        return q + caputo + 10 * (1 + t) * (2 * x - 6 * x * x + 4 * x * x * x) -
               10 * (1 + t) * (2 - 12 * x + 12 * x * x);
    };
    p.initial = [](double x) { return 10 * x * x * (1 - x) * (1 - x); };
    p.left_boundary = [](double) { return 0.0; };
    p.right_boundary = [](double) { return 0.0; };
    p.exact = [](double x, double t) { return 10 * (1 + t) * x * x * (1 - x) * (1 - x); };
    p.profile = quartic_profile(10.0);
    p.time_profile = linear_time();
    check_compatibility(p);
    check_residual(p);
    return p;
}

ProblemSpec example2() {
    ProblemSpec p = manufactured(sine_profile(5.0), beta_example2, "4/3-0.005cos(xt)sin(xt)");
    p.name = "example2";
    p.order_constraint_violated = true;
    check_residual(p);
    return p;
}

double example2_printed_source(double x, double t) {
    const double b = beta_example2(x, t);
    const double s = std::sin(kPi * x);
    const double caputo = t <= 0.0 ? 0.0 : 5 * s * std::pow(t, 1 - b) / gamma_fn(2 - b);
    return 5 * (1 + kPi * kPi * (1 + t)) * s + caputo - 5 * kPi * (1 + t) * std::cos(kPi * x);
}

double pde_residual(const ProblemSpec& problem, double x, double t) {
    if (!problem.profile || !problem.time_profile) {
        throw StateError("pde_residual: problem " + problem.name + " has no separable exact solution");
    }
    const auto& g = *problem.profile;
    const auto& tp = *problem.time_profile;
    const double gx = g.g(x);
    const double pt = tp.p(t);
    const double ut = tp.dp(t) * gx;
    const double cd = gx * tp.caputo(t, problem.beta(x, t));
    return ut + cd + pt * g.dg(x) - pt * g.d2g(x) - problem.source(x, t);
}

ProblemSpec resolve_problem(std::string_view name) {
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    constexpr std::string_view prefix = "manufactured:";
    if (name.substr(0, prefix.size()) != prefix) {
        throw ParameterError("unknown problem '" + std::string(name) + "'");
    }
    std::string preset(name.substr(prefix.size()));
    std::optional<double> beta_value;
    if (const auto at = preset.find('@'); at != std::string::npos) {
        const std::string num = preset.substr(at + 1);
        preset = preset.substr(0, at);
        try {
            std::size_t used = 0;
            beta_value = std::stod(num, &used);
            if (used != num.size()) throw std::invalid_argument(num);
        } catch (const std::exception&) {
            throw ParameterError("problem: cannot parse beta value '" + num + "'");
        }
        if (!(*beta_value > 0.0 && *beta_value < 2.0)) throw ParameterError("problem: beta must lie in (0, 2)");
    }
    const double b = beta_value.value_or(0.5);
    auto constant = [b](double, double) { return b; };
    std::ostringstream bn;
    bn << b;
    ProblemSpec p;
    if (preset == "quartic") {
        if (beta_value) {
            p = manufactured(quartic_profile(10.0), constant, bn.str());
        } else {
            p = manufactured(quartic_profile(10.0), beta_example1, "1-exp(-xt)/2");
        }
    } else if (preset == "sine") {
        p = manufactured(sine_profile(1.0), constant, bn.str());
    } else if (preset == "sine-quadratic-time") {
        p = manufactured(sine_profile(1.0), constant, bn.str(), {}, quadratic_time());
    } else if (preset == "zero") {
        p = manufactured(zero_profile(), constant, bn.str());
    } else {
        throw ParameterError("unknown manufactured preset '" + preset + "'");
    }
    if (beta_value || preset != "quartic") p.constant_beta = b;
    p.order_constraint_violated = b >= 1.0;
    p.name = std::string(name);
    return p;
}

std::vector<std::string> problem_names() {
    return {"example1", "example2", "manufactured:quartic", "manufactured:sine", "manufactured:sine-quadratic-time",
            "manufactured:zero"};
}

}  // namespace vofrac
