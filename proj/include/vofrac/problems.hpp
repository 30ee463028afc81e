#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vofrac {

using SpaceFunction = std::function<double(double)>;
using TimeFunction = std::function<double(double)>;
using SpaceTimeFunction = std::function<double(double, double)>;

/// g(x) with its first two derivatives.
struct SpatialProfile {
    SpaceFunction g;
    SpaceFunction dg;
    SpaceFunction d2g;
};

/// p(t) with p'(t) and its closed-form Caputo derivative of order beta.
struct TemporalProfile {
    std::string name;
    TimeFunction p;
    TimeFunction dp;
    SpaceTimeFunction caputo;  ///< (t, beta) -> cD^beta p(t)
};

/// p(t) = 1 + t.
TemporalProfile linear_time();
/// p(t) = 1 + t + t^2.
TemporalProfile quadratic_time();

/// PDE instance u_t + cD^beta u = -u_x + u_xx + f on [L0, L] x [0, T].
struct ProblemSpec {
    std::string name;
    double left = 0.0;
    double right = 1.0;
    double final_time = 1.0;
    SpaceTimeFunction beta;
    std::string beta_name;
    std::optional<double> constant_beta;
    SpaceTimeFunction source;
    SpaceFunction initial;
    TimeFunction left_boundary;
    TimeFunction right_boundary;
    std::optional<SpaceTimeFunction> exact;
    /// Separable form p(t) g(x) of the exact solution, when known.
    std::optional<SpatialProfile> profile;
    std::optional<TemporalProfile> time_profile;
    /// beta leaves (0, 1) somewhere on the domain.
    bool order_constraint_violated = false;
};

struct Domain {
    double left = 0.0;
    double right = 1.0;
    double final_time = 1.0;
};

/// Exact solution p(t) g(x) and the source generated from it.
ProblemSpec manufactured(const SpatialProfile& g, SpaceTimeFunction beta, std::string beta_name, Domain domain = {},
                         TemporalProfile time = linear_time());

/// beta = 1 - e^{-xt}/2, u = 10(1+t)x^2(1-x)^2, source as published.
ProblemSpec example1();
/// beta = 4/3 - 0.005 cos(xt) sin(xt), u = 5(1+t) sin(pi x), source regenerated from u.
ProblemSpec example2();
/// The published Example 2 source, kept for comparison only.
double example2_printed_source(double x, double t);

/// u_t + cD u + u_x - u_xx - f using the separable exact solution.
double pde_residual(const ProblemSpec& problem, double x, double t);

/// "example1", "example2", "manufactured:<preset>[@beta]".
ProblemSpec resolve_problem(std::string_view name);
std::vector<std::string> problem_names();

}  // namespace vofrac
