#include "vofrac/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

template <class E>
E parse_enum(std::string_view s, std::initializer_list<std::pair<std::string_view, E>> table, const char* what) {
    for (const auto& [name, value] : table) {
        if (s == name) return value;
    }
    std::string msg = std::string("unknown ") + what + " '" + std::string(s) + "' (expected";
    for (const auto& [name, value] : table) msg += " " + std::string(name);
    throw ParameterError(msg + ")");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(SchemeVariant v) { return v == SchemeVariant::Derived ? "derived" : "assembled"; }
std::string to_string(NearBoundaryRule r) { return r == NearBoundaryRule::Exact ? "exact" : "pin"; }
std::string to_string(SolverKind s) { return s == SolverKind::BandedLU ? "lu" : "gmres"; }
std::string to_string(HalfLayout l) { return l == HalfLayout::Realigned ? "realigned" : "printed"; }
std::string to_string(HalfSeed s) { return s == HalfSeed::AlphaSeed ? "alpha" : "shifted"; }
std::string to_string(Preconditioner p) {
    switch (p) {
        case Preconditioner::None: return "none";
        case Preconditioner::Jacobi: return "jacobi";
        case Preconditioner::ILU0: return "ilu0";
    }
    return "none";
}

SchemeVariant parse_variant(std::string_view s) {
    return parse_enum<SchemeVariant>(s, {{"derived", SchemeVariant::Derived}, {"assembled", SchemeVariant::Assembled}},
                                     "variant");
}
NearBoundaryRule parse_near_boundary(std::string_view s) {
    return parse_enum<NearBoundaryRule>(s, {{"exact", NearBoundaryRule::Exact}, {"pin", NearBoundaryRule::Pin}},
                                        "near-boundary rule");
}
SolverKind parse_solver(std::string_view s) {
    return parse_enum<SolverKind>(s, {{"lu", SolverKind::BandedLU}, {"gmres", SolverKind::Gmres}}, "solver");
}
HalfLayout parse_layout(std::string_view s) {
    return parse_enum<HalfLayout>(s, {{"realigned", HalfLayout::Realigned}, {"printed", HalfLayout::Printed}},
                                  "half layout");
}
HalfSeed parse_seed(std::string_view s) {
    return parse_enum<HalfSeed>(s, {{"alpha", HalfSeed::AlphaSeed}, {"shifted", HalfSeed::Shifted}}, "half seed");
}
Preconditioner parse_preconditioner(std::string_view s) {
    return parse_enum<Preconditioner>(
        s, {{"none", Preconditioner::None}, {"jacobi", Preconditioner::Jacobi}, {"ilu0", Preconditioner::ILU0}},
        "preconditioner");
}

struct MarchState::Factors {
    struct Entry {
        Pentadiagonal base;
        std::optional<BandedLU> base_lu;
        std::vector<double> shift;
        std::optional<Pentadiagonal> shifted;
        std::optional<BandedLU> shifted_lu;
    };
    Entry a0;
    Entry a;
};

MarchState::MarchState(ProblemSpec problem, Grid1D grid, TimeMesh mesh, SchemeConfig config)
    : problem_(std::move(problem)),
      grid_(grid),
      mesh_(mesh),
      config_(config),
      x_(grid.nodes()),
      history_(mesh.step()),
      workspace_(mesh.alpha(), config.coefficients),
      factors_(std::make_unique<Factors>()) {
    if (config_.near_boundary == NearBoundaryRule::Exact && !problem_.exact) {
        throw ParameterError("near-boundary rule 'exact' needs a problem with an exact solution");
    }
    const double k = mesh_.step();
    const double alpha = mesh_.alpha();
    for (auto [which, entry] : {std::pair{SchemeMatrix::A0, &factors_->a0}, std::pair{SchemeMatrix::A, &factors_->a}}) {
        const auto mc = scheme_matrix_coefficient(which, k, alpha);
        entry->base = assemble_operator_matrix(grid_, mc.c, mc.side);
    }
    history_.reserve(2 * static_cast<std::size_t>(mesh_.steps()) + 1);

    GridField u0(grid_, HalfIndex::whole(0));
    for (std::size_t j = 0; j < x_.size(); ++j) u0[j] = problem_.initial(x_[j]);
    const auto b = boundary_values(HalfIndex::whole(0));
    const auto m = static_cast<std::size_t>(grid_.intervals());
    u0[0] = b[0];
    u0[1] = b[1];
    u0[m - 1] = b[2];
    u0[m] = b[3];
    current_ = std::move(u0);
    if (config_.retain_fields) retained_.push_back(current_);
    record_norms(current_);
}

MarchState::~MarchState() = default;
MarchState::MarchState(MarchState&&) noexcept = default;
MarchState& MarchState::operator=(MarchState&&) noexcept = default;

std::array<double, 4> MarchState::boundary_values(HalfIndex level) const {
    const double t = mesh_.time(level);
    const double g1 = problem_.left_boundary(t);
    const double g2 = problem_.right_boundary(t);
    if (config_.near_boundary == NearBoundaryRule::Pin) return {g1, g1, g2, g2};
    const auto m = static_cast<std::size_t>(grid_.intervals());
    return {g1, (*problem_.exact)(x_[1], t), (*problem_.exact)(x_[m - 1], t), g2};
}

std::vector<double> MarchState::betas_at(double t) const {
    std::vector<double> b(grid_.interior_size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = problem_.beta(x_[i + 2], t);
    return b;
}

std::vector<double> MarchState::sources_at(double t) const {
    std::vector<double> f(grid_.interior_size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = problem_.source(x_[i + 2], t);
    return f;
}

void MarchState::record_norms(const GridField& u) {
    LevelNorms ln;
    ln.level = u.level();
    ln.time = mesh_.time(u.level());
    ln.norm_U = discrete_l2_norm(u, grid_);
    if (problem_.exact) {
        std::vector<double> ex(x_.size()), e(x_.size());
        for (std::size_t j = 0; j < x_.size(); ++j) {
            ex[j] = (*problem_.exact)(x_[j], ln.time);
            e[j] = ex[j] - u[j];
        }
        ln.norm_u = discrete_l2_norm(ex, grid_);
        ln.norm_e = discrete_l2_norm(e, grid_);
    } else {
        ln.norm_u = kNaN;
        ln.norm_e = kNaN;
    }
    series_.push_back(ln);
}

GridField MarchState::solve_level(HalfIndex target, SchemeMatrix lhs, const std::vector<double>& shift,
                                  std::vector<double> rhs) {
    const auto mc = scheme_matrix_coefficient(lhs, mesh_.step(), mesh_.alpha());
    GridField next(grid_, target);
    const auto b = boundary_values(target);
    const auto m = static_cast<std::size_t>(grid_.intervals());
    next[0] = b[0];
    next[1] = b[1];
    next[m - 1] = b[2];
    next[m] = b[3];
    const auto lift = boundary_contribution(next.values(), grid_.spacing(), mc.c, mc.side);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= lift[i];

    auto& entry = lhs == SchemeMatrix::A0 ? factors_->a0 : factors_->a;
    const bool shifted = std::any_of(shift.begin(), shift.end(), [](double s) { return s != 0.0; });
    const Pentadiagonal* matrix = &entry.base;
    if (shifted) {
        if (!entry.shifted || entry.shift != shift) {
            entry.shift = shift;
            entry.shifted = entry.base.with_diagonal_shift(shift);
            entry.shifted_lu.reset();
        }
        matrix = &*entry.shifted;
    }

    std::vector<double> sol;
    double residual = 0.0;
    try {
        if (config_.solver == SolverKind::BandedLU) {
            auto& lu = shifted ? entry.shifted_lu : entry.base_lu;
            if (!lu) {
                lu.emplace(*matrix);
                ++stats_.factorizations;
            }
            sol = lu->solve(rhs);
            residual = relative_residual(*matrix, sol, rhs);
        } else {
            auto res = gmres_solve(*matrix, rhs, config_.gmres);
            stats_.gmres_iterations += static_cast<std::size_t>(res.iterations);
            residual = res.residual;
            sol = std::move(res.x);
        }
    } catch (const ConvergenceError& e) {
        throw StepError("step to level " + target.str() + " failed: " + e.what(), target.twice(), e.residual());
    } catch (const SingularMatrixError& e) {
        throw StepError("step to level " + target.str() + " failed: " + e.what(), target.twice(), kNaN);
    }
    ++stats_.systems;
    if (std::isfinite(residual)) stats_.max_residual = std::max(stats_.max_residual, residual);
    for (std::size_t i = 0; i < sol.size(); ++i) next[i + 2] = sol[i];

    if (config_.record_systems) systems_.push_back({target, *matrix, rhs, sol});
    history_.append(delta_t(next, current_, mesh_.step()));
    current_ = next;
    if (config_.retain_fields) retained_.push_back(current_);
    record_norms(current_);
    return next;
}

GridField first_step_initial(MarchState& s) {
    if (s.level() != HalfIndex::whole(0)) throw StateError("first_step_initial: state is not at level 0");
    const double k = s.mesh_.step();
    const double alpha = s.mesh_.alpha();
    const double t = alpha * k;
    const auto betas = s.betas_at(t);
    const auto f = s.sources_at(t);
    const auto a1 = scheme_matrix_coefficient(SchemeMatrix::A1, k, alpha);
    auto rhs = apply_operator(s.current_.values(), s.grid_.spacing(), a1.c, a1.side);
    const double factor = s.config_.variant == SchemeVariant::Derived ? alpha * k : k;
    std::vector<double> shift(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        shift[i] = factor * theta_start(k, alpha, betas[i]) * 2.0 / k;
        rhs[i] += 0.5 * k * f[i] + shift[i] * s.current_[i + 2];
    }
    return s.solve_level(HalfIndex::half_above(0), SchemeMatrix::A0, shift, std::move(rhs));
}

GridField first_step(MarchState& s, int n) {
    if (n < 1) throw ParameterError("first_step: n must be >= 1 (use first_step_initial for n = 0)");
    if (s.level() != HalfIndex::whole(n)) {
        throw StateError("first_step: state is at level " + s.level().str() + ", expected " + std::to_string(n));
    }
    const double k = s.mesh_.step();
    const double alpha = s.mesh_.alpha();
    const double t = (n + alpha) * k;
    const auto betas = s.betas_at(t);
    const auto f = s.sources_at(t);
    const auto theta = theta_weights(CoeffFamily::Int, n - 1, k, betas, s.workspace_);
    const auto a1 = scheme_matrix_coefficient(SchemeMatrix::A1, k, alpha);
    auto rhs = apply_operator(s.current_.values(), s.grid_.spacing(), a1.c, a1.side);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        const int j = static_cast<int>(i) + 2;
        rhs[i] += 0.5 * k * (f[i] - discrete_caputo(s.history_, theta, j));
    }
    return s.solve_level(HalfIndex::half_above(n), SchemeMatrix::A0, std::vector<double>(rhs.size(), 0.0),
                         std::move(rhs));
}

GridField second_step(MarchState& s, int n) {
    if (n < 0) throw ParameterError("second_step: n must be >= 0");
    if (s.level() != HalfIndex::half_above(n)) {
        throw StateError("second_step: state is at level " + s.level().str() + ", expected " +
                         HalfIndex::half_above(n).str());
    }
    const double k = s.mesh_.step();
    const double alpha = s.mesh_.alpha();
    const double t_full = (n + 1 + alpha) * k;
    const double t_half = (n + 0.5 + alpha) * k;
    const auto b_full = s.betas_at(t_full);
    const auto b_half = s.betas_at(t_half);
    const auto f_full = s.sources_at(t_full);
    const auto f_half = s.sources_at(t_half);
    const auto th_full = theta_weights(CoeffFamily::Int, n, k, b_full, s.workspace_);
    const auto th_half = theta_weights(CoeffFamily::Half, n, k, b_half, s.workspace_);
    const double factor = s.config_.variant == SchemeVariant::Derived ? k / 4.0 : k / (4.0 * (1.0 + 2.0 * alpha));
    const auto a2 = scheme_matrix_coefficient(SchemeMatrix::A2, k, alpha);
    auto rhs = apply_operator(s.current_.values(), s.grid_.spacing(), a2.c, a2.side);
    const std::size_t explicit_terms = th_full.count() - 1;
    std::vector<double> shift(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        const int j = static_cast<int>(i) + 2;
        const double hist = discrete_caputo(s.history_, th_full, j, explicit_terms) +
                            discrete_caputo(s.history_, th_half, j);
        shift[i] = factor * th_full.at(i, explicit_terms) * 2.0 / k;
        rhs[i] += 0.25 * k * (f_full[i] + f_half[i]) - factor * hist + shift[i] * s.current_[i + 2];
    }
    return s.solve_level(HalfIndex::whole(n + 1), SchemeMatrix::A, shift, std::move(rhs));
}

MarchResult march(const ProblemSpec& problem, const Grid1D& grid, const TimeMesh& mesh, const SchemeConfig& config) {
    MarchState state(problem, grid, mesh, config);
    MarchResult r;
    r.has_exact = problem.exact.has_value();
    auto finite = [](const GridField& u) { return u.all_finite(); };
    bool ok = finite(first_step_initial(state)) && finite(second_step(state, 0));
    for (int n = 1; ok && n < mesh.steps(); ++n) {
        ok = finite(first_step(state, n)) && finite(second_step(state, n));
    }
    r.finite = ok;
    r.final_field = state.current();
    r.series = state.series();
    for (const auto& ln : r.series) {
        if (!ln.level.is_whole()) continue;
        r.sup_U = std::max(r.sup_U, ln.norm_U);
        if (r.has_exact) {
            r.sup_u = std::max(r.sup_u, ln.norm_u);
            r.sup_e = std::max(r.sup_e, ln.norm_e);
        }
        if (!std::isfinite(ln.norm_U)) r.sup_U = std::numeric_limits<double>::infinity();
        if (r.has_exact && !std::isfinite(ln.norm_e)) r.sup_e = std::numeric_limits<double>::infinity();
    }
    if (!r.has_exact) {
        r.sup_u = kNaN;
        r.sup_e = kNaN;
    }
    if (!ok) {
        r.sup_U = std::numeric_limits<double>::infinity();
        if (r.has_exact) r.sup_e = std::numeric_limits<double>::infinity();
    }
    r.fields = state.retained();
    r.systems = state.systems();
    r.stats = state.stats();
    return r;
}

}  // namespace vofrac
