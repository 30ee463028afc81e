#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vofrac/caputo.hpp"
#include "vofrac/grid.hpp"
#include "vofrac/problems.hpp"
#include "vofrac/solver.hpp"
#include "vofrac/stencil.hpp"

namespace vofrac {

/// Coefficient convention of the two-step march.
enum class SchemeVariant {
    Derived,    ///< alpha k theta0 start, k/4 history factor
    Assembled,  ///< k theta0 start, k/(4(1+2alpha)) history factor
};

/// How nodes 1 and M-1 are set at each level.
enum class NearBoundaryRule {
    Exact,  ///< values of the exact solution (requires one)
    Pin,    ///< U_1 = U_0, U_{M-1} = U_M
};

enum class SolverKind { BandedLU, Gmres };

struct SchemeConfig {
    SchemeVariant variant = SchemeVariant::Derived;
    FamilyOptions coefficients{};
    NearBoundaryRule near_boundary = NearBoundaryRule::Exact;
    SolverKind solver = SolverKind::BandedLU;
    GmresConfig gmres{};
    bool retain_fields = false;   ///< keep U at every half level
    bool record_systems = false;  ///< keep every solved system
};

std::string to_string(SchemeVariant v);
std::string to_string(NearBoundaryRule r);
std::string to_string(SolverKind s);
std::string to_string(HalfLayout l);
std::string to_string(HalfSeed s);
std::string to_string(Preconditioner p);
SchemeVariant parse_variant(std::string_view s);
NearBoundaryRule parse_near_boundary(std::string_view s);
SolverKind parse_solver(std::string_view s);
HalfLayout parse_layout(std::string_view s);
HalfSeed parse_seed(std::string_view s);
Preconditioner parse_preconditioner(std::string_view s);

/// One linear system as solved: matrix (shift included), right-hand side, solution.
struct SystemRecord {
    HalfIndex level;
    Pentadiagonal matrix;
    std::vector<double> rhs;
    std::vector<double> solution;
};

struct LevelNorms {
    HalfIndex level;
    double time = 0.0;
    double norm_U = 0.0;
    double norm_u = 0.0;  ///< NaN without an exact solution
    double norm_e = 0.0;  ///< NaN without an exact solution
};

struct SolverStats {
    std::size_t systems = 0;
    std::size_t factorizations = 0;
    std::size_t gmres_iterations = 0;
    double max_residual = 0.0;
};

/// State of a march between solves.
class MarchState {
public:
    MarchState(ProblemSpec problem, Grid1D grid, TimeMesh mesh, SchemeConfig config);
    ~MarchState();
    MarchState(MarchState&&) noexcept;
    MarchState& operator=(MarchState&&) noexcept;

    const ProblemSpec& problem() const { return problem_; }
    const Grid1D& grid() const { return grid_; }
    const TimeMesh& mesh() const { return mesh_; }
    const SchemeConfig& config() const { return config_; }

    HalfIndex level() const { return current_.level(); }
    const GridField& current() const { return current_; }
    const HistoryBuffer& history() const { return history_; }
    const std::vector<GridField>& retained() const { return retained_; }
    const std::vector<SystemRecord>& systems() const { return systems_; }
    const std::vector<LevelNorms>& series() const { return series_; }
    const SolverStats& stats() const { return stats_; }

    /// Values of nodes 0, 1, M-1, M at a level under the active rule.
    std::array<double, 4> boundary_values(HalfIndex level) const;

private:
    friend GridField first_step_initial(MarchState& state);
    friend GridField first_step(MarchState& state, int n);
    friend GridField second_step(MarchState& state, int n);

    struct Factors;

    GridField solve_level(HalfIndex target, SchemeMatrix lhs, const std::vector<double>& shift,
                          std::vector<double> rhs);
    std::vector<double> betas_at(double t) const;
    std::vector<double> sources_at(double t) const;
    void record_norms(const GridField& u);

    ProblemSpec problem_;
    Grid1D grid_;
    TimeMesh mesh_;
    SchemeConfig config_;
    std::vector<double> x_;
    GridField current_;
    HistoryBuffer history_;
    KernelWorkspace workspace_;
    std::vector<GridField> retained_;
    std::vector<SystemRecord> systems_;
    std::vector<LevelNorms> series_;
    SolverStats stats_;
    std::unique_ptr<Factors> factors_;
};

/// Level 0 -> 1/2.
GridField first_step_initial(MarchState& state);
/// Level n -> n+1/2 for n >= 1.
GridField first_step(MarchState& state, int n);
/// Level n+1/2 -> n+1 for n >= 0.
GridField second_step(MarchState& state, int n);

struct MarchResult {
    GridField final_field;
    std::vector<LevelNorms> series;  ///< every half level
    double sup_u = 0.0;              ///< max over integer levels
    double sup_U = 0.0;
    double sup_e = 0.0;
    bool has_exact = false;
    bool finite = true;
    std::vector<GridField> fields;
    std::vector<SystemRecord> systems;
    SolverStats stats;
};

/// Runs first_step_initial, then alternates second_step / first_step up to level N.
MarchResult march(const ProblemSpec& problem, const Grid1D& grid, const TimeMesh& mesh, const SchemeConfig& config);

}  // namespace vofrac
