#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vofrac/scheme.hpp"

namespace vofrac {

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(std::string_view s);

/// Resolved mesh of one convergence level.
struct LevelSpec {
    double h = 0.0;
    double k = 0.0;
    int M = 0;
    int N = 0;
};

struct RunConfig {
    std::string problem = "example1";
    double alpha = 0.25;
    /// Space steps; empty means 2^-1..2^-3 (and 2^-4 with deep).
    std::vector<double> levels;
    /// k = h^coupling_power unless explicit (h, k) pairs are given.
    double coupling_power = 4.0;
    std::vector<std::pair<double, double>> pairs;
    SchemeConfig scheme{};
    bool deep = false;
    int jobs = 1;
};

/// Default level list honouring the deep flag.
std::vector<double> default_levels(bool deep);

/// Checks alpha, jobs and coupling; returns the level meshes for the problem's domain.
std::vector<LevelSpec> resolve_levels(const RunConfig& cfg, const ProblemSpec& problem);

struct LevelRow {
    LevelSpec spec;
    bool ok = false;
    std::string error;
    double norm_u = 0.0;
    double norm_U = 0.0;
    double norm_e = 0.0;
    std::optional<double> rate;
    double seconds = 0.0;
    SolverStats stats;
};

struct ReportMetadata {
    std::string problem;
    std::string variant;
    std::string half_layout;
    std::string half_seed;
    std::string near_boundary;
    std::string solver;
    std::string beta_name;
    double alpha = 0.0;
    bool order_constraint_violated = false;
    double wall_seconds = 0.0;
};

struct ConvergenceReport {
    std::vector<LevelRow> rows;
    ReportMetadata metadata;
    std::vector<LevelNorms> series;  ///< filled by run_solve only
    bool all_ok() const;
};

/// One march at the first configured level.
ConvergenceReport run_solve(const RunConfig& cfg);
/// All levels, in parallel when jobs > 1; rates between consecutive levels.
ConvergenceReport run_converge(const RunConfig& cfg);

/// Fills the rate column: R_i = log2(e_{i-1}/e_i) when both rows are finite and positive.
void fill_rates(std::vector<LevelRow>& rows);

void write_csv(const ConvergenceReport& report, std::ostream& os);
void write_json(const ConvergenceReport& report, std::ostream& os);

struct TemporalConfig {
    std::string problem = "example1";
    double alpha = 0.25;
    double h = 1.0 / 64.0;
    std::vector<double> ks{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
    SchemeConfig scheme{};
    int jobs = 1;
};

struct TemporalReport {
    ConvergenceReport table;
    std::vector<double> pairwise_orders;
    double order = 0.0;  ///< least-squares slope of log e against log k
};

TemporalReport run_temporal_order(const TemporalConfig& cfg);
void write_csv(const TemporalReport& report, std::ostream& os);
void write_json(const TemporalReport& report, std::ostream& os);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

enum class VerifySuite { Coefficients, Operators, Oracle, All };
VerifySuite parse_suite(std::string_view s);

struct PropertyResult {
    std::string suite;
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    /// Smallest slack observed; negative when the property fails.
    double worst_margin = 0.0;
    std::string detail;
    bool passed() const { return failures == 0; }
};

struct VerifyReport {
    std::vector<PropertyResult> properties;
    bool passed() const;
};

struct VerifyOptions {
    std::uint64_t seed = 20240607;
    FamilyOptions coefficients{};
};

VerifyReport run_verify(VerifySuite suite, const VerifyOptions& options = {});
void write_text(const VerifyReport& report, std::ostream& os);
void write_json(const VerifyReport& report, std::ostream& os);

/// Individual properties, exposed for tests.
PropertyResult check_coefficient_monotonicity(std::uint64_t seed, int draws, FamilyOptions options = {});
PropertyResult check_coefficient_lower_bound(std::uint64_t seed, int draws, FamilyOptions options = {});
PropertyResult check_endpoint_chain(std::uint64_t seed, int draws, FamilyOptions options = {});
PropertyResult check_summation_by_parts(std::uint64_t seed, int instances, FamilyOptions options = {});
PropertyResult check_caputo_consistency(const std::vector<double>& betas, FamilyOptions options = {});
PropertyResult check_family_sums(std::uint64_t seed, int draws, FamilyOptions options = {});
PropertyResult check_stencil_matrix_consistency(std::uint64_t seed, int instances);
PropertyResult check_printed_entries(std::uint64_t seed, int instances);
PropertyResult check_operator_bound(std::uint64_t seed, int instances);
PropertyResult check_operator_coercivity(std::uint64_t seed, int instances, int intervals = 128);
PropertyResult check_dense_vs_banded(std::uint64_t seed, int instances);
PropertyResult check_lu_vs_gmres(const std::vector<int>& intervals);

}  // namespace vofrac
