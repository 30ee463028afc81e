#include "vofrac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int integer_count(double length, double step, const char* what) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ParameterError(std::string(what) + " must be positive");
    }
    const double q = length / step;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, q) || r < 1.0 || r > 1e9) {
        std::ostringstream os;
        os << what << " = " << step << " does not divide the interval length " << length;
        throw ParameterError(os.str());
    }
    return static_cast<int>(r);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

ReportMetadata make_metadata(const std::string& name, const ProblemSpec& problem, double alpha,
                             const SchemeConfig& s) {
    ReportMetadata m;
    m.problem = name;
    m.variant = to_string(s.variant);
    m.half_layout = to_string(s.coefficients.layout);
    m.half_seed = to_string(s.coefficients.seed);
    m.near_boundary = to_string(s.near_boundary);
    m.solver = to_string(s.solver);
    if (s.solver == SolverKind::Gmres) m.solver += "+" + to_string(s.gmres.preconditioner);
    m.beta_name = problem.beta_name;
    m.alpha = alpha;
    m.order_constraint_violated = problem.order_constraint_violated;
    return m;
}

LevelRow run_level(const ProblemSpec& problem, const LevelSpec& spec, double alpha, const SchemeConfig& scheme,
                   std::vector<LevelNorms>* series) {
    LevelRow row;
    row.spec = spec;
    const auto t0 = Clock::now();
    try {
        const Grid1D grid(problem.left, problem.right, spec.M);
        const TimeMesh mesh(problem.final_time, spec.N, alpha);
        auto r = march(problem, grid, mesh, scheme);
        row.norm_u = r.sup_u;
        row.norm_U = r.sup_U;
        row.norm_e = r.sup_e;
        row.stats = r.stats;
        row.ok = r.finite;
        if (!r.finite) {
            row.error = "non-finite solution (blow-up) before level " +
                        std::to_string(r.series.empty() ? 0 : r.series.back().level.floor() + 1);
        }
        if (series) *series = std::move(r.series);
    } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
        row.norm_u = row.norm_U = row.norm_e = std::numeric_limits<double>::quiet_NaN();
    }
    row.seconds = seconds_since(t0);
    return row;
}

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

void check_run_parameters(double alpha, int jobs) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ParameterError("alpha ∈ (0, 1/2) required, got " + fmt(alpha));
    if (jobs < 1) throw ParameterError("jobs must be >= 1");
}

}  // namespace

OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ParameterError("unknown format '" + std::string(s) + "' (expected csv or json)");
}

std::vector<double> default_levels(bool deep) {
    std::vector<double> l{0.5, 0.25, 0.125};
    if (deep) l.push_back(0.0625);
    return l;
}

std::vector<LevelSpec> resolve_levels(const RunConfig& cfg, const ProblemSpec& problem) {
    check_run_parameters(cfg.alpha, cfg.jobs);
    const double length = problem.right - problem.left;
    std::vector<LevelSpec> out;
    if (!cfg.pairs.empty()) {
        for (const auto& [h, k] : cfg.pairs) {
            out.push_back({h, k, integer_count(length, h, "h"), integer_count(problem.final_time, k, "k")});
        }
        return out;
    }
    if (!(cfg.coupling_power > 0.0)) throw ParameterError("coupling-power must be positive");
    const auto levels = cfg.levels.empty() ? default_levels(cfg.deep) : cfg.levels;
    for (double h : levels) {
        const int M = integer_count(length, h, "h");
        const double k = std::pow(h, cfg.coupling_power);
        out.push_back({h, k, M, integer_count(problem.final_time, k, "k = h^p")});
    }
    return out;
}

bool ConvergenceReport::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const LevelRow& r) { return r.ok; });
}

void fill_rates(std::vector<LevelRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rate.reset();
        if (i == 0) continue;
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        if (!a.ok || !b.ok) continue;
        if (a.norm_e > 0.0 && b.norm_e > 0.0 && std::isfinite(a.norm_e) && std::isfinite(b.norm_e)) {
            rows[i].rate = convergence_rate(a.norm_e, b.norm_e);
        }
    }
}

ConvergenceReport run_solve(const RunConfig& cfg) {
    const auto t0 = Clock::now();
    const auto problem = resolve_problem(cfg.problem);
    const auto levels = resolve_levels(cfg, problem);
    if (levels.empty()) throw ParameterError("solve needs one level");
    ConvergenceReport rep;
    rep.metadata = make_metadata(cfg.problem, problem, cfg.alpha, cfg.scheme);
    rep.rows.push_back(run_level(problem, levels.front(), cfg.alpha, cfg.scheme, &rep.series));
    rep.metadata.wall_seconds = seconds_since(t0);
    return rep;
}

ConvergenceReport run_converge(const RunConfig& cfg) {
    const auto t0 = Clock::now();
    const auto problem = resolve_problem(cfg.problem);
    const auto levels = resolve_levels(cfg, problem);
    if (levels.empty()) throw ParameterError("converge needs at least one level");
    ConvergenceReport rep;
    rep.metadata = make_metadata(cfg.problem, problem, cfg.alpha, cfg.scheme);
    rep.rows.resize(levels.size());
    parallel_for(levels.size(), cfg.jobs,
                 [&](std::size_t i) { rep.rows[i] = run_level(problem, levels[i], cfg.alpha, cfg.scheme, nullptr); });
    fill_rates(rep.rows);
    rep.metadata.wall_seconds = seconds_since(t0);
    return rep;
}

void write_csv(const ConvergenceReport& report, std::ostream& os) {
    os << "h,k,M,N,norm_u,norm_U,norm_e,rate\n";
    for (const auto& r : report.rows) {
        if (!r.ok) continue;
        os << fmt(r.spec.h) << ',' << fmt(r.spec.k) << ',' << r.spec.M << ',' << r.spec.N << ',' << fmt(r.norm_u)
           << ',' << fmt(r.norm_U) << ',' << fmt(r.norm_e) << ',' << (r.rate ? fmt(*r.rate) : "") << '\n';
    }
    if (!report.series.empty()) {
        os << "\nlevel,t,norm_u,norm_U,norm_e\n";
        for (const auto& s : report.series) {
            os << fmt(s.level.value()) << ',' << fmt(s.time) << ',' << fmt(s.norm_u) << ',' << fmt(s.norm_U) << ','
               << fmt(s.norm_e) << '\n';
        }
    }
}

namespace {

nlohmann::json metadata_json(const ReportMetadata& m) {
    return {{"problem", m.problem},
            {"variant", m.variant},
            {"half_layout", m.half_layout},
            {"half_seed", m.half_seed},
            {"near_boundary", m.near_boundary},
            {"solver", m.solver},
            {"beta_name", m.beta_name},
            {"alpha", m.alpha},
            {"order_constraint_violated", m.order_constraint_violated},
            {"wall_seconds", m.wall_seconds}};
}

nlohmann::json report_json(const ConvergenceReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row = {{"h", r.spec.h},
                              {"k", r.spec.k},
                              {"M", r.spec.M},
                              {"N", r.spec.N},
                              {"ok", r.ok},
                              {"norm_u", num(r.norm_u)},
                              {"norm_U", num(r.norm_U)},
                              {"norm_e", num(r.norm_e)},
                              {"rate", r.rate ? num(*r.rate) : nlohmann::json(nullptr)},
                              {"seconds", r.seconds},
                              {"systems", r.stats.systems},
                              {"factorizations", r.stats.factorizations},
                              {"gmres_iterations", r.stats.gmres_iterations},
                              {"max_residual", num(r.stats.max_residual)}};
        if (!r.ok) row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    nlohmann::json j = {{"metadata", metadata_json(report.metadata)}, {"rows", rows}};
    if (!report.series.empty()) {
        nlohmann::json s = nlohmann::json::array();
        for (const auto& l : report.series) {
            s.push_back({{"level", l.level.value()},
                         {"t", l.time},
                         {"norm_u", num(l.norm_u)},
                         {"norm_U", num(l.norm_U)},
                         {"norm_e", num(l.norm_e)}});
        }
        j["series"] = std::move(s);
    }
    return j;
}

}  // namespace

void write_json(const ConvergenceReport& report, std::ostream& os) { os << report_json(report).dump(2) << '\n'; }

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("log_log_slope: need two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ParameterError("log_log_slope: values must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TemporalReport run_temporal_order(const TemporalConfig& cfg) {
    const auto t0 = Clock::now();
    check_run_parameters(cfg.alpha, cfg.jobs);
    const auto problem = resolve_problem(cfg.problem);
    if (!problem.exact) throw ParameterError("temporal-order needs a problem with an exact solution");
    if (cfg.ks.size() < 2) throw ParameterError("temporal-order needs at least two time steps");
    const int M = integer_count(problem.right - problem.left, cfg.h, "h");
    std::vector<LevelSpec> levels;
    for (double k : cfg.ks) levels.push_back({cfg.h, k, M, integer_count(problem.final_time, k, "k")});

    TemporalReport rep;
    rep.table.metadata = make_metadata(cfg.problem, problem, cfg.alpha, cfg.scheme);
    rep.table.rows.resize(levels.size());
    parallel_for(levels.size(), cfg.jobs, [&](std::size_t i) {
        rep.table.rows[i] = run_level(problem, levels[i], cfg.alpha, cfg.scheme, nullptr);
    });
    fill_rates(rep.table.rows);
    std::vector<double> ks, es;
    for (const auto& r : rep.table.rows) {
        rep.pairwise_orders.push_back(r.rate ? *r.rate : std::numeric_limits<double>::quiet_NaN());
        if (r.ok && r.norm_e > 0.0 && std::isfinite(r.norm_e)) {
            ks.push_back(r.spec.k);
            es.push_back(r.norm_e);
        }
    }
    if (!rep.pairwise_orders.empty()) rep.pairwise_orders.erase(rep.pairwise_orders.begin());
    rep.order = ks.size() >= 2 ? log_log_slope(ks, es) : std::numeric_limits<double>::quiet_NaN();
    rep.table.metadata.wall_seconds = seconds_since(t0);
    return rep;
}

void write_csv(const TemporalReport& report, std::ostream& os) {
    write_csv(report.table, os);
    os << "\norder\n" << fmt(report.order) << '\n';
}

void write_json(const TemporalReport& report, std::ostream& os) {
    auto j = report_json(report.table);
    j["order"] = num(report.order);
    nlohmann::json p = nlohmann::json::array();
    for (double v : report.pairwise_orders) p.push_back(num(v));
    j["pairwise_orders"] = p;
    os << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Property suites

namespace {

struct Draw {
    int n;
    double alpha;
    double beta;
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) {
        double v;
        do {
            v = std::uniform_real_distribution<double>(lo, hi)(rng_);
        } while (v <= lo || v >= hi);
        return v;
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Draw coefficient_draw(int n_min = 0) { return {integer(n_min, 50), uniform(0.0, 0.5), uniform(0.0, 2.0 / 3.0)}; }

private:
    std::mt19937_64 rng_;
};

std::vector<double> entries(CoeffFamily f, int n, double alpha, double beta, FamilyOptions o) {
    const auto size = static_cast<std::int64_t>(family_size(f, n));
    std::vector<double> a;
    for (std::int64_t q = 1; q <= size; ++q) a.push_back(a_coeff(f, n, HalfIndex::from_twice(q), alpha, beta, o));
    return a;
}

std::string describe(const Draw& d, CoeffFamily f) {
    std::ostringstream os;
    os << (f == CoeffFamily::Half ? "half" : "int") << " family n=" << d.n << " alpha=" << d.alpha
       << " beta=" << d.beta;
    return os.str();
}

void note_failure(PropertyResult& r, const std::string& what) {
    ++r.failures;
    if (r.detail.empty()) r.detail = "first counterexample: " + what;
}

std::vector<double> random_pinned_field(Sampler& s, int M) {
    std::vector<double> u(static_cast<std::size_t>(M + 1), 0.0);
    for (int j = 2; j <= M - 2; ++j) u[static_cast<std::size_t>(j)] = s.uniform(-1.0, 1.0);
    return u;
}

}  // namespace

PropertyResult check_coefficient_monotonicity(std::uint64_t seed, int draws, FamilyOptions options) {
    PropertyResult r{"coefficients", "coefficient-monotonicity", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < draws; ++i) {
        const auto d = s.coefficient_draw();
        for (auto f : {CoeffFamily::Half, CoeffFamily::Int}) {
            const auto a = entries(f, d.n, d.alpha, d.beta, options);
            ++r.checks;
            bool ok = true;
            for (std::size_t m = 0; m + 1 < a.size(); ++m) {
                const double margin = a[m + 1] - a[m];
                r.worst_margin = std::min(r.worst_margin, margin);
                if (!(margin > 0.0) && ok) {
                    ok = false;
                    std::ostringstream os;
                    os << describe(d, f) << ": a[" << HalfIndex::from_twice(static_cast<std::int64_t>(m + 1)).str()
                       << "]=" << a[m] << " >= a[" << HalfIndex::from_twice(static_cast<std::int64_t>(m + 2)).str()
                       << "]=" << a[m + 1];
                    note_failure(r, os.str());
                }
            }
        }
    }
    return r;
}

PropertyResult check_coefficient_lower_bound(std::uint64_t seed, int draws, FamilyOptions options) {
    PropertyResult r{"coefficients", "coefficient-lower-bound", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < draws; ++i) {
        const auto d = s.coefficient_draw();
        const double c = (2 - 3 * d.beta) * (1 - d.beta) / (2 * (2 - d.beta));
        for (auto f : {CoeffFamily::Half, CoeffFamily::Int}) {
            const double lead = f == CoeffFamily::Half ? d.n + 0.5 : d.n + 1.0;
            const auto a = entries(f, d.n, d.alpha, d.beta, options);
            ++r.checks;
            bool ok = true;
            for (std::size_t m = 0; m + 1 < a.size(); ++m) {  // the last entry is outside the stated range
                const double l = 0.5 * static_cast<double>(m + 1);
                const double bound = c * std::pow(lead + d.alpha - l, -d.beta);
                const double margin = a[m] - bound;
                r.worst_margin = std::min(r.worst_margin, margin);
                if (!(margin > 0.0) && ok) {
                    ok = false;
                    std::ostringstream os;
                    os << describe(d, f) << ": a[" << l << "]=" << a[m] << " <= " << bound;
                    note_failure(r, os.str());
                }
            }
        }
    }
    return r;
}

PropertyResult check_endpoint_chain(std::uint64_t seed, int draws, FamilyOptions options) {
    PropertyResult r{"coefficients", "endpoint-chain", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < draws; ++i) {
        const auto d = s.coefficient_draw(1);
        const double a_nn = a_coeff(CoeffFamily::Int, d.n - 1, HalfIndex::whole(d.n), d.alpha, d.beta, options);
        const double a_hh = a_coeff(CoeffFamily::Half, d.n, HalfIndex::half_above(d.n), d.alpha, d.beta, options);
        const double a_11 = a_coeff(CoeffFamily::Int, d.n, HalfIndex::whole(d.n + 1), d.alpha, d.beta, options);
        const double lo = std::pow(d.alpha, 1 - d.beta);
        const double hi = lo + 2 / (2 - d.beta) * (std::pow(1 + d.alpha, 2 - d.beta) - std::pow(d.alpha, 2 - d.beta));
        ++r.checks;
        const double eq = std::max(std::abs(a_nn - a_hh), std::abs(a_hh - a_11));
        const double margin = std::min({a_nn - lo, hi - a_nn, 1e-13 - eq});
        r.worst_margin = std::min(r.worst_margin, margin);
        if (!(margin > 0.0)) {
            std::ostringstream os;
            os << "n=" << d.n << " alpha=" << d.alpha << " beta=" << d.beta << ": " << lo << " < " << a_nn << " = "
               << a_hh << " = " << a_11 << " < " << hi;
            note_failure(r, os.str());
        }
    }
    return r;
}

PropertyResult check_summation_by_parts(std::uint64_t seed, int instances, FamilyOptions options) {
    PropertyResult r{"coefficients", "summation-by-parts", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < instances; ++i) {
        const auto d = s.coefficient_draw();
        const auto f = s.integer(0, 1) == 0 ? CoeffFamily::Half : CoeffFamily::Int;
        const auto a = entries(f, d.n, d.alpha, d.beta, options);  // a[q-1] = a_{n+s, q/2}
        auto coef = [&](std::int64_t twice_p) { return a[static_cast<std::size_t>(twice_p - 1)]; };
        // m in {n, n+1/2} as allowed by the family range; l0 integer <= m.
        const std::int64_t m2 = f == CoeffFamily::Int && s.integer(0, 1) == 1 ? 2 * d.n + 1 : 2 * d.n;
        const std::int64_t l02 = 2 * s.integer(0, d.n);
        std::vector<double> v(static_cast<std::size_t>(m2 + 2));
        for (auto& x : v) x = s.uniform(-2.0, 2.0);
        auto vv = [&](std::int64_t twice_l) { return v[static_cast<std::size_t>(twice_l)]; };
        double lhs = 0.0, scale = 0.0;
        for (std::int64_t l2 = l02; l2 <= m2; ++l2) {
            const double t = coef(l2 + 1) * (vv(l2 + 1) * vv(l2 + 1) - vv(l2) * vv(l2));
            lhs += t;
            scale += std::abs(t);
        }
        double rhs = coef(m2 + 1) * vv(m2 + 1) * vv(m2 + 1) - coef(l02 + 1) * vv(l02) * vv(l02);
        for (std::int64_t l2 = l02; l2 <= m2 - 1; ++l2) rhs += (coef(l2 + 1) - coef(l2 + 2)) * vv(l2 + 1) * vv(l2 + 1);
        ++r.checks;
        const double margin = 1e-12 * std::max(1.0, scale) - std::abs(lhs - rhs);
        r.worst_margin = std::min(r.worst_margin, margin);
        if (!(margin >= 0.0)) {
            std::ostringstream os;
            os << describe(d, f) << ": lhs=" << lhs << " rhs=" << rhs;
            note_failure(r, os.str());
        }
    }
    return r;
}

PropertyResult check_caputo_consistency(const std::vector<double>& betas, FamilyOptions options) {
    PropertyResult r{"coefficients", "caputo-consistency", 0, 0, std::numeric_limits<double>::infinity(), ""};
    const double alpha = 0.25;
    auto u = [](double t) { return t * t * t; };
    auto du = [](double t) { return 3 * t * t; };
    std::ostringstream detail;
    for (double beta : betas) {
        for (auto f : {CoeffFamily::Half, CoeffFamily::Int}) {
            std::vector<double> ks, errs;
            for (int N : {8, 16, 32, 64, 128}) {
                const double k = 1.0 / N;
                const int n = N - 1;
                const double target = (n + (f == CoeffFamily::Int ? 1.0 : 0.5) + alpha) * k;
                const auto a = family_weights(f, n, alpha, beta, options);
                const double scale = theta_scale(k, beta);
                double discrete = 0.0;
                for (std::size_t m = 0; m < a.size(); ++m) {
                    const double t0 = 0.5 * static_cast<double>(m) * k;
                    discrete += scale * a[m] * (u(t0 + 0.5 * k) - u(t0)) * 2.0 / k;
                }
                ks.push_back(k);
                errs.push_back(std::abs(discrete - caputo_quadrature_oracle(du, beta, target, 200)));
            }
            const double order = log_log_slope(ks, errs);
            const double threshold = 2 - beta - 0.25;
            ++r.checks;
            r.worst_margin = std::min(r.worst_margin, order - threshold);
            detail << (f == CoeffFamily::Half ? "half" : "int") << " beta=" << beta << " order=" << order << "; ";
            if (!(order >= threshold)) ++r.failures;
        }
    }
    r.detail = detail.str();
    return r;
}

PropertyResult check_family_sums(std::uint64_t seed, int draws, FamilyOptions options) {
    PropertyResult r{"coefficients", "family-weight-sums", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < draws; ++i) {
        const auto d = s.coefficient_draw(1);
        for (auto f : {CoeffFamily::Half, CoeffFamily::Int}) {
            const auto a = family_weights(f, d.n, d.alpha, d.beta, options);
            double sum = 0.0;
            for (double x : a) sum += x;
            const double lead = f == CoeffFamily::Half ? d.n + 0.5 : d.n + 1.0;
            const double expect = std::pow(lead + d.alpha, 1 - d.beta);
            ++r.checks;
            const double margin = 1e-12 * expect - std::abs(sum - expect);
            r.worst_margin = std::min(r.worst_margin, margin);
            if (!(margin >= 0.0)) {
                std::ostringstream os;
                os << describe(d, f) << ": sum " << sum << " vs " << expect;
                note_failure(r, os.str());
            }
        }
    }
    return r;
}

PropertyResult check_stencil_matrix_consistency(std::uint64_t seed, int instances) {
    PropertyResult r{"operators", "stencil-matrix-consistency", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < instances; ++i) {
        const int M = s.integer(5, 64);
        const Grid1D grid(0.0, 1.0, M);
        const double c = s.uniform(0.0, 1.0) * grid.spacing() * grid.spacing();
        const auto u = random_pinned_field(s, M);
        const auto p = assemble_operator_matrix(grid, c, OperatorSide::Implicit);
        const auto lhs = matvec(p, std::vector<double>(u.begin() + 2, u.end() - 2));
        const auto lu = apply_Lh(u, grid.spacing());
        double dev = 0.0;
        for (std::size_t q = 0; q < lhs.size(); ++q) dev = std::max(dev, std::abs(lhs[q] - (u[q + 2] - c * lu[q])));
        ++r.checks;
        const double margin = 1e-13 - dev;
        r.worst_margin = std::min(r.worst_margin, margin);
        if (!(margin >= 0.0)) note_failure(r, "M=" + std::to_string(M) + " deviation " + fmt(dev));
    }
    return r;
}

PropertyResult check_printed_entries(std::uint64_t seed, int instances) {
    PropertyResult r{"operators", "printed-entry-cross-check", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < instances; ++i) {
        const double k = s.uniform(0.0, 1.0);
        const double h = s.uniform(0.01, 0.5);
        const double alpha = s.uniform(0.0, 0.5);
        for (auto which : {SchemeMatrix::A0, SchemeMatrix::A, SchemeMatrix::A1, SchemeMatrix::A2}) {
            const auto printed = printed_band_entries(which, k, h, alpha);
            const auto mc = scheme_matrix_coefficient(which, k, alpha);
            const Grid1D g(0.0, 10 * h, 10);
            const auto p = assemble_operator_matrix(g, mc.c, mc.side);
            ++r.checks;
            double worst = std::numeric_limits<double>::infinity();
            for (int o = -2; o <= 2; ++o) {
                const double derived = p.band(3, o);
                const double pr = printed[static_cast<std::size_t>(o + 2)];
                worst = std::min(worst, 1e-13 * std::max(1.0, std::abs(derived)) - std::abs(derived - pr));
            }
            r.worst_margin = std::min(r.worst_margin, worst);
            if (!(worst >= 0.0)) note_failure(r, "k=" + fmt(k) + " h=" + fmt(h) + " alpha=" + fmt(alpha));
        }
    }
    return r;
}

PropertyResult check_operator_bound(std::uint64_t seed, int instances) {
    PropertyResult r{"operators", "operator-bound", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    for (int i = 0; i < instances; ++i) {
        const int M = s.integer(6, 64);
        const Grid1D grid(0.0, 1.0, M);
        const auto u = random_pinned_field(s, M);
        const auto v = random_pinned_field(s, M);
        const auto lu = apply_Lh(u, grid.spacing());
        std::vector<double> luf(u.size(), 0.0);
        std::copy(lu.begin(), lu.end(), luf.begin() + 2);
        const double lhs = std::abs(inner_product(luf, v, grid));
        const double rhs = 4.0 / 3.0 * difference_norm(v, grid) * (difference_norm(u, grid) + discrete_l2_norm(u, grid));
        ++r.checks;
        const double margin = rhs + 1e-12 - lhs;
        r.worst_margin = std::min(r.worst_margin, margin / std::max(1.0, rhs));
        if (!(margin >= 0.0)) note_failure(r, "M=" + std::to_string(M) + " |(Lu,v)|=" + fmt(lhs) + " > " + fmt(rhs));
    }
    return r;
}

PropertyResult check_operator_coercivity(std::uint64_t seed, int instances, int intervals) {
    PropertyResult r{"operators", "operator-coercivity", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    const Grid1D grid(0.0, 1.0, intervals);
    const double h = grid.spacing();
    const auto x = grid.nodes();
    for (int i = 0; i < instances; ++i) {
        const int modes = s.integer(1, 4);
        std::vector<double> c(static_cast<std::size_t>(modes));
        for (int q = 0; q < modes; ++q) c[static_cast<std::size_t>(q)] = s.uniform(-1.0, 1.0) / (q + 1);
        std::vector<double> u(x.size(), 0.0);
        for (int j = 2; j <= intervals - 2; ++j) {
            const double z = (x[static_cast<std::size_t>(j)] - h) / (1.0 - 2.0 * h);
            double v = 0.0;
            for (int q = 0; q < modes; ++q) v += c[static_cast<std::size_t>(q)] * std::sin((q + 1) * std::numbers::pi * z);
            u[static_cast<std::size_t>(j)] = v;
        }
        const auto lu = apply_Lh(u, h);
        std::vector<double> luf(u.size(), 0.0);
        for (std::size_t q = 0; q < lu.size(); ++q) luf[q + 2] = -lu[q];
        const double lhs = inner_product(luf, u, grid);
        const double dx2 = difference_inner_product(u, u, grid);
        ++r.checks;
        const double margin = lhs / dx2 - 0.45;
        r.worst_margin = std::min(r.worst_margin, margin);
        if (!(margin >= 0.0)) note_failure(r, "modes=" + std::to_string(modes) + " ratio=" + fmt(lhs / dx2));
    }
    return r;
}

PropertyResult check_dense_vs_banded(std::uint64_t seed, int instances) {
    PropertyResult r{"oracle", "dense-vs-banded", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(seed);
    const SchemeMatrix kinds[] = {SchemeMatrix::A0, SchemeMatrix::A, SchemeMatrix::A1, SchemeMatrix::A2};
    for (int i = 0; i < instances; ++i) {
        const int M = s.integer(6, 64);
        const Grid1D grid(0.0, 1.0, M);
        const double h = grid.spacing();
        const double k = std::pow(h, 4) * s.uniform(0.5, 2.0);
        const double alpha = s.uniform(0.0, 0.5);
        const auto which = kinds[s.integer(0, 3)];
        const auto mc = scheme_matrix_coefficient(which, k, alpha);
        auto p = assemble_operator_matrix(grid, mc.c, mc.side);
        std::vector<double> shift(p.size());
        for (auto& v : shift) v = s.uniform(0.0, 1.0);
        if (s.integer(0, 1) == 1) p = p.with_diagonal_shift(shift);
        std::vector<double> b(p.size());
        for (auto& v : b) v = s.uniform(-1.0, 1.0);
        const auto x1 = lu_factor(p).solve(b);
        const auto x2 = dense_solve(p.dense(), b);
        double dev = 0.0, mag = 1.0;
        for (std::size_t q = 0; q < b.size(); ++q) {
            dev = std::max(dev, std::abs(x1[q] - x2[q]));
            mag = std::max(mag, std::abs(x2[q]));
        }
        ++r.checks;
        const double margin = 1e-12 * mag - dev;
        r.worst_margin = std::min(r.worst_margin, margin);
        if (!(margin >= 0.0)) note_failure(r, "M=" + std::to_string(M) + " deviation " + fmt(dev));
    }
    return r;
}

PropertyResult check_lu_vs_gmres(const std::vector<int>& intervals) {
    PropertyResult r{"oracle", "lu-vs-gmres", 0, 0, std::numeric_limits<double>::infinity(), ""};
    Sampler s(7);
    for (int M : intervals) {
        const Grid1D grid(0.0, 1.0, M);
        const double k = std::pow(grid.spacing(), 4);
        for (double alpha : {0.25, 0.49}) {
            for (auto which : {SchemeMatrix::A0, SchemeMatrix::A, SchemeMatrix::A1, SchemeMatrix::A2}) {
                const auto mc = scheme_matrix_coefficient(which, k, alpha);
                const auto p = assemble_operator_matrix(grid, mc.c, mc.side);
                std::vector<double> b(p.size());
                for (auto& v : b) v = s.uniform(-1.0, 1.0);
                const auto x_lu = lu_factor(p).solve(b);
                for (auto pre : {Preconditioner::None, Preconditioner::Jacobi, Preconditioner::ILU0}) {
                    GmresConfig cfg;
                    cfg.preconditioner = pre;
                    ++r.checks;
                    try {
                        const auto g = gmres_solve(p, b, cfg);
                        double dev = 0.0, mag = 1.0;
                        for (std::size_t q = 0; q < b.size(); ++q) {
                            dev = std::max(dev, std::abs(g.x[q] - x_lu[q]));
                            mag = std::max(mag, std::abs(x_lu[q]));
                        }
                        const double margin = 1e-8 * mag - dev;
                        r.worst_margin = std::min(r.worst_margin, margin);
                        if (!(margin >= 0.0)) note_failure(r, "M=" + std::to_string(M) + " deviation " + fmt(dev));
                    } catch (const ConvergenceError& e) {
                        r.worst_margin = std::min(r.worst_margin, -e.residual());
                        note_failure(r, e.what());
                    }
                }
            }
        }
    }
    return r;
}

VerifySuite parse_suite(std::string_view s) {
    if (s == "coefficients") return VerifySuite::Coefficients;
    if (s == "operators") return VerifySuite::Operators;
    if (s == "oracle") return VerifySuite::Oracle;
    if (s == "all") return VerifySuite::All;
    throw ParameterError("unknown suite '" + std::string(s) + "' (expected coefficients, operators, oracle, all)");
}

bool VerifyReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed(); });
}

VerifyReport run_verify(VerifySuite suite, const VerifyOptions& o) {
    VerifyReport rep;
    auto want = [suite](VerifySuite s) { return suite == VerifySuite::All || suite == s; };
    if (want(VerifySuite::Coefficients)) {
        rep.properties.push_back(check_coefficient_monotonicity(o.seed, 2000, o.coefficients));
        rep.properties.push_back(check_coefficient_lower_bound(o.seed, 2000, o.coefficients));
        rep.properties.push_back(check_endpoint_chain(o.seed, 2000, o.coefficients));
        rep.properties.push_back(check_summation_by_parts(o.seed, 500, o.coefficients));
        rep.properties.push_back(check_caputo_consistency({0.3, 0.5}, o.coefficients));
        rep.properties.push_back(check_family_sums(o.seed, 500, o.coefficients));
    }
    if (want(VerifySuite::Operators)) {
        rep.properties.push_back(check_stencil_matrix_consistency(o.seed, 200));
        rep.properties.push_back(check_printed_entries(o.seed, 100));
        rep.properties.push_back(check_operator_bound(o.seed, 500));
        rep.properties.push_back(check_operator_coercivity(o.seed, 100, 128));
    }
    if (want(VerifySuite::Oracle)) {
        rep.properties.push_back(check_dense_vs_banded(o.seed, 200));
        rep.properties.push_back(check_lu_vs_gmres({8, 16}));
    }
    return rep;
}

void write_text(const VerifyReport& report, std::ostream& os) {
    for (const auto& p : report.properties) {
        os << (p.passed() ? "PASS " : "FAIL ") << p.suite << '/' << p.name << ": " << p.checks - p.failures << '/'
           << p.checks << " passed, worst margin " << fmt(p.worst_margin);
        if (!p.detail.empty()) os << " (" << p.detail << ')';
        os << '\n';
    }
}

void write_json(const VerifyReport& report, std::ostream& os) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : report.properties) {
        arr.push_back({{"suite", p.suite},
                       {"name", p.name},
                       {"checks", p.checks},
                       {"failures", p.failures},
                       {"worst_margin", num(p.worst_margin)},
                       {"passed", p.passed()},
                       {"detail", p.detail}});
    }
    os << nlohmann::json{{"passed", report.passed()}, {"properties", arr}}.dump(2) << '\n';
}

}  // namespace vofrac
