// Command-line front end: solve, converge, verify, temporal-order.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "vofrac/errors.hpp"
#include "vofrac/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kSolver = 2, kVerification = 3 };

double parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    std::size_t used = 0;
    try {
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const double a = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(text);
        const double b = std::stod(den, &used);
        if (used != den.size()) throw std::invalid_argument(text);
        return a / b;
    } catch (const std::exception&) {
        throw vofrac::ParameterError("cannot parse number '" + text + "'");
    }
}

struct Options {
    std::string problem = "example1";
    double alpha = 0.25;
    std::vector<std::string> levels;
    std::vector<std::string> pairs;
    double coupling_power = 4.0;
    std::string variant = "derived";
    std::string solver = "lu";
    std::string preconditioner = "none";
    std::string near_boundary = "exact";
    std::string half_layout = "realigned";
    std::string half_seed = "alpha";
    std::string out;
    std::string format = "csv";
    bool deep = false;
    int jobs = 1;
    std::string suite = "all";
    std::string h_temporal = "1/64";
    std::vector<std::string> ks{"1/8", "1/16", "1/32", "1/64"};
    std::uint64_t seed = vofrac::VerifyOptions{}.seed;
};

vofrac::SchemeConfig scheme_config(const Options& o) {
    vofrac::SchemeConfig s;
    s.variant = vofrac::parse_variant(o.variant);
    s.solver = vofrac::parse_solver(o.solver);
    s.gmres.preconditioner = vofrac::parse_preconditioner(o.preconditioner);
    s.near_boundary = vofrac::parse_near_boundary(o.near_boundary);
    s.coefficients.layout = vofrac::parse_layout(o.half_layout);
    s.coefficients.seed = vofrac::parse_seed(o.half_seed);
    return s;
}

vofrac::RunConfig run_config(const Options& o) {
    vofrac::RunConfig c;
    c.problem = o.problem;
    c.alpha = o.alpha;
    for (const auto& l : o.levels) c.levels.push_back(parse_fraction(l));
    for (const auto& p : o.pairs) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) throw vofrac::ParameterError("pair '" + p + "' must be written h:k");
        c.pairs.emplace_back(parse_fraction(p.substr(0, colon)), parse_fraction(p.substr(colon + 1)));
    }
    c.coupling_power = o.coupling_power;
    c.scheme = scheme_config(o);
    c.deep = o.deep;
    c.jobs = o.jobs;
    return c;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw vofrac::ParameterError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void report_failures(const vofrac::ConvergenceReport& rep) {
    for (const auto& r : rep.rows) {
        if (!r.ok) std::cerr << "level h=" << r.spec.h << " (M=" << r.spec.M << ", N=" << r.spec.N << ") failed: " << r.error << '\n';
    }
    if (rep.metadata.order_constraint_violated) {
        std::cerr << "note: order function leaves (0, 1) for problem " << rep.metadata.problem << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-step fourth-order solver for the variable-order fractional mobile-immobile equation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");
    Options o;

    app.add_option("--problem", o.problem, "example1, example2, manufactured:<preset>[@beta]")->capture_default_str();
    app.add_option("--alpha", o.alpha, "Shift parameter in (0, 1/2)")->capture_default_str();
    app.add_option("--levels", o.levels, "Space steps h, e.g. 1/4,1/8")->delimiter(',');
    app.add_option("--pairs", o.pairs, "Explicit h:k pairs, e.g. 1/8:1/64")->delimiter(',');
    app.add_option("--coupling-power", o.coupling_power, "k = h^p")->capture_default_str();
    app.add_option("--variant", o.variant, "derived or assembled")->capture_default_str();
    app.add_option("--solver", o.solver, "lu or gmres")->capture_default_str();
    app.add_option("--preconditioner", o.preconditioner, "GMRES preconditioner: none, jacobi, ilu0")->capture_default_str();
    app.add_option("--near-boundary", o.near_boundary, "Nodes 1 and M-1: exact or pin")->capture_default_str();
    app.add_option("--half-layout", o.half_layout, "Half-step coefficient layout: realigned or printed")->capture_default_str();
    app.add_option("--half-seed", o.half_seed, "First half-step weight: alpha or shifted")->capture_default_str();
    app.add_option("--out", o.out, "Output file (default stdout)");
    app.add_option("--format", o.format, "csv or json")->capture_default_str();
    app.add_flag("--deep", o.deep, "Include the h = 1/16 level in the default sweep");
    app.add_option("--jobs", o.jobs, "Worker threads for independent levels")->capture_default_str();

    auto* solve = app.add_subcommand("solve", "Single march at the first level");
    auto* converge = app.add_subcommand("converge", "Convergence table over all levels");
    auto* verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("--suite", o.suite, "coefficients, operators, oracle or all")->capture_default_str();
    verify->add_option("--seed", o.seed, "Random seed for the property draws")->capture_default_str();
    auto* temporal = app.add_subcommand("temporal-order", "Temporal order at fixed h");
    temporal->add_option("--space-step", o.h_temporal, "Fixed space step")->capture_default_str();
    temporal->add_option("--ks", o.ks, "Time steps")->delimiter(',');
    for (auto* sub : {solve, converge, verify, temporal}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        const auto format = vofrac::parse_format(o.format);
        if (*verify) {
            vofrac::VerifyOptions vo;
            vo.seed = o.seed;
            vo.coefficients = scheme_config(o).coefficients;
            const auto rep = vofrac::run_verify(vofrac::parse_suite(o.suite), vo);
            Output out(o.out);
            if (format == vofrac::OutputFormat::Json) {
                vofrac::write_json(rep, out.stream());
            } else {
                vofrac::write_text(rep, out.stream());
            }
            return rep.passed() ? kOk : kVerification;
        }
        if (*temporal) {
            vofrac::TemporalConfig tc;
            tc.problem = o.problem;
            tc.alpha = o.alpha;
            tc.h = parse_fraction(o.h_temporal);
            tc.ks.clear();
            for (const auto& k : o.ks) tc.ks.push_back(parse_fraction(k));
            tc.scheme = scheme_config(o);
            tc.jobs = o.jobs;
            const auto rep = vofrac::run_temporal_order(tc);
            Output out(o.out);
            if (format == vofrac::OutputFormat::Json) {
                vofrac::write_json(rep, out.stream());
            } else {
                vofrac::write_csv(rep, out.stream());
            }
            report_failures(rep.table);
            return rep.table.all_ok() ? kOk : kSolver;
        }
        const auto cfg = run_config(o);
        const auto rep = *solve ? vofrac::run_solve(cfg) : vofrac::run_converge(cfg);
        Output out(o.out);
        if (format == vofrac::OutputFormat::Json) {
            vofrac::write_json(rep, out.stream());
        } else {
            vofrac::write_csv(rep, out.stream());
        }
        report_failures(rep);
        return rep.all_ok() ? kOk : kSolver;
    } catch (const vofrac::ParameterError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const vofrac::DomainError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const vofrac::Error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    }
}
