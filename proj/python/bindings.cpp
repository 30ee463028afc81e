#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "vofrac/errors.hpp"
#include "vofrac/harness.hpp"

namespace py = pybind11;
using namespace vofrac;

namespace {

SchemeConfig scheme_config(const std::string& variant, const std::string& near_boundary, const std::string& solver,
                           const std::string& layout, const std::string& seed, const std::string& preconditioner) {
    SchemeConfig c;
    c.variant = parse_variant(variant);
    c.near_boundary = parse_near_boundary(near_boundary);
    c.solver = parse_solver(solver);
    c.coefficients.layout = parse_layout(layout);
    c.coefficients.seed = parse_seed(seed);
    c.gmres.preconditioner = parse_preconditioner(preconditioner);
    return c;
}

py::dict row_dict(const LevelRow& r) {
    py::dict d;
    d["h"] = r.spec.h;
    d["k"] = r.spec.k;
    d["M"] = r.spec.M;
    d["N"] = r.spec.N;
    d["ok"] = r.ok;
    d["error"] = r.error;
    d["norm_u"] = r.norm_u;
    d["norm_U"] = r.norm_U;
    d["norm_e"] = r.norm_e;
    d["rate"] = r.rate ? py::object(py::float_(*r.rate)) : py::object(py::none());
    d["seconds"] = r.seconds;
    return d;
}

CoeffFamily parse_family(const std::string& s) {
    if (s == "half") return CoeffFamily::Half;
    if (s == "int") return CoeffFamily::Int;
    throw ParameterError("family must be 'half' or 'int', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-step finite difference solver for variable-order time-fractional advection-diffusion";

    auto base = py::register_exception<Error>(m, "VofracError", PyExc_RuntimeError);
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", base.ptr());

    m.def("problem_names", &problem_names);

    m.def(
        "discrete_l2_norm",
        [](const std::vector<double>& u, double left, double right) {
            const Grid1D g(left, right, static_cast<int>(u.size()) - 1);
            return discrete_l2_norm(u, g);
        },
        py::arg("values"), py::arg("left") = 0.0, py::arg("right") = 1.0);

    m.def("convergence_rate", &convergence_rate, py::arg("err_coarse"), py::arg("err_fine"));

    m.def(
        "family_weights",
        [](const std::string& family, int n, double alpha, double beta, const std::string& layout,
           const std::string& seed) {
            return family_weights(parse_family(family), n, alpha, beta, {parse_layout(layout), parse_seed(seed)});
        },
        py::arg("family"), py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("layout") = "realigned",
        py::arg("seed") = "alpha");

    m.def("theta_start", &theta_start, py::arg("k"), py::arg("alpha"), py::arg("beta"));

    m.def(
        "caputo_quadrature",
        [](const std::function<double(double)>& derivative, double beta, double t) {
            return caputo_quadrature_oracle(derivative, beta, t);
        },
        py::arg("derivative"), py::arg("beta"), py::arg("t"));

    m.def(
        "apply_Lh", [](const std::vector<double>& u, double h) { return apply_Lh(u, h); }, py::arg("values"),
        py::arg("h"));

    m.def(
        "march",
        [](const std::string& problem, int M, int N, double alpha, const std::string& variant,
           const std::string& near_boundary, const std::string& solver, const std::string& layout,
           const std::string& seed, const std::string& preconditioner) {
            const auto p = resolve_problem(problem);
            const auto cfg = scheme_config(variant, near_boundary, solver, layout, seed, preconditioner);
            MarchResult r;
            {
                py::gil_scoped_release release;
                r = march(p, Grid1D(p.left, p.right, M), TimeMesh(p.final_time, N, alpha), cfg);
            }
            py::dict d;
            const auto v = r.final_field.values();
            d["final"] = std::vector<double>(v.begin(), v.end());
            d["final_level"] = r.final_field.level().value();
            d["sup_u"] = r.sup_u;
            d["sup_U"] = r.sup_U;
            d["sup_e"] = r.sup_e;
            d["has_exact"] = r.has_exact;
            d["finite"] = r.finite;
            py::list series;
            for (const auto& s : r.series) series.append(py::make_tuple(s.time, s.norm_U, s.norm_u, s.norm_e));
            d["series"] = series;
            return d;
        },
        py::arg("problem"), py::arg("M"), py::arg("N"), py::arg("alpha") = 0.25, py::arg("variant") = "derived",
        py::arg("near_boundary") = "exact", py::arg("solver") = "lu", py::arg("layout") = "realigned",
        py::arg("seed") = "alpha", py::arg("preconditioner") = "none");

    m.def(
        "converge",
        [](const std::string& problem, double alpha, const std::vector<double>& levels, double coupling_power,
           int jobs) {
            RunConfig cfg;
            cfg.problem = problem;
            cfg.alpha = alpha;
            cfg.levels = levels;
            cfg.coupling_power = coupling_power;
            cfg.jobs = jobs;
            ConvergenceReport rep;
            {
                py::gil_scoped_release release;
                rep = run_converge(cfg);
            }
            py::list rows;
            for (const auto& r : rep.rows) rows.append(row_dict(r));
            return rows;
        },
        py::arg("problem") = "example1", py::arg("alpha") = 0.25, py::arg("levels") = std::vector<double>{},
        py::arg("coupling_power") = 4.0, py::arg("jobs") = 1);

    m.def(
        "temporal_order",
        [](const std::string& problem, double h, const std::vector<double>& ks, double alpha) {
            TemporalConfig cfg;
            cfg.problem = problem;
            cfg.h = h;
            cfg.ks = ks;
            cfg.alpha = alpha;
            TemporalReport rep;
            {
                py::gil_scoped_release release;
                rep = run_temporal_order(cfg);
            }
            py::dict d;
            d["order"] = rep.order;
            d["pairwise"] = rep.pairwise_orders;
            py::list rows;
            for (const auto& r : rep.table.rows) rows.append(row_dict(r));
            d["rows"] = rows;
            return d;
        },
        py::arg("problem") = "example1", py::arg("h") = 1.0 / 64,
        py::arg("ks") = std::vector<double>{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}, py::arg("alpha") = 0.25);

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            VerifyOptions o;
            o.seed = seed;
            VerifyReport rep;
            {
                py::gil_scoped_release release;
                rep = run_verify(parse_suite(suite), o);
            }
            py::list out;
            for (const auto& p : rep.properties) {
                py::dict d;
                d["suite"] = p.suite;
                d["name"] = p.name;
                d["checks"] = p.checks;
                d["failures"] = p.failures;
                d["worst_margin"] = p.worst_margin;
                d["detail"] = p.detail;
                d["passed"] = p.passed();
                out.append(d);
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = VerifyOptions{}.seed);
}
