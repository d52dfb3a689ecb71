#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imstrip/extensions.hpp"
#include "imstrip/polynomials.hpp"
#include "imstrip/transforms.hpp"
#include "imstrip/verify.hpp"

namespace py = pybind11;
using namespace imstrip;

namespace {

PolynomialFamily make_family(const std::string& kind, std::vector<cplx> p, double a, double phi) {
    if (kind == "mp") return PolynomialFamily::meixner_pollaczek(a, phi);
    if (kind == "hahn") return PolynomialFamily::continuous_hahn(p.at(0), p.at(1));
    if (kind == "dual_hahn")
        return PolynomialFamily::continuous_dual_hahn(p.at(0), p.at(1), p.at(2));
    if (kind == "wilson") return PolynomialFamily::wilson(p.at(0), p.at(1), p.at(2), p.at(3));
    throw ParameterError("unknown family kind: " + kind);
}

HalfLineFunction wrap_half_line(std::function<cplx(double)> f, double rz, double ri) {
    HalfLineFunction g;
    g.eval = std::move(f);
    g.exp_rate_zero = rz;
    g.exp_rate_inf = ri;
    return g;
}

py::dict report_to_dict(const SuiteReport& r) {
    py::dict d;
    d["suite"] = r.suite;
    d["pass"] = r.pass;
    py::list checks;
    for (auto& c : r.checks) {
        py::dict jc;
        jc["id"] = c.id;
        jc["anchor"] = c.anchor;
        jc["defect"] = c.defect;
        jc["tol"] = c.tol;
        jc["pass"] = c.pass;
        jc["ms"] = c.ms;
        jc["note"] = c.note;
        checks.append(jc);
    }
    d["checks"] = checks;
    return d;
}

} // namespace

PYBIND11_MODULE(_imstrip, m) {
    m.doc() = "difference operators in the imaginary direction: special functions, "
              "gamma-quotient weights, hypergeometric orthogonal polynomials, and the "
              "Kontorovich-Lebedev / Wimp / Vilenkin / Mellin transform machinery";

    py::register_exception<PoleError>(m, "PoleError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ParameterError>(m, "ParameterError");
    py::register_exception<DivergenceError>(m, "DivergenceError");
    py::register_exception<PathError>(m, "PathError");

    // special functions
    m.def("gamma", &imstrip::gamma, py::arg("z"));
    m.def("log_gamma", &imstrip::log_gamma, py::arg("z"));
    m.def("pochhammer", &imstrip::pochhammer, py::arg("a"), py::arg("n"));
    m.def("beta", &imstrip::beta, py::arg("x"), py::arg("y"));
    m.def(
        "hyp_pFq",
        [](std::vector<cplx> a, std::vector<cplx> b, cplx z) { return hyp_pFq(a, b, z); },
        py::arg("a"), py::arg("b"), py::arg("z"));
    m.def(
        "hyp2F1", [](cplx a, cplx b, cplx c, cplx z) { return hyp2F1(a, b, c, z); }, py::arg("a"),
        py::arg("b"), py::arg("c"), py::arg("z"));
    m.def("macdonald_K", &imstrip::macdonald_K, py::arg("nu"), py::arg("x"));
    m.def("whittaker_W", &imstrip::whittaker_W, py::arg("rho"), py::arg("sigma"), py::arg("x"));

    // weights and operators
    py::class_<WeightSpec>(m, "WeightSpec")
        .def_static("meixner_pollaczek", &WeightSpec::meixner_pollaczek)
        .def_static("continuous_hahn", &WeightSpec::continuous_hahn)
        .def_static("continuous_dual_hahn", &WeightSpec::continuous_dual_hahn)
        .def_static("wilson", &WeightSpec::wilson)
        .def_static("kontorovich_lebedev", &WeightSpec::kontorovich_lebedev)
        .def_static("wimp", &WeightSpec::wimp);
    m.def("mu", &imstrip::mu);
    m.def("nu", &imstrip::nu);
    m.def("weight_w", &imstrip::weight_w);
    m.def("coeff_A", &imstrip::coeff_A);
    m.def("coeff_B", &imstrip::coeff_B);

    py::class_<DifferenceOperator>(m, "DifferenceOperator")
        .def_property_readonly("name", [](const DifferenceOperator& o) { return o.name; })
        .def("up", [](const DifferenceOperator& o, cplx s) { return o.up(s); })
        .def("diag", [](const DifferenceOperator& o, cplx s) { return o.diag(s); })
        .def("down", [](const DifferenceOperator& o, cplx s) { return o.down(s); })
        .def("apply", [](const DifferenceOperator& o, std::function<cplx(cplx)> f, cplx s) {
            return apply_raw(o, f, s);
        });
    m.def("make_operator", [](const WeightSpec& s) { return make_operator(s); });
    m.def("kl_operator", &imstrip::kl_operator);
    m.def("wimp_operator", &imstrip::wimp_operator);
    m.def("vilenkin_operator", &imstrip::vilenkin_operator);
    m.def("mp_operator", &imstrip::mp_operator);
    m.def("sec6_operator", &imstrip::sec6_operator);

    // polynomials
    py::class_<PolynomialFamily>(m, "PolynomialFamily")
        .def(py::init(&make_family), py::arg("kind"), py::arg("params") = std::vector<cplx>{},
             py::arg("a") = 1.0, py::arg("phi") = 1.0)
        .def("eval", [](const PolynomialFamily& f, int n, cplx s) { return poly_eval(f, n, s); })
        .def("eigenvalue", &PolynomialFamily::eigenvalue)
        .def("norm_squared", [](const PolynomialFamily& f, int n) { return norm_squared(f, n); })
        .def("eigen_defect", [](const PolynomialFamily& f, int n) {
            return eigen_defect(f, n, default_eigen_samples(f));
        });
    m.def("gram_matrix", [](const PolynomialFamily& f, int N) { return gram_matrix(f, N); });

    // transforms (pointwise evaluations through the closures)
    m.def(
        "kl_transform",
        [](std::function<cplx(double)> g, double rz, double ri, std::vector<cplx> pts,
           double s_max) {
            QuadratureConfig cfg;
            StripFunction K = kl_forward(wrap_half_line(std::move(g), rz, ri), cfg, s_max);
            std::vector<cplx> out;
            for (cplx s : pts) out.push_back(K.eval(s));
            return out;
        },
        py::arg("g"), py::arg("exp_rate_zero"), py::arg("exp_rate_inf"), py::arg("points"),
        py::arg("s_max") = 12.0);
    m.def(
        "wimp_transform",
        [](double rho, std::function<cplx(double)> g, double rz, double ri, std::vector<cplx> pts,
           double s_max) {
            QuadratureConfig cfg;
            StripFunction W = wimp_forward(rho, wrap_half_line(std::move(g), rz, ri), cfg, s_max);
            std::vector<cplx> out;
            for (cplx s : pts) out.push_back(W.eval(s));
            return out;
        },
        py::arg("rho"), py::arg("g"), py::arg("exp_rate_zero"), py::arg("exp_rate_inf"),
        py::arg("points"), py::arg("s_max") = 12.0);

    // extensions
    py::class_<ExtensionParams>(m, "ExtensionParams")
        .def(py::init<double, double, double>(), py::arg("tau"), py::arg("sigma"), py::arg("phi"));
    m.def("delta_eval", &imstrip::delta_eval);
    m.def("theta_substitution", &imstrip::theta_substitution);
    m.def("psi_eval", [](const ExtensionParams& p, int n, cplx s) { return psi_eval(p, n, s); });
    m.def("sec6_eigen_defect", [](const ExtensionParams& p, int n, std::vector<cplx> pts) {
        return sec6_eigen_defect(p, n, pts);
    });

    // verification
    m.def("suite_names", &imstrip::suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, bool budget) {
            VerifyOptions opt;
            opt.enforce_budget = budget;
            return report_to_dict(run_suite(name, opt));
        },
        py::arg("name"), py::arg("enforce_budget") = true);
}
