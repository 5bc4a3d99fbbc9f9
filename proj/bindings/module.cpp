#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "opoly/expansion.hpp"
#include "opoly/identities.hpp"
#include "opoly/laguerre.hpp"
#include "opoly/quadrature.hpp"

namespace py = pybind11;
using namespace opoly;

namespace {

RecurrenceTable build_table(double nu, double t, int n_max, int digits) {
    PrecisionContext ctx = PrecisionContext::make(digits, n_max);
    PrecisionScope scope(ctx.bits);
    return build_recurrence(Real(nu), Real(t), n_max, ctx);
}

}  // namespace

PYBIND11_MODULE(_opoly, m) {
    m.doc() = "orthonormal polynomials for the weight x^nu exp(-x - t/x)";

    m.def(
        "rho",
        [](double nu, double t, int digits) {
            PrecisionContext ctx = PrecisionContext::make(digits);
            PrecisionScope scope(ctx.bits);
            return to_gen(rho(Real(nu), Real(t), ctx), digits);
        },
        py::arg("nu"), py::arg("t"), py::arg("digits") = 30,
        "rho_nu(t) = int_0^inf e^{-t/x-x} x^{nu-1} dx as a decimal string");

    m.def(
        "gamma",
        [](double z, int digits) {
            PrecisionContext ctx = PrecisionContext::make(digits);
            PrecisionScope scope(ctx.bits);
            return to_gen(gamma_positive(Real(z), ctx), digits);
        },
        py::arg("z"), py::arg("digits") = 30);

    m.def(
        "laguerre",
        [](int n, double nu, double x) {
            PrecisionContext ctx = PrecisionContext::make(20);
            PrecisionScope scope(ctx.bits);
            return laguerre_eval(n, Real(nu), Real(x), ctx).to_double();
        },
        py::arg("n"), py::arg("nu"), py::arg("x"));

    m.def(
        "coeffs",
        [](double nu, double t, int n_max, int digits) {
            RecurrenceTable tab = build_table(nu, t, n_max, digits);
            py::dict out;
            out["nu"] = to_gen(tab.nu, digits);
            out["t"] = to_gen(tab.t, digits);
            out["n_max"] = tab.n_max;
            out["precision_bits"] = tab.achieved_bits;
            py::list rows;
            for (int n = 0; n <= tab.n_max; ++n) {
                const auto& r = tab.row(n);
                py::dict row;
                row["n"] = n;
                row["a_n"] = to_gen(r.a, digits);
                row["b_n"] = to_gen(r.b, digits);
                row["A_n"] = to_gen(r.A, digits);
                row["B_n"] = to_gen(r.B, digits);
                py::list cs;
                for (const Real& c : r.coeffs) cs.append(to_gen(c, digits));
                row["coeffs"] = cs;
                rows.append(row);
            }
            out["rows"] = rows;
            return out;
        },
        py::arg("nu"), py::arg("t"), py::arg("n_max") = 6, py::arg("digits") = 30,
        "recurrence table {a_n, b_n, A_n, B_n, coeffs} with decimal-string reals");

    m.def(
        "eval_poly",
        [](double nu, double t, int n, double x, int digits) {
            RecurrenceTable tab = build_table(nu, t, n, digits);
            PrecisionScope scope(tab.achieved_bits);
            return to_gen(tab.eval(n, Real(x)), digits);
        },
        py::arg("nu"), py::arg("t"), py::arg("n"), py::arg("x"), py::arg("digits") = 30,
        "P_n(x, t) as a decimal string");

    m.def(
        "gauss_rule",
        [](double nu, double t, int m_pts, int digits) {
            RecurrenceTable tab = build_table(nu, t, std::max(m_pts - 1, 0), digits);
            PrecisionContext ctx = PrecisionContext::make(digits, m_pts);
            PrecisionScope scope(ctx.bits);
            QuadratureRule rule = gauss_rule(tab, m_pts, ctx);
            std::vector<std::string> nodes, weights;
            for (const Real& v : rule.nodes) nodes.push_back(to_gen(v, digits));
            for (const Real& v : rule.weights) weights.push_back(to_gen(v, digits));
            return py::make_tuple(nodes, weights);
        },
        py::arg("nu"), py::arg("t"), py::arg("m"), py::arg("digits") = 30,
        "(nodes, weights) of the m-point Gauss rule, decimal strings");

    m.def(
        "expand",
        [](double nu, double t, int n, int k_max, int digits) {
            RecurrenceTable tab = build_table(nu, t, n, digits);
            PrecisionContext ctx = PrecisionContext::make(digits, n);
            PrecisionScope scope(ctx.bits);
            ExpansionCoeffs d = d_coeffs(tab, n, k_max, ctx);
            std::vector<std::string> out;
            for (const Real& v : d.d) out.push_back(to_gen(v, digits));
            return out;
        },
        py::arg("nu"), py::arg("t"), py::arg("n"), py::arg("k_max"), py::arg("digits") = 30,
        "Laguerre expansion coefficients d_{n,0..k_max}");

    m.def(
        "verify",
        [](double nu, double t, int n_max, int digits, const std::string& suite,
           std::uint64_t seed) {
            VerifyConfig cfg;
            cfg.nu = Real(nu);
            cfg.t = Real(t);
            cfg.n_max = n_max;
            cfg.digits = digits;
            cfg.seed = seed;
            std::stringstream ss(suite);
            std::string id;
            while (std::getline(ss, id, ','))
                if (!id.empty()) cfg.suite.insert(id);
            ResidualReport rep = run_verify(cfg);
            py::list rows;
            for (const auto& e : rep.entries) {
                py::dict row;
                row["identity_id"] = e.identity_id;
                row["n"] = e.n;
                row["nu"] = to_gen(e.nu, 17);
                row["t"] = to_gen(e.t, 17);
                row["residual"] = to_sci(e.residual, 6);
                row["tolerance"] = to_sci(e.tolerance, 6);
                row["method"] = method_name(e.method);
                row["pass"] = e.pass;
                rows.append(row);
            }
            return rows;
        },
        py::arg("nu"), py::arg("t"), py::arg("n_max") = 4, py::arg("digits") = 20,
        py::arg("suite") = "all", py::arg("seed") = 42,
        "run the identity suite; one dict per (identity, degree)");

    m.def("identity_catalog", [] { return verify_id_catalog(); },
          "identity ids covered by verify(suite='all')");
}
