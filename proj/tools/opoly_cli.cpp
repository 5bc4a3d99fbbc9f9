// Command line front end: every pipeline behind one binary with
// deterministic, machine-readable output.
//
// Exit codes: 0 success / all checks passed; 1 identity failure;
// 2 usage error; 3 precision or convergence failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opoly/expansion.hpp"
#include "opoly/identities.hpp"
#include "opoly/laguerre.hpp"
#include "opoly/quadrature.hpp"

namespace {

using namespace opoly;

int write_out(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return 2;
    }
    os << payload;
    return 0;
}

std::string coeffs_json(const RecurrenceTable& tab, int digits) {
    std::ostringstream os;
    os << "{\n  \"nu\": \"" << to_gen(tab.nu, digits) << "\",\n  \"t\": \""
       << to_gen(tab.t, digits) << "\",\n  \"n_max\": " << tab.n_max
       << ",\n  \"precision_bits\": " << tab.achieved_bits << ",\n  \"rows\": [\n";
    for (int n = 0; n <= tab.n_max; ++n) {
        const auto& r = tab.row(n);
        os << "    {\"n\": " << n << ", \"a_n\": \"" << to_gen(r.a, digits) << "\", \"b_n\": \""
           << to_gen(r.b, digits) << "\", \"A_n\": \"" << to_gen(r.A, digits)
           << "\", \"B_n\": \"" << to_gen(r.B, digits) << "\", \"coeffs\": [";
        for (int k = 0; k <= n; ++k)
            os << '"' << to_gen(r.coeffs[static_cast<size_t>(k)], digits) << '"'
               << (k < n ? ", " : "");
        os << "]}" << (n < tab.n_max ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

std::string coeffs_csv(const RecurrenceTable& tab, int digits) {
    std::ostringstream os;
    os << "n,a_n,b_n,A_n,B_n,coeffs\n";
    for (int n = 0; n <= tab.n_max; ++n) {
        const auto& r = tab.row(n);
        os << n << ',' << to_gen(r.a, digits) << ',' << to_gen(r.b, digits) << ','
           << to_gen(r.A, digits) << ',' << to_gen(r.B, digits) << ',';
        for (int k = 0; k <= n; ++k)
            os << to_gen(r.coeffs[static_cast<size_t>(k)], digits) << (k < n ? ";" : "");
        os << '\n';
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthonormal polynomials for the weight x^nu exp(-x - t/x)"};
    app.require_subcommand(1);

    double nu = 0.5, t = 1.0, x = 1.0;
    int n_max = 6, n = 0, m = 4, k_max = -1, digits = 30;
    std::uint64_t seed = 42;
    std::string format = "csv", out, suite = "all";

    auto add_common = [&](CLI::App* cmd, bool with_t = true) {
        cmd->add_option("--nu", nu, "weight exponent nu")->required();
        if (with_t) cmd->add_option("--t", t, "weight parameter t > 0")->required();
        cmd->add_option("--digits", digits, "target decimal digits")
            ->check(CLI::Range(10, 200));
        cmd->add_option("--out", out, "write output to a file instead of stdout");
    };

    auto* c_rho = app.add_subcommand("rho", "evaluate the moment kernel rho_nu(t)");
    add_common(c_rho);

    auto* c_coeffs = app.add_subcommand("coeffs", "recurrence table for the weight");
    add_common(c_coeffs);
    c_coeffs->add_option("--n-max", n_max, "largest degree")->check(CLI::Range(0, 24));
    c_coeffs->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* c_quad = app.add_subcommand("quad", "Gauss rule nodes and weights");
    add_common(c_quad);
    c_quad->add_option("--m", m, "number of quadrature points")->check(CLI::Range(1, 24));
    c_quad->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* c_verify = app.add_subcommand("verify", "run the identity suite");
    add_common(c_verify);
    c_verify->add_option("--n-max", n_max, "largest degree checked");
    c_verify->add_option("--suite", suite, "comma list of identity ids, or 'all'");
    c_verify->add_option("--seed", seed, "sample generator seed");
    c_verify->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* c_expand = app.add_subcommand("expand", "Laguerre expansion coefficients d_{n,k}");
    add_common(c_expand);
    c_expand->add_option("--n", n, "polynomial degree")->required();
    c_expand->add_option("--k-max", k_max, "largest expansion index (default n+24)");

    auto* c_limit = app.add_subcommand("limit", "closed-form t=0 data vs the small-t pipeline");
    add_common(c_limit, false);
    c_limit->add_option("--n-max", n_max, "largest degree compared");

    auto* c_eval = app.add_subcommand("eval", "evaluate P_n(x, t)");
    add_common(c_eval);
    c_eval->add_option("--n", n, "degree")->required();
    c_eval->add_option("--x", x, "evaluation point")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_rho)) {
            PrecisionContext ctx = PrecisionContext::make(digits);
            PrecisionScope scope(ctx.bits);
            Real v = rho(Real(nu), Real(t), ctx);
            return write_out(to_gen(v, digits) + "\n", out);
        }
        if (app.got_subcommand(c_coeffs)) {
            PrecisionContext ctx = PrecisionContext::make(digits, n_max);
            PrecisionScope scope(ctx.bits);
            RecurrenceTable tab = build_recurrence(Real(nu), Real(t), n_max, ctx);
            return write_out(format == "json" ? coeffs_json(tab, digits) : coeffs_csv(tab, digits),
                             out);
        }
        if (app.got_subcommand(c_quad)) {
            PrecisionContext ctx = PrecisionContext::make(digits, m);
            PrecisionScope scope(ctx.bits);
            RecurrenceTable tab = build_recurrence(Real(nu), Real(t), std::max(m - 1, 0), ctx);
            QuadratureRule rule = gauss_rule(tab, m, ctx);
            std::ostringstream os;
            if (format == "json") {
                os << "{\"nu\": \"" << to_gen(rule.nu, digits) << "\", \"t\": \""
                   << to_gen(rule.t, digits) << "\", \"m\": " << rule.m << ", \"nodes\": [";
                for (int i = 0; i < rule.m; ++i)
                    os << '"' << to_gen(rule.nodes[static_cast<size_t>(i)], digits) << '"'
                       << (i + 1 < rule.m ? ", " : "");
                os << "], \"weights\": [";
                for (int i = 0; i < rule.m; ++i)
                    os << '"' << to_gen(rule.weights[static_cast<size_t>(i)], digits) << '"'
                       << (i + 1 < rule.m ? ", " : "");
                os << "]}\n";
            } else {
                os << "node,weight\n";
                for (int i = 0; i < rule.m; ++i)
                    os << to_gen(rule.nodes[static_cast<size_t>(i)], digits) << ','
                       << to_gen(rule.weights[static_cast<size_t>(i)], digits) << '\n';
            }
            return write_out(os.str(), out);
        }
        if (app.got_subcommand(c_verify)) {
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
            std::ostringstream os;
            if (format == "json")
                rep.write_json(os);
            else
                rep.write_csv(os);
            int rc = write_out(os.str(), out);
            if (rc != 0) return rc;
            if (!rep.all_pass()) {
                std::cerr << "verify: at least one identity failed its tolerance\n";
                return 1;
            }
            return 0;
        }
        if (app.got_subcommand(c_expand)) {
            if (k_max < 0) k_max = n + 24;
            PrecisionContext ctx = PrecisionContext::make(digits, n);
            PrecisionScope scope(ctx.bits);
            RecurrenceTable tab = build_recurrence(Real(nu), Real(t), n, ctx);
            ExpansionCoeffs d = d_coeffs(tab, n, k_max, ctx);
            Real h = lemma2_bound(tab, n, ctx);
            Real g = gamma_positive(Real(nu) + 1, ctx);
            Real kfac(1);
            std::ostringstream os;
            os << "k,d_nk,bound\n";
            for (int k = 0; k <= k_max; ++k) {
                if (k > 0) {
                    kfac *= k;
                    g *= Real(nu) + k;
                }
                os << k << ',' << to_gen(d.d[static_cast<size_t>(k)], digits) << ','
                   << to_gen(kfac * h / g, digits) << '\n';
            }
            return write_out(os.str(), out);
        }
        if (app.got_subcommand(c_limit)) {
            PrecisionContext ctx = PrecisionContext::make(std::max(digits, 30), n_max);
            PrecisionScope scope(ctx.bits);
            const Real t_small(1e-24);
            RecurrenceTable tab = build_recurrence(Real(nu), t_small, n_max, ctx);
            std::ostringstream os;
            os << "n,which,limit_value,computed,abs_diff\n";
            auto emit = [&](int deg, const char* name, LimitWhich w, const Real& computed) {
                Real lim = limit_values(deg, Real(nu), w, ctx);
                os << deg << ',' << name << ',' << to_gen(lim, digits) << ','
                   << to_gen(computed, digits) << ',' << to_sci(abs(lim - computed), 3) << '\n';
            };
            for (int deg = 0; deg <= n_max; ++deg) {
                const auto& r = tab.row(deg);
                emit(deg, "a", LimitWhich::a, r.a);
                emit(deg, "b", LimitWhich::b, r.b);
                emit(deg, "A", LimitWhich::A, r.A);
                emit(deg, "B", LimitWhich::B, r.B);
                emit(deg, "a0", LimitWhich::a0, r.coeffs[0]);
            }
            return write_out(os.str(), out);
        }
        if (app.got_subcommand(c_eval)) {
            PrecisionContext ctx = PrecisionContext::make(digits, n);
            PrecisionScope scope(ctx.bits);
            RecurrenceTable tab = build_recurrence(Real(nu), Real(t), n, ctx);
            return write_out(to_gen(tab.eval(n, Real(x)), digits) + "\n", out);
        }
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const NonConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
