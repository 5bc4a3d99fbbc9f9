#include "opoly/report.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace opoly {

const char* method_name(Method m) {
    switch (m) {
        case Method::algebraic: return "algebraic";
        case Method::quadrature: return "quadrature";
        case Method::finite_difference: return "finite_difference";
        case Method::t_grid_integral: return "t_grid_integral";
    }
    return "?";
}

bool ResidualReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

void ResidualReport::merge(ResidualReport other) {
    for (auto& e : other.entries) entries.push_back(std::move(e));
}

namespace {
std::pair<int, int> id_key(const std::string& id) {
    auto dot = id.find('.');
    if (dot == std::string::npos) return {std::atoi(id.c_str()), 0};
    return {std::atoi(id.substr(0, dot).c_str()), std::atoi(id.substr(dot + 1).c_str())};
}
}  // namespace

void ResidualReport::sort() {
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        auto ka = id_key(a.identity_id), kb = id_key(b.identity_id);
        if (ka != kb) return ka < kb;
        if (a.n != b.n) return a.n < b.n;
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.t < b.t;
    });
}

bool ResidualReport::has_id(const std::string& id) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.identity_id == id; });
}

void ResidualReport::write_csv(std::ostream& os) const {
    os << "identity_id,n,nu,t,residual,tolerance,method,pass\n";
    for (const auto& e : entries) {
        os << e.identity_id << ',' << e.n << ',' << to_gen(e.nu, 17) << ',' << to_gen(e.t, 17)
           << ',' << to_sci(e.residual, 6) << ',' << to_sci(e.tolerance, 6) << ','
           << method_name(e.method) << ',' << (e.pass ? "true" : "false") << '\n';
    }
}

void ResidualReport::write_json(std::ostream& os) const {
    os << "[\n";
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        os << "  {\"identity_id\":\"" << e.identity_id << "\",\"n\":" << e.n << ",\"nu\":\""
           << to_gen(e.nu, 17) << "\",\"t\":\"" << to_gen(e.t, 17) << "\",\"residual\":\""
           << to_sci(e.residual, 6) << "\",\"tolerance\":\"" << to_sci(e.tolerance, 6)
           << "\",\"method\":\"" << method_name(e.method) << "\",\"pass\":"
           << (e.pass ? "true" : "false") << '}' << (i + 1 < entries.size() ? "," : "") << '\n';
    }
    os << "]\n";
}

void ReportBuilder::add(const std::string& id, int n, const Real& residual, const Real& tolerance,
                        Method method) {
    for (auto& e : report_.entries) {
        if (e.identity_id == id && e.n == n) {
            if (residual > e.residual) e.residual = residual;
            if (tolerance < e.tolerance) e.tolerance = tolerance;
            e.pass = e.residual < e.tolerance;
            return;
        }
    }
    ResidualEntry e;
    e.identity_id = id;
    e.n = n;
    e.nu = nu_;
    e.t = t_;
    e.residual = residual;
    e.tolerance = tolerance;
    e.method = method;
    e.pass = residual < tolerance;
    report_.entries.push_back(std::move(e));
}

void ReportBuilder::add_scaled(const std::string& id, int n, const Real& lhs, const Real& rhs,
                               const Real& scale, const Real& tolerance, Method method) {
    Real res = abs(lhs - rhs) / max(Real(1), abs(scale));
    add(id, n, res, tolerance, method);
}

ResidualReport ReportBuilder::take() {
    report_.sort();
    return std::move(report_);
}

Real tolerance_for(Method m, const PrecisionContext& ctx, const Real& aux) {
    switch (m) {
        case Method::algebraic:
        case Method::quadrature:
            return pow10(-(ctx.target_digits / 2));
        case Method::finite_difference:
            return 10 * aux * aux;
        case Method::t_grid_integral:
            return 10 * aux;
    }
    return Real(0);
}

}  // namespace opoly
