#ifndef OPOLY_REPORT_HPP
#define OPOLY_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "opoly/numerics.hpp"

namespace opoly {

enum class Method { algebraic, quadrature, finite_difference, t_grid_integral };

const char* method_name(Method m);

// One verified identity instance. Residuals are scaled by the summed
// magnitude of the participating terms (floored at 1), so tolerances compare
// against a relative defect.
struct ResidualEntry {
    std::string identity_id;  // e.g. "2.27"
    int n = 0;
    Real nu;
    Real t;
    Real residual;
    Real tolerance;
    Method method = Method::algebraic;
    bool pass = false;
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;

    bool all_pass() const;
    void merge(ResidualReport other);
    // Deterministic order: identity id (numeric-aware), then n, then (nu, t).
    void sort();
    bool has_id(const std::string& id) const;

    // CSV with header "identity_id,n,nu,t,residual,tolerance,method,pass".
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

// Accumulates per-(id, n) rows; repeated adds keep the worst residual.
class ReportBuilder {
  public:
    ReportBuilder(const Real& nu, const Real& t) : nu_(nu), t_(t) {}

    void add(const std::string& id, int n, const Real& residual, const Real& tolerance,
             Method method);
    // residual = |lhs - rhs| / max(1, scale)
    void add_scaled(const std::string& id, int n, const Real& lhs, const Real& rhs,
                    const Real& scale, const Real& tolerance, Method method);

    ResidualReport take();

  private:
    Real nu_, t_;
    ResidualReport report_;
};

// Method-specific tolerances: 10^{-target_digits/2} for algebraic and
// quadrature rows; 10 h^2 for finite differences with step h; ten times the
// measured refinement gap (plus any truncation allowance folded into `aux`)
// for t-grid integrals.
Real tolerance_for(Method m, const PrecisionContext& ctx, const Real& aux = Real(0));

}  // namespace opoly

#endif
