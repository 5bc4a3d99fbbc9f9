#ifndef OPOLY_IDENTITIES_HPP
#define OPOLY_IDENTITIES_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "opoly/hankel.hpp"
#include "opoly/report.hpp"

namespace opoly {

// Deterministic sample generator (xorshift64*, constants 12/25/27 and
// multiplier 2685821657736338717) so golden outputs are portable.
class SampleGen {
  public:
    explicit SampleGen(std::uint64_t seed);
    std::uint64_t next();
    double uniform();  // [0, 1), 53-bit
    // dyadic double in (lo, hi), converted to Real exactly
    Real uniform_real(double lo, double hi);
    std::vector<Real> samples(int count, double lo, double hi);

  private:
    std::uint64_t state_;
};

// Weighted inner-product integrals int_0^inf f(x) x^{nu+shift} e^{-x-t/x} dx
// by the exp-substituted trapezoid rule; backbone of the x^{-1}, x^{-2} rows.
Real weighted_integral(const Real& nu, const Real& t, const Real& shift,
                       const std::function<Real(const Real&)>& f, const PrecisionContext& ctx);

// Lemma rows: the four x^{nu-1}, x^{nu-2} inner products against their
// coefficient expressions (ids 2.1-2.4).
ResidualReport lemma1(const RecurrenceTable& table, const PrecisionContext& ctx);

// First-order differential-difference equation in x plus the free-term
// recurrence and product formula (ids 2.5, 2.10, 2.11).
ResidualReport thm1_ddx(const RecurrenceTable& table, const std::vector<Real>& x_samples,
                        const PrecisionContext& ctx);

// All t-derivative and t-integral relations for the recurrence data
// (ids 2.15, 2.16, 2.18, 2.26-2.29, 2.32-2.35, 2.37, 3.3, 3.16, 3.17).
// Stencil tables are built at fd_scale (defaults to ctx.fd_step_scale);
// grid_density scales the panel count of the log-t integration grid.
ResidualReport t_relations(const Real& nu, const Real& t, int n_max, const PrecisionContext& ctx,
                           double fd_scale = 0, int grid_density = 1);

// Partial differential-difference equation in (x, t) (id 2.22).
ResidualReport thm2_pde(const Real& nu, const Real& t, int n_max,
                        const std::vector<Real>& x_samples, const PrecisionContext& ctx,
                        double fd_scale = 0);

// Second-order ODE in x, long and reduced forms, plus the scalar identities
// (ids 2.38, 3.6, 3.1, 3.2, 3.5, 3.8).
ResidualReport thm3_ode(const RecurrenceTable& table, const std::vector<Real>& x_samples,
                        const PrecisionContext& ctx);

// Volterra-type representation of P_n as a t-integral against P_{n-1}
// (id 3.11).
ResidualReport thm5_integral(const Real& nu, const Real& t, int n,
                             const std::vector<Real>& x_samples, const PrecisionContext& ctx,
                             int grid_density = 1);

// Coefficient reconstruction through t-derivatives and the alternative
// three-term forms (ids 3.12, 3.13, 3.14).
ResidualReport thm6_thm7(const Real& nu, const Real& t, int n_max,
                         const std::vector<Real>& x_samples, const PrecisionContext& ctx,
                         double fd_scale = 0);

struct VerifyConfig {
    Real nu;
    Real t;
    int n_max = 6;
    int digits = 30;
    std::uint64_t seed = 42;
    std::set<std::string> suite;  // identity ids; empty or {"all"} = everything
    double fd_scale = 0;          // 0 = derive from digits
    int grid_density = 1;
};

// Runs every requested identity family against one (nu, t) and returns the
// combined, deterministically ordered report.
ResidualReport run_verify(const VerifyConfig& cfg);

// The identity ids run_verify covers with suite = all.
const std::vector<std::string>& verify_id_catalog();

}  // namespace opoly

#endif
