#include "opoly/rho.hpp"

#include <algorithm>
#include <string>

namespace opoly {

namespace {

// Workspace for the shared-node trapezoid sums of the family x^{nu+k-1},
// k_min..k_max. Raw mpfr storage and in-place ops: this loop is the hot path
// of every table build. Per node the weight e^{-x-t/x} x^{nu+k_min} is formed
// once and walked up the k range by repeated multiplication with x.
class MomentQuad {
  public:
    MomentQuad(const Real& nu, const Real& t, int k_min, int k_max, mpfr_prec_t prec)
        : m_(k_max - k_min + 1), prec_(prec), nu_min_(nu + Real(k_min)), t_(t), u_lo_(0),
          u_hi_(0) {
        mpfr_inits2(prec_, u_, x_, w_, arg_, tmp_, (mpfr_ptr) nullptr);
        sums_.assign(static_cast<size_t>(m_), Real(0));
        maxabs_.assign(static_cast<size_t>(m_), Real(0));
    }
    ~MomentQuad() { mpfr_clears(u_, x_, w_, arg_, tmp_, (mpfr_ptr) nullptr); }
    MomentQuad(const MomentQuad&) = delete;
    MomentQuad& operator=(const MomentQuad&) = delete;

    // adds g_k(idx*h) to the running sums; returns true if every component
    // is below trunc_eps relative to its own running maximum
    bool accumulate(const Real& h, long idx, const Real& trunc_eps) {
        ++evals_;
        mpfr_mul_si(u_, h.raw(), idx, MPFR_RNDN);
        mpfr_exp(x_, u_, MPFR_RNDN);
        // arg = (nu + k_min) u - x - t/x
        mpfr_div(tmp_, t_.raw(), x_, MPFR_RNDN);
        mpfr_mul(arg_, nu_min_.raw(), u_, MPFR_RNDN);
        mpfr_sub(arg_, arg_, x_, MPFR_RNDN);
        mpfr_sub(arg_, arg_, tmp_, MPFR_RNDN);
        mpfr_exp(w_, arg_, MPFR_RNDN);
        if (!mpfr_number_p(w_)) throw DomainError("moment quadrature: non-finite sample");
        bool all_small = true;
        for (int k = 0; k < m_; ++k) {
            auto& sum = sums_[static_cast<size_t>(k)];
            auto& mx = maxabs_[static_cast<size_t>(k)];
            mpfr_add(sum.raw(), sum.raw(), w_, MPFR_RNDN);
            mpfr_abs(tmp_, w_, MPFR_RNDN);
            if (mpfr_cmp(tmp_, mx.raw()) > 0) mpfr_set(mx.raw(), tmp_, MPFR_RNDN);
            if (all_small) {
                mpfr_mul(arg_, trunc_eps.raw(), mx.raw(), MPFR_RNDN);
                if (mpfr_cmp(tmp_, arg_) > 0) all_small = false;
            }
            mpfr_mul(w_, w_, x_, MPFR_RNDN);
        }
        if (!all_small) {
            // keep the support window: refinement passes must reach it even
            // if the integrand is negligible near u = 0 (large-t case, where
            // the mass sits around x = sqrt(t))
            if (mpfr_cmp(u_, u_hi_.raw()) > 0) mpfr_set(u_hi_.raw(), u_, MPFR_RNDN);
            if (mpfr_cmp(u_, u_lo_.raw()) < 0) mpfr_set(u_lo_.raw(), u_, MPFR_RNDN);
        }
        return all_small;
    }

    // one full outward scan at step h starting from scratch
    void scan_full(const Real& h, const Real& trunc_eps, long eval_budget) {
        reset();
        accumulate(h, 0, trunc_eps);
        scan_outward(h, 1, trunc_eps, eval_budget);
    }

    // refine to step h/2 reusing the existing sums: only odd multiples of the
    // halved step are new
    void scan_refine(const Real& h_half, const Real& trunc_eps, long eval_budget) {
        scan_outward(h_half, 2, trunc_eps, eval_budget);
    }

    std::vector<Real> scaled_sums(const Real& h) const {
        std::vector<Real> out(sums_.begin(), sums_.end());
        for (auto& s : out) s *= h;
        return out;
    }
    long evals() const { return evals_; }

  private:
    // outward stall-terminated scan over idx = start, start+step, ... on both
    // sides; never stops inside the recorded support window
    void scan_outward(const Real& h, long stride, const Real& trunc_eps, long eval_budget) {
        for (int dir = -1; dir <= 1; dir += 2) {
            int stall = 0;
            for (long idx = 1; ; idx += stride) {
                if (evals_ > eval_budget)
                    throw NonConvergence("moment quadrature: evaluation budget exhausted");
                bool small = accumulate(h, dir * idx, trunc_eps);
                stall = small ? stall + 1 : 0;
                if (stall >= stall_limit) {
                    bool inside = dir > 0 ? mpfr_cmp(u_, u_hi_.raw()) < 0
                                          : mpfr_cmp(u_, u_lo_.raw()) > 0;
                    if (!inside) break;
                }
            }
        }
    }

    void reset() {
        for (auto& s : sums_) s = Real(0);
        for (auto& m : maxabs_) m = Real(0);
    }
    static constexpr int stall_limit = 6;
    int m_;
    mpfr_prec_t prec_;
    Real nu_min_;
    Real t_;
    std::vector<Real> sums_;
    std::vector<Real> maxabs_;
    Real u_lo_, u_hi_;
    long evals_ = 0;
    mpfr_t u_, x_, w_, arg_, tmp_;
};

std::vector<Real> moment_family(const Real& nu, const Real& t, int k_min, int k_max,
                                const PrecisionContext& ctx) {
    if (!(t > 0)) throw DomainError("rho: t must be positive");
    if (k_min > k_max) throw DomainError("moment_table: k_min > k_max");
    PrecisionScope scope(ctx.bits);
    // Converge past the digit target when the working precision allows it:
    // downstream Hankel work amplifies moment error by the condition number,
    // and precision doubling must actually buy accuracy there. The +45 cap
    // bounds the extra quadrature depth (enough for the conditioning at the
    // n_max hard cap) so retries at large bit counts stay affordable.
    const long qd =
        std::max<long>(ctx.target_digits + 5,
                       std::min<long>(static_cast<long>(ctx.bits * 0.30103) - 12,
                                      ctx.target_digits + 45));
    const Real tol = pow10(-qd);
    const Real trunc_eps = pow10(-(qd + 5));
    const long eval_budget = 2'000'000;
    const int m = k_max - k_min + 1;

    MomentQuad quad(nu, t, k_min, k_max, ctx.bits);
    Real h(ctx.quad_step);
    quad.scan_full(h, trunc_eps, eval_budget);
    std::vector<Real> prev = quad.scaled_sums(h);
    for (int level = 1; level <= ctx.quad_halvings_max; ++level) {
        h = h / 2;
        quad.scan_refine(h, trunc_eps, eval_budget);
        std::vector<Real> cur = quad.scaled_sums(h);
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            Real delta = abs(cur[static_cast<size_t>(k)] - prev[static_cast<size_t>(k)]);
            Real scale = max(abs(cur[static_cast<size_t>(k)]), Real(1e-300));
            if (delta > tol * scale) ok = false;
        }
        if (ok) return cur;
        prev = std::move(cur);
    }
    throw NonConvergence("moment quadrature: no convergence after " +
                         std::to_string(ctx.quad_halvings_max) + " halvings");
}

}  // namespace

Real rho(const Real& nu, const Real& t, const PrecisionContext& ctx) {
    return moment_family(nu, t, 0, 0, ctx)[0];
}

MomentTable moment_table(const Real& nu, const Real& t, int k_min, int k_max,
                         const PrecisionContext& ctx) {
    MomentTable tab;
    tab.nu = nu;
    tab.t = t;
    tab.k_min = k_min;
    tab.k_max = k_max;
    tab.values = moment_family(nu, t, k_min, k_max, ctx);

    PrecisionScope scope(ctx.bits);
    for (const Real& v : tab.values)
        if (!(v > 0)) throw RecurrenceViolation("moment_table: nonpositive entry");
    const Real tol = pow10(-(ctx.target_digits - 5));
    for (int k = k_min + 1; k < k_max; ++k) {
        Real lhs = tab.at(k + 1);
        Real rhs = (nu + k) * tab.at(k) + t * tab.at(k - 1);
        if (abs(lhs - rhs) > tol * abs(lhs))
            throw RecurrenceViolation("moment_table: three-term self-check failed at k = " +
                                      std::to_string(k));
    }
    return tab;
}

Real rho_derivative(const Real& nu, const Real& t, int n, const PrecisionContext& ctx) {
    if (n < 0) throw DomainError("rho_derivative: n must be nonnegative");
    Real v = rho(nu - n, t, ctx);
    return (n % 2 == 0) ? v : -v;
}

Real rho_derivative_fd_residual(const Real& nu, const Real& t, int n,
                                const PrecisionContext& ctx) {
    if (n != 1 && n != 2) throw DomainError("rho_derivative_fd_residual: n must be 1 or 2");
    PrecisionScope scope(ctx.bits);
    Real fd = central_difference([&](const Real& y) { return rho(nu, y, ctx); }, t, n, ctx);
    return abs(fd - rho_derivative(nu, t, n, ctx));
}

Real check_fractional_identity(const Real& nu, const Real& t, const PrecisionContext& ctx) {
    if (!(t > 0)) throw DomainError("check_fractional_identity: t must be positive");
    PrecisionScope scope(ctx.bits);
    // int_t^inf rho_nu(s) ds = int_0^inf rho_nu(t+x) dx; the shifted integrand
    // decays singly on the left of the u-line, double-exponentially on the right.
    IntegralResult integral =
        integrate_halfline([&](const Real& x) { return rho(nu, t + x, ctx); }, ctx);
    Real lhs = rho(nu + 1, t, ctx);
    return abs(lhs - integral.value);
}

}  // namespace opoly
