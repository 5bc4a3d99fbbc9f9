#include "opoly/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opoly/detail/gauss_legendre.hpp"
#include "opoly/expansion.hpp"
#include "opoly/laguerre.hpp"

namespace opoly {

SampleGen::SampleGen(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

std::uint64_t SampleGen::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ULL;
}

double SampleGen::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Real SampleGen::uniform_real(double lo, double hi) { return Real(lo + (hi - lo) * uniform()); }

std::vector<Real> SampleGen::samples(int count, double lo, double hi) {
    std::vector<Real> xs;
    xs.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) xs.push_back(uniform_real(lo, hi));
    return xs;
}

Real weighted_integral(const Real& nu, const Real& t, const Real& shift,
                       const std::function<Real(const Real&)>& f, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    return integrate_halfline(
               [&](const Real& x) { return exp(-x - t / x + (nu + shift) * log(x)) * f(x); }, ctx)
        .value;
}

namespace {

// ---------------------------------------------------------------- stencils

// Tables at t and t(1 +- delta), built with extra guard digits so central
// differences resolve well below their own O(h^2) truncation error.
struct Stencil {
    Real t;
    Real h;
    long bits = 0;
    RecurrenceTable c, p, m;

    template <typename Fn>
    Real d1(Fn f) const {
        PrecisionScope scope(bits);
        return (f(p) - f(m)) / (2 * h);
    }
    template <typename Fn>
    Real d2(Fn f) const {
        PrecisionScope scope(bits);
        return (f(p) - 2 * f(c) + f(m)) / (h * h);
    }
};

Stencil make_stencil(const Real& nu, const Real& t, int n_max, const PrecisionContext& ctx,
                     double rel_step) {
    PrecisionContext up = PrecisionContext::make(ctx.target_digits + 15, n_max);
    Stencil s;
    s.t = t;
    s.h = t * Real(rel_step);
    s.bits = up.bits;
    s.c = build_recurrence(nu, t, n_max, up);
    s.p = build_recurrence(nu, t + s.h, n_max, up);
    s.m = build_recurrence(nu, t - s.h, n_max, up);
    return s;
}

// ------------------------------------------------------------------- grid

// Composite Gauss-Legendre panels over s = ln y on [ln t - L, ln t], with
// tables cached at every node. Integrals are of the form int_0^t f(y) dy
// supplied as the s-space integrand g = f(y) y; the truncated lower tail is
// estimated from the first node under the known decay exponent.
class TGrid {
  public:
    TGrid(const Real& nu, const Real& t, int n_max, const PrecisionContext& ctx, int density,
          double alpha_min) {
        alpha_ = alpha_min;
        grid_digits_ = std::min(ctx.target_digits, 16);
        PrecisionContext gctx = PrecisionContext::make(grid_digits_, n_max);
        PrecisionScope scope(gctx.bits);
        double L = (grid_digits_ + 8) * 2.302585 / alpha_min;
        panels_ = static_cast<int>(std::ceil(L / 1.25)) * density;
        width_ = Real(L) / panels_;
        s_max_ = log(t);
        gl_ = detail::gauss_legendre(6);
        partial_ = partial_weights(gl_);
        int q = static_cast<int>(gl_.nodes.size());
        for (int p = 0; p < panels_; ++p) {
            Real a = s_max_ - Real(L) + Real(p) * width_;
            Real mid = a + width_ / 2, half = width_ / 2;
            for (int r = 0; r < q; ++r) {
                Real s = mid + half * gl_.nodes[static_cast<size_t>(r)];
                Real y = exp(s);
                // integrands divide by y (or by brackets vanishing like y), so
                // a node's table must carry extra digits matching its depth
                int depth = static_cast<int>((s_max_ - s).to_double() / 2.302585) + 1;
                PrecisionContext nctx = PrecisionContext::make(grid_digits_ + depth, n_max);
                ys_.push_back(y);
                node_bits_.push_back(nctx.bits);
                tables_.push_back(build_recurrence_fixed(nu, y, n_max, nctx));
            }
        }
    }

    int node_count() const { return static_cast<int>(ys_.size()); }
    const Real& y(int i) const { return ys_[static_cast<size_t>(i)]; }
    const RecurrenceTable& table(int i) const { return tables_[static_cast<size_t>(i)]; }

    // integrands are evaluated under each node's own precision scope: deep
    // nodes divide by y-sized cancellations that ambient precision would wipe
    Real eval_node(const std::function<Real(int)>& g, int i) const {
        PrecisionScope scope(node_bits_[static_cast<size_t>(i)]);
        return g(i);
    }

    Real tail_of(const std::function<Real(int)>& g) const {
        return abs(eval_node(g, 0)) * Real(8.0 / alpha_);
    }

    Real integrate(const std::function<Real(int)>& g) const {
        int q = static_cast<int>(gl_.nodes.size());
        Real total(0);
        for (int p = 0; p < panels_; ++p) {
            Real s(0);
            for (int r = 0; r < q; ++r)
                s += gl_.weights[static_cast<size_t>(r)] * eval_node(g, p * q + r);
            total += s * (width_ / 2);
        }
        return total;
    }

    // cumulative integral at every node (tail estimate folded in as the
    // starting constant), via exact integration of the per-panel interpolant
    std::vector<Real> cumulative(const std::function<Real(int)>& g) const {
        int q = static_cast<int>(gl_.nodes.size());
        std::vector<Real> vals(ys_.size());
        for (size_t i = 0; i < ys_.size(); ++i) vals[i] = eval_node(g, static_cast<int>(i));
        std::vector<Real> out(ys_.size(), Real(0));
        Real carried = tail_of(g);
        for (int p = 0; p < panels_; ++p) {
            for (int a = 0; a < q; ++a) {
                Real s(0);
                for (int r = 0; r < q; ++r)
                    s += partial_[static_cast<size_t>(a)][static_cast<size_t>(r)] *
                         vals[static_cast<size_t>(p * q + r)];
                out[static_cast<size_t>(p * q + a)] = carried + s * (width_ / 2);
            }
            Real full(0);
            for (int r = 0; r < q; ++r)
                full += gl_.weights[static_cast<size_t>(r)] * vals[static_cast<size_t>(p * q + r)];
            carried += full * (width_ / 2);
        }
        return out;
    }
    Real cumulative_total(const std::function<Real(int)>& g) const {
        return tail_of(g) + integrate(g);
    }

  private:
    // W[a][r] = int_{-1}^{xi_a} l_r; closed-form integration of the Lagrange
    // basis through the GL nodes
    static std::vector<std::vector<Real>> partial_weights(const detail::GLRule& gl) {
        int q = static_cast<int>(gl.nodes.size());
        std::vector<std::vector<Real>> w(static_cast<size_t>(q),
                                         std::vector<Real>(static_cast<size_t>(q), Real(0)));
        for (int r = 0; r < q; ++r) {
            // coefficients of l_r by incremental multiplication
            std::vector<Real> c = {Real(1)};
            Real denom(1);
            for (int s = 0; s < q; ++s) {
                if (s == r) continue;
                c.push_back(Real(0));
                for (int d = static_cast<int>(c.size()) - 1; d > 0; --d)
                    c[static_cast<size_t>(d)] = c[static_cast<size_t>(d) - 1] -
                                                gl.nodes[static_cast<size_t>(s)] *
                                                    c[static_cast<size_t>(d)];
                c[0] = -gl.nodes[static_cast<size_t>(s)] * c[0];
                denom *= gl.nodes[static_cast<size_t>(r)] - gl.nodes[static_cast<size_t>(s)];
            }
            // antiderivative evaluated at xi_a minus at -1
            for (int a = 0; a < q; ++a) {
                Real acc(0), x = gl.nodes[static_cast<size_t>(a)];
                Real at_lo(0), xm(-1);
                for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d) {
                    acc = acc * x + c[static_cast<size_t>(d)] / (d + 1);
                    at_lo = at_lo * xm + c[static_cast<size_t>(d)] / (d + 1);
                }
                acc = acc * x - at_lo * xm;
                w[static_cast<size_t>(a)][static_cast<size_t>(r)] = acc / denom;
            }
        }
        return w;
    }

    double alpha_ = 1.0;
    int grid_digits_ = 16;
    int panels_ = 0;
    Real width_;
    Real s_max_;
    detail::GLRule gl_;
    std::vector<std::vector<Real>> partial_;
    std::vector<Real> ys_;
    std::vector<long> node_bits_;
    std::vector<RecurrenceTable> tables_;
};

double alpha_for(const Real& nu) {
    double nd = nu.to_double();
    return nd > 0 ? std::min(1.0, nd) : 1.0 + nd;
}

// evaluate a grid-dependent right-hand side on both densities; tolerance is
// ten times the refinement gap plus the truncation allowance
struct GridEval {
    Real value;       // fine-grid value
    Real uncertainty; // |coarse - fine| + fine tail bound
};

void add_grid_row(ReportBuilder& rb, const PrecisionContext& ctx, const std::string& id, int n,
                  const Real& lhs, const GridEval& ge) {
    Real scale = max(Real(1), max(abs(lhs), abs(ge.value)));
    Real gap = (ge.uncertainty + pow10(-ctx.target_digits)) / scale;
    if (gap > Real(1e-3))
        throw GridTooCoarse("t-grid refinements disagree beyond tolerance for id " + id);
    Real res = abs(lhs - ge.value) / scale;
    rb.add(id, n, res, tolerance_for(Method::t_grid_integral, ctx, gap),
           Method::t_grid_integral);
}

// ----------------------------------------------------------- family impls

ResidualReport lemma1_impl(const RecurrenceTable& table, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    ReportBuilder rb(nu, t);
    const Real tol = tolerance_for(Method::quadrature, ctx);
    for (int n = 1; n <= table.n_max; ++n) {
        const auto& r = table.row(n);
        Real sn = r.A * r.A + r.b / r.a;
        Real d0 = r.B - nu - 1 - 2 * n;
        auto pn2 = [&](const Real& x) {
            Real v = table.eval(n, x);
            return v * v;
        };
        auto pnpm = [&](const Real& x) {
            auto p = table.eval_all(n, x);
            return p[static_cast<size_t>(n)] * p[static_cast<size_t>(n) - 1];
        };
        {
            Real lhs = weighted_integral(nu, t, Real(-1), pn2, ctx);
            Real rhs = d0 / t;
            rb.add_scaled("2.1", n, lhs, rhs, abs(lhs) + abs(rhs), tol, Method::quadrature);
        }
        {
            Real lhs = weighted_integral(nu, t, Real(-2), pn2, ctx);
            Real rhs = (1 - (nu / t) * d0) / t;
            rb.add_scaled("2.2", n, lhs, rhs, abs(lhs) + abs(rhs), tol, Method::quadrature);
        }
        {
            Real lhs = weighted_integral(nu, t, Real(-1), pnpm, ctx);
            Real rhs = (r.A + (r.b / r.a) / r.A) / t;
            rb.add_scaled("2.3", n, lhs, rhs, abs(lhs) + abs(rhs), tol, Method::quadrature);
        }
        {
            Real lhs = weighted_integral(nu, t, Real(-2), pnpm, ctx);
            Real rhs = -((nu / t) * (r.A + (r.b / r.a) / r.A) + Real(n) / r.A) / t;
            rb.add_scaled("2.4", n, lhs, rhs, abs(lhs) + abs(rhs), tol, Method::quadrature);
        }
    }
    return rb.take();
}

ResidualReport thm1_impl(const RecurrenceTable& table, const std::vector<Real>& xs,
                         const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    const Real& nu = table.nu;
    ReportBuilder rb(nu, table.t);
    const Real tol = tolerance_for(Method::algebraic, ctx);
    std::vector<Real> free_terms = free_term_product(table, ctx);
    for (int n = 1; n <= table.n_max; ++n) {
        const auto& r = table.row(n);
        Real sn = r.A * r.A + r.b / r.a;
        Real d0 = r.B - nu - 1 - 2 * n;
        for (const Real& x : xs) {
            auto p = table.eval_all(n, x);
            Real dp = table.eval_coeffs(n, x, 1);
            Real t1 = x * x * dp;
            Real t2 = (Real(n) * x - sn) * p[static_cast<size_t>(n)];
            Real t3 = r.A * (x + d0) * p[static_cast<size_t>(n) - 1];
            Real sc = abs(t1) + abs(t2) + abs(t3);
            rb.add_scaled("2.5", n, t1, t2 + t3, sc, tol, Method::algebraic);
        }
        {
            Real lhs = sn * r.coeffs[0];
            Real rhs = d0 * r.A * table.row(n - 1).coeffs[0];
            rb.add_scaled("2.11", n, lhs, rhs, abs(lhs) + abs(rhs), tol, Method::algebraic);
        }
        {
            const Real& lhs = r.coeffs[0];
            const Real& rhs = free_terms[static_cast<size_t>(n)];
            rb.add_scaled("2.10", n, lhs, rhs, abs(lhs) + abs(rhs), tol, Method::algebraic);
        }
    }
    return rb.take();
}

ResidualReport thm3_impl(const RecurrenceTable& table, const std::vector<Real>& xs,
                         const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    ReportBuilder rb(nu, t);
    const Real tol = tolerance_for(Method::algebraic, ctx);
    for (int n = 0; n <= table.n_max; ++n) {
        const auto& r = table.row(n);
        Real sn = r.A * r.A + r.b / r.a;
        Real d0 = r.B - nu - 1 - 2 * n;
        if (n + 1 <= table.n_max) {
            const auto& r1 = table.row(n + 1);
            Real t1 = r1.A * r1.A + r.B * r.B + r.A * r.A;
            Real t2 = (2 * n + nu + 2) * r.B;
            Real t3 = 2 * (r.b / r.a);
            Real sc = abs(t1) + abs(t2) + abs(t3) + t;
            rb.add_scaled("3.1", n, t1 - t2 + t3 - t, Real(0), sc, tol, Method::algebraic);
        }
        if (n == 0) continue;
        const auto& rm = table.row(n - 1);
        Real sm = rm.A * rm.A + (n >= 1 ? rm.b / rm.a : Real(0));
        Real e0 = rm.B - nu + 1 - 2 * n;
        {
            Real t1 = r.A * r.A * d0 * e0;
            Real t2 = sn * sn;
            Real t3 = t * sn;
            Real sc = abs(t1) + abs(t2) + abs(t3);
            rb.add_scaled("3.2", n, t1 - t2 + t3, Real(0), sc, tol, Method::algebraic);
        }
        {
            Real t1 = r.A * r.A * (r.B + rm.B - 2 * nu - 4 * n);
            Real t2 = (2 * n + nu) * sn;
            Real t3 = Real(n) * t;
            Real sc = abs(t1) + abs(t2) + abs(t3);
            rb.add_scaled("3.8", n, t1 + t2 - t3, Real(0), sc, tol, Method::algebraic);
        }
        {
            Real t1 = r.A * r.A * d0 * e0;
            Real t2 = sn * (sm + (rm.B - 2 * n - nu + 1) * rm.B);
            Real sc = abs(t1) + abs(t2);
            rb.add_scaled("3.5", n, t1 + t2, Real(0), sc, tol, Method::algebraic);
        }
        for (const Real& x : xs) {
            auto p = table.eval_all(n, x);
            const Real& pn = p[static_cast<size_t>(n)];
            Real dp = table.eval_coeffs(n, x, 1);
            Real d2p = table.eval_coeffs(n, x, 2);
            Real D = x + d0;
            Real E = x + e0;
            {
                // full second-order form
                Real c2 = pow(x, 4) * D;
                Real c1 = x * x *
                          (x * x + D * ((2 * n - 3) * x - r.A * r.A - rm.A * rm.A - r.b / r.a -
                                        rm.b / rm.a + E * (x - rm.B)));
                Real c0 = D * (r.A * r.A * D * E +
                               (Real(n) * x - sn) *
                                   ((Real(n) - 1) * x - sm + E * (x - rm.B))) -
                          x * x * (Real(n) * (r.B - nu - 2 * n - 1) + sn);
                Real t1 = c2 * d2p, t2 = c1 * dp, t3 = c0 * pn;
                Real sc = abs(t1) + abs(t2) + abs(t3);
                rb.add_scaled("2.38", n, t1 - t2 + t3, Real(0), sc, tol, Method::algebraic);
            }
            {
                // reduced form
                Real c2 = x * x * D;
                Real c1 = pow(x, 3) + (r.B - 2 * (nu + n + 1)) * x * x -
                          (t + d0 * (nu + 2)) * x - t * d0;
                Real c0 = Real(n) * x * x - (r.b / r.a - Real(n) * (r.B - 2 * nu - 3 * n - 1)) * x +
                          (r.B - nu - 2 * n - 1) * (r.A * r.A - Real(n) * (n + nu + 1)) +
                          sn * (2 * n + nu - r.B);
                Real t1 = c2 * d2p, t2 = c1 * dp, t3 = c0 * pn;
                Real sc = abs(t1) + abs(t2) + abs(t3);
                rb.add_scaled("3.6", n, t1 - t2 + t3, Real(0), sc, tol, Method::algebraic);
            }
        }
    }
    return rb.take();
}

ResidualReport thm2_impl(const Stencil& st, const std::vector<Real>& xs,
                         const PrecisionContext& ctx) {
    const RecurrenceTable& table = st.c;
    PrecisionScope scope(st.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    ReportBuilder rb(nu, t);
    const Real tol = tolerance_for(Method::finite_difference, ctx, st.h);
    for (int n = 0; n <= table.n_max; ++n) {
        const auto& r = table.row(n);
        Real da_over_a =
            st.d1([&](const RecurrenceTable& tb) { return tb.row(n).a; }) / r.a;
        for (const Real& x : xs) {
            Real pdot(0), xp(1);
            for (int k = 0; k <= n; ++k) {
                pdot += st.d1([&, k](const RecurrenceTable& tb) {
                    return tb.row(n).coeffs[static_cast<size_t>(k)];
                }) * xp;
                xp *= x;
            }
            auto p = table.eval_all(n, x);
            Real dp = table.eval_coeffs(n, x, 1);
            Real lhs = t * pdot + x * dp;
            Real rhs1 = (t * da_over_a + Real(n)) * p[static_cast<size_t>(n)];
            Real rhs2 = (r.B - nu - 1) / 2 * p[static_cast<size_t>(n)];
            Real cross = n >= 1 ? r.A * p[static_cast<size_t>(n) - 1] : Real(0);
            Real sc = max(abs(lhs), max(abs(rhs1 + cross), Real(1)));
            rb.add_scaled("2.22", n, lhs, rhs1 + cross, sc, tol, Method::finite_difference);
            rb.add_scaled("2.22", n, lhs, rhs2 + cross, sc, tol, Method::finite_difference);
        }
    }
    return rb.take();
}

ResidualReport thm6_thm7_impl(const Stencil& st, const std::vector<Real>& xs,
                              const PrecisionContext& ctx, int n_hi) {
    const RecurrenceTable& table = st.c;
    PrecisionScope scope(st.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    ReportBuilder rb(nu, t);
    const Real tol_fd = tolerance_for(Method::finite_difference, ctx, st.h);
    const Real tol_alg = tolerance_for(Method::algebraic, ctx);

    // coefficient reconstruction through t-derivatives
    for (int n = 1; n <= n_hi; ++n) {
        const auto& cn = table.row(n).coeffs;
        for (int k = 1; k <= n; ++k) {
            Real sum(0);
            for (int m = k; m <= n; ++m) {
                const auto& rm = table.row(m);
                Real am = rm.a, bm = rm.b;
                Real d_am = st.d1([&, m](const RecurrenceTable& tb) { return tb.row(m).a; });
                Real d_bm = st.d1([&, m](const RecurrenceTable& tb) { return tb.row(m).b; });
                Real d_cmk = st.d1([&, m, k](const RecurrenceTable& tb) {
                    return tb.row(m).coeffs[static_cast<size_t>(k) - 1];
                });
                Real cmk = rm.coeffs[static_cast<size_t>(k) - 1];
                sum += am * (am * d_cmk - cmk * d_am) /
                       ((am * d_bm - bm * d_am) * rm.coeffs[0]);
            }
            Real rhs = table.row(n).coeffs[0] * sum;
            const Real& lhs = cn[static_cast<size_t>(k)];
            rb.add_scaled("3.12", n, lhs, rhs, abs(lhs) + abs(rhs), tol_fd,
                          Method::finite_difference);
        }
    }

    // alternative three-term forms, with B'_n taken algebraically
    for (int n = 1; n <= n_hi; ++n) {
        const auto& r = table.row(n);
        const auto& r1 = table.row(n + 1);
        const auto& rm = table.row(n - 1);
        Real sn = r.A * r.A + r.b / r.a;
        Real d0 = r.B - nu - 1 - 2 * n;
        Real bprime = (r.A * r.A - r1.A * r1.A + r.B) / t;
        for (const Real& x : xs) {
            auto p = table.eval_all(n + 1, x);
            const Real& pn1 = p[static_cast<size_t>(n) + 1];
            const Real& pn = p[static_cast<size_t>(n)];
            const Real& pm = p[static_cast<size_t>(n) - 1];
            Real w = r1.A * r1.A + r1.b / r1.a + (x / 2) * d0;
            {
                Real t1 = w * (r1.A * pn1 + r.A * pm);
                Real t2 = (x * t * bprime + r.A * r.A * (rm.B - nu + 1 - 2 * n) -
                           r1.A * r1.A * (r1.B - nu - 3 - 2 * n) -
                           (x - r.B) * (sn + (x / 2) * d0)) *
                          pn;
                Real sc = abs(t1) + abs(t2);
                rb.add_scaled("3.13", n, t1 + t2, Real(0), sc, tol_alg, Method::algebraic);
            }
            {
                Real t1 = w * r1.A * pn1;
                Real t2 = (x * r.B + r.A * r.A * (x + rm.B - nu + 1 - 2 * n) -
                           r1.A * r1.A * (x + r1.B - nu - 3 - 2 * n) -
                           (x - r.B) * (sn + (x / 2) * d0)) *
                          pn;
                Real t3 = (rm.A * rm.A + rm.b / rm.a + rm.B * (rm.B - nu + 1 - 2 * n) -
                           (r.B - x / 2) * d0) *
                          r.A * pm;
                Real sc = abs(t1) + abs(t2) + abs(t3);
                rb.add_scaled("3.14", n, t1 + t2 + t3, Real(0), sc, tol_alg, Method::algebraic);
            }
        }
    }
    return rb.take();
}

// all t-derivative (stencil) rows of the t_relations family
void t_relations_fd(ReportBuilder& rb, const Stencil& st, const PrecisionContext& ctx,
                    int n_hi) {
    const RecurrenceTable& table = st.c;
    PrecisionScope scope(st.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    const Real tol = tolerance_for(Method::finite_difference, ctx, st.h);

    for (int n = 0; n <= n_hi; ++n) {
        const auto& r = table.row(n);
        const auto& r1 = table.row(n + 1);
        Real sn = r.A * r.A + r.b / r.a;
        Real da = st.d1([&](const RecurrenceTable& tb) { return tb.row(n).a; });
        Real dba = st.d1([&](const RecurrenceTable& tb) { return tb.row(n).b / tb.row(n).a; });
        Real dB = st.d1([&](const RecurrenceTable& tb) { return tb.row(n).B; });
        {
            Real lhs = da / r.a;
            Real rhs = (r.B - nu - 1 - 2 * n) / (2 * t);
            rb.add_scaled("2.15", n, lhs, rhs, abs(lhs) + abs(rhs), tol,
                          Method::finite_difference);
        }
        {
            Real rhs = sn / t;
            rb.add_scaled("2.26", n, dba, rhs, abs(dba) + abs(rhs), tol,
                          Method::finite_difference);
        }
        {
            Real rhs = (r.A * r.A - r1.A * r1.A + r.B) / t;
            rb.add_scaled("2.27", n, dB, rhs, abs(dB) + abs(rhs), tol,
                          Method::finite_difference);
        }
        {
            Real da0 = st.d1([&](const RecurrenceTable& tb) { return tb.row(n).coeffs[0]; });
            Real rhs = (r.B - nu - 1) / (2 * t) * r.coeffs[0];
            if (n >= 1) rhs += r.A / t * table.row(n - 1).coeffs[0];
            rb.add_scaled("2.28", n, da0, rhs, abs(da0) + abs(rhs), tol,
                          Method::finite_difference);
        }
        {
            Real rhs = 2 * r.B * da / r.a + 2 * dba - 1;
            rb.add_scaled("2.29", n, dB, rhs, abs(dB) + abs(rhs), tol,
                          Method::finite_difference);
        }
        if (n >= 1) {
            const auto& rm = table.row(n - 1);
            {
                Real dBsum = st.d1([&](const RecurrenceTable& tb) {
                    return tb.row(n - 1).B + tb.row(n).B;
                });
                Real t1 = t * dBsum;
                Real t2 = (rm.B + r.B) * (rm.B - r.B + 1);
                Real t3 = (2 * n + nu) * (rm.B - r.B);
                Real sc = abs(t1) + abs(t2) + abs(t3);
                rb.add_scaled("3.3", n, t1 + t2 - t3, Real(0), sc, tol,
                              Method::finite_difference);
            }
            {
                Real t1 = t * r.B * dB;
                Real t2 = r.A * r.A * (rm.B - nu + 1 - 2 * n);
                Real t3 = r1.A * r1.A * (r1.B - nu - 3 - 2 * n);
                Real sc = abs(t1) + abs(t2) + abs(t3);
                rb.add_scaled("3.16", n, t1 + t2 - t3, Real(0), sc, tol,
                              Method::finite_difference);
            }
            {
                Real dA = st.d1([&](const RecurrenceTable& tb) { return tb.row(n).A; });
                Real d2A = st.d2([&](const RecurrenceTable& tb) { return tb.row(n).A; });
                Real t1 = d2A * r.A - dA * dA;
                Real t2 = r.A * r.A / (2 * t * t) *
                          (rm.A * rm.A - 2 * r.A * r.A + r1.A * r1.A - 2);
                Real sc = abs(t1) + abs(t2);
                rb.add_scaled("2.35", n, t1 - t2, Real(0), sc, tol, Method::finite_difference);
            }
        }
    }
}

// all t-integral (grid) rows of the t_relations family
void t_relations_grid(ReportBuilder& rb, const Stencil& st, const TGrid& g1, const TGrid& g2,
                      const PrecisionContext& ctx, int n_hi) {
    const RecurrenceTable& table = st.c;
    PrecisionScope scope(st.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    const bool nu_pos = nu > 0;

    auto both = [&](const std::function<Real(const TGrid&)>& f,
                    const std::function<Real(int, const TGrid&)>& integrand) -> GridEval {
        Real v1 = f(g1), v2 = f(g2);
        std::function<Real(int)> gi2 = [&](int i) { return integrand(i, g2); };
        return {v2, abs(v1 - v2) + g2.tail_of(gi2)};
    };

    Real gamma_nu1 = gamma_positive(nu + 1, PrecisionContext::make(ctx.target_digits + 10, 4));

    for (int n = 0; n <= n_hi; ++n) {
        const auto& r = table.row(n);
        {
            auto integrand = [n](int i, const TGrid& g) {
                return g.table(i).row(n).B - g.table(i).nu - 1 - 2 * n;
            };
            auto rhs_of = [&](const TGrid& g) {
                Real I = g.cumulative_total([&](int i) { return integrand(i, g); });
                Real a0 = (n % 2 == 0 ? Real(1) : Real(-1)) /
                          sqrt(factorial(n) * gamma_positive(nu + n + 1, ctx));
                return a0 * exp(I / 2);
            };
            add_grid_row(rb, ctx, "2.16", n, r.a, both(rhs_of, integrand));
        }
        {
            auto integrand = [n](int i, const TGrid& g) {
                return g.table(i).row(n).B - g.table(i).row(n + 1).B + 2;
            };
            auto rhs_of = [&](const TGrid& g) {
                Real I = g.cumulative_total([&](int i) { return integrand(i, g); });
                return -sqrt(Real(n + 1) * (n + 1 + nu)) * exp(I / 2);
            };
            add_grid_row(rb, ctx, "2.18", n, table.row(n + 1).A, both(rhs_of, integrand));
        }
        {
            auto integrand = [n](int i, const TGrid& g) {
                const auto& ty = g.table(i);
                const auto& rn = ty.row(n);
                Real s = rn.A * rn.A + rn.b / rn.a;
                Real d0 = rn.B - ty.nu - 1 - 2 * n;
                return Real(n) + s / d0;
            };
            auto rhs_of = [&](const TGrid& g) {
                Real I = g.cumulative_total([&](int i) { return integrand(i, g); });
                Real poch = gamma_positive(nu + 1 + n, ctx) / gamma_nu1;
                return (n % 2 == 0 ? Real(1) : Real(-1)) * poch * r.a * exp(I);
            };
            add_grid_row(rb, ctx, "2.37", n, r.coeffs[0], both(rhs_of, integrand));
        }
        if (nu_pos) {
            {
                // A_n A_n'/y dy via the log-derivative relation for A_n
                auto integrand = [n](int i, const TGrid& g) {
                    if (n == 0) return Real(0);
                    const auto& ty = g.table(i);
                    Real A2 = ty.row(n).A * ty.row(n).A;
                    return A2 * (ty.row(n - 1).B - ty.row(n).B + 2) / (2 * g.y(i));
                };
                auto rhs_of = [&](const TGrid& g) {
                    Real I = g.integrate([&](int i) { return integrand(i, g); });
                    return 2 * t * I - r.A * r.A - Real(n) * t / nu;
                };
                add_grid_row(rb, ctx, "2.32", n, r.b / r.a, both(rhs_of, integrand));
            }
            {
                auto integrand = [n](int i, const TGrid& g) {
                    const auto& ty = g.table(i);
                    Real A2n = ty.row(n).A * ty.row(n).A;
                    Real A2n1 = ty.row(n + 1).A * ty.row(n + 1).A;
                    return (A2n - A2n1 + 2 * n + ty.nu + 1) / g.y(i);
                };
                auto rhs_of = [&](const TGrid& g) {
                    Real I = g.integrate([&](int i) { return integrand(i, g); });
                    return 2 * n + nu + 1 + t * I + t / nu;
                };
                add_grid_row(rb, ctx, "2.33", n, r.B, both(rhs_of, integrand));
            }
            {
                auto integrand = [n](int i, const TGrid& g) {
                    const auto& ty = g.table(i);
                    Real A2n = ty.row(n).A * ty.row(n).A;
                    Real A2n1 = ty.row(n + 1).A * ty.row(n + 1).A;
                    Real dn = n >= 1 ? A2n * (ty.row(n - 1).B - ty.row(n).B + 2) : Real(0);
                    Real dn1 = A2n1 * (ty.row(n).B - ty.row(n + 1).B + 2);
                    return (dn - dn1) / g.y(i);
                };
                auto rhs_of = [&](const TGrid& g) {
                    return g.integrate([&](int i) { return integrand(i, g); }) + 1 / nu;
                };
                Real lhs = st.d1([&](const RecurrenceTable& tb) { return tb.row(n).B; });
                add_grid_row(rb, ctx, "2.34", n, lhs, both(rhs_of, integrand));
            }
        }
        if (n >= 1) {
            auto inner = [n](int i, const TGrid& g) {
                return g.table(i).row(n - 1).B - g.table(i).row(n).B + 2;
            };
            auto integrand = inner;  // reported tail driver
            auto rhs_of = [&](const TGrid& g) {
                // integrating factor e^{J}: the bracket solves
                // (e^{J} u)' = 2 e^{J} [B_{n-1} - 2n - nu + 1]/y
                std::vector<Real> J = g.cumulative([&](int i) { return inner(i, g); });
                Real Jt = g.cumulative_total([&](int i) { return inner(i, g); });
                Real outer = g.integrate([&](int i) {
                    return exp(J[static_cast<size_t>(i)]) *
                           (g.table(i).row(n - 1).B - 2 * n - nu + 1);
                });
                return exp(-Jt) * (2 * outer + 2 * n + nu + 1);
            };
            Real lhs = r.B + table.row(n - 1).B - 2 * n - nu + 1;
            add_grid_row(rb, ctx, "3.17", n, lhs, both(rhs_of, integrand));
        }
    }
}

void thm5_impl(ReportBuilder& rb, const RecurrenceTable& base, const TGrid& g1, const TGrid& g2,
               int n, const std::vector<Real>& xs, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    const Real& nu = base.nu;
    const auto& r = base.row(n);
    Real ba = r.b / r.a;
    Real lag_norm = (n % 2 == 0 ? Real(1) : Real(-1)) * factorial(n) * r.a;
    for (const Real& x : xs) {
        auto integrand = [&, n](int i, const TGrid& g) {
            const auto& ty = g.table(i);
            const auto& rn = ty.row(n);
            Real bay = rn.b / rn.a;
            Real dba_scaled = rn.A * rn.A + bay;  // y * (b/a)'(y)
            return exp(-bay / x) * dba_scaled * rn.coeffs[0] * ty.eval(n - 1, x) /
                   (rn.a * ty.row(n - 1).coeffs[0]);
        };
        auto rhs_of = [&](const TGrid& g) {
            Real I = g.integrate([&](int i) { return integrand(i, g); });
            Real term2 = lag_norm * exp((ba + Real(n) * (n + nu)) / x) *
                         laguerre_eval(n, nu, x, ctx);
            return -(r.a / x) * exp(ba / x) * I + term2;
        };
        Real v1 = rhs_of(g1), v2 = rhs_of(g2);
        GridEval ge{v2, abs(v1 - v2) + g2.tail_of([&](int i) { return integrand(i, g2); })};
        add_grid_row(rb, ctx, "3.11", n, base.eval(n, x), ge);
    }
}

}  // namespace

// ------------------------------------------------------------- public ops

ResidualReport lemma1(const RecurrenceTable& table, const PrecisionContext& ctx) {
    return lemma1_impl(table, ctx);
}

ResidualReport thm1_ddx(const RecurrenceTable& table, const std::vector<Real>& x_samples,
                        const PrecisionContext& ctx) {
    return thm1_impl(table, x_samples, ctx);
}

ResidualReport t_relations(const Real& nu, const Real& t, int n_max, const PrecisionContext& ctx,
                           double fd_scale, int grid_density) {
    if (fd_scale == 0) fd_scale = ctx.fd_step_scale;
    Stencil st = make_stencil(nu, t, n_max + 1, ctx, fd_scale);
    TGrid g1(nu, t, n_max + 1, ctx, grid_density, alpha_for(nu));
    TGrid g2(nu, t, n_max + 1, ctx, 2 * grid_density, alpha_for(nu));
    ReportBuilder rb(nu, t);
    t_relations_fd(rb, st, ctx, n_max);
    t_relations_grid(rb, st, g1, g2, ctx, n_max);
    return rb.take();
}

ResidualReport thm2_pde(const Real& nu, const Real& t, int n_max,
                        const std::vector<Real>& x_samples, const PrecisionContext& ctx,
                        double fd_scale) {
    if (fd_scale == 0) fd_scale = ctx.fd_step_scale;
    Stencil st = make_stencil(nu, t, n_max, ctx, fd_scale);
    return thm2_impl(st, x_samples, ctx);
}

ResidualReport thm3_ode(const RecurrenceTable& table, const std::vector<Real>& x_samples,
                        const PrecisionContext& ctx) {
    return thm3_impl(table, x_samples, ctx);
}

ResidualReport thm5_integral(const Real& nu, const Real& t, int n,
                             const std::vector<Real>& x_samples, const PrecisionContext& ctx,
                             int grid_density) {
    if (n < 1) throw DomainError("thm5_integral: n must be >= 1");
    RecurrenceTable base = build_recurrence(nu, t, n, ctx);
    TGrid g1(nu, t, n, ctx, grid_density, alpha_for(nu));
    TGrid g2(nu, t, n, ctx, 2 * grid_density, alpha_for(nu));
    ReportBuilder rb(nu, t);
    thm5_impl(rb, base, g1, g2, n, x_samples, ctx);
    return rb.take();
}

ResidualReport thm6_thm7(const Real& nu, const Real& t, int n_max,
                         const std::vector<Real>& x_samples, const PrecisionContext& ctx,
                         double fd_scale) {
    if (fd_scale == 0) fd_scale = ctx.fd_step_scale;
    Stencil st = make_stencil(nu, t, n_max + 1, ctx, fd_scale);
    return thm6_thm7_impl(st, x_samples, ctx, n_max);
}

const std::vector<std::string>& verify_id_catalog() {
    static const std::vector<std::string> ids = {
        "2.1",  "2.2",  "2.3",  "2.4",  "2.5",  "2.10", "2.11", "2.15", "2.16", "2.18",
        "2.22", "2.26", "2.27", "2.28", "2.29", "2.32", "2.33", "2.34", "2.35", "2.37",
        "2.38", "3.1",  "3.2",  "3.3",  "3.5",  "3.6",  "3.8",  "3.11", "3.12", "3.13",
        "3.14", "3.16", "3.17", "3.22", "3.23", "3.24", "3.25", "3.26", "3.27", "3.28",
        "3.29", "3.31", "3.32", "3.36", "3.40", "3.41", "3.43", "4.3",  "4.11", "4.12"};
    return ids;
}

ResidualReport run_verify(const VerifyConfig& cfg) {
    PrecisionContext ctx = PrecisionContext::make(cfg.digits, cfg.n_max + 1);
    if (cfg.fd_scale > 0) ctx.fd_step_scale = cfg.fd_scale;
    PrecisionScope scope(ctx.bits);

    auto want = [&](std::initializer_list<const char*> ids) {
        if (cfg.suite.empty() || cfg.suite.count("all")) return true;
        for (const char* id : ids)
            if (cfg.suite.count(id)) return true;
        return false;
    };

    SampleGen gen(cfg.seed);
    std::vector<Real> xs = gen.samples(3, 0.4, 7.0);
    const int N = cfg.n_max;

    RecurrenceTable table = build_recurrence(cfg.nu, cfg.t, N + 1, ctx);
    ResidualReport report;

    if (want({"2.1", "2.2", "2.3", "2.4"})) report.merge(lemma1_impl(table, ctx));
    if (want({"2.5", "2.10", "2.11"})) report.merge(thm1_impl(table, xs, ctx));
    if (want({"2.38", "3.6", "3.1", "3.2", "3.5", "3.8"})) report.merge(thm3_impl(table, xs, ctx));

    bool need_stencil = want({"2.15", "2.16", "2.18", "2.26", "2.27", "2.28", "2.29", "2.32",
                              "2.33", "2.34", "2.35", "2.37", "3.3", "3.16", "3.17"});
    bool need_thm2 = want({"2.22"});
    bool need_thm67 = want({"3.12", "3.13", "3.14"});
    bool need_grid = want({"2.16", "2.18", "2.32", "2.33", "2.34", "2.37", "3.17", "3.11"});

    if (need_stencil || need_thm2 || need_thm67) {
        Stencil st = make_stencil(cfg.nu, cfg.t, N + 1, ctx, ctx.fd_step_scale);
        if (need_stencil) {
            ReportBuilder rb(cfg.nu, cfg.t);
            t_relations_fd(rb, st, ctx, N);
            if (need_grid) {
                TGrid g1(cfg.nu, cfg.t, N + 1, ctx, cfg.grid_density, alpha_for(cfg.nu));
                TGrid g2(cfg.nu, cfg.t, N + 1, ctx, 2 * cfg.grid_density, alpha_for(cfg.nu));
                t_relations_grid(rb, st, g1, g2, ctx, N);
                if (want({"3.11"})) {
                    SampleGen gen5(cfg.seed + 1);
                    std::vector<Real> xs5 = gen5.samples(2, 0.8, 5.0);
                    for (int n = 1; n <= N; ++n) thm5_impl(rb, table, g1, g2, n, xs5, ctx);
                }
            }
            report.merge(rb.take());
        } else if (need_grid && want({"3.11"})) {
            ReportBuilder rb(cfg.nu, cfg.t);
            TGrid g1(cfg.nu, cfg.t, N + 1, ctx, cfg.grid_density, alpha_for(cfg.nu));
            TGrid g2(cfg.nu, cfg.t, N + 1, ctx, 2 * cfg.grid_density, alpha_for(cfg.nu));
            SampleGen gen5(cfg.seed + 1);
            std::vector<Real> xs5 = gen5.samples(2, 0.8, 5.0);
            for (int n = 1; n <= N; ++n) thm5_impl(rb, table, g1, g2, n, xs5, ctx);
            report.merge(rb.take());
        }
        if (need_thm2) report.merge(thm2_impl(st, xs, ctx));
        if (need_thm67) report.merge(thm6_thm7_impl(st, xs, ctx, N));
    }

    if (want({"3.22", "3.23", "3.24", "3.25", "3.26", "3.27", "3.28", "3.29", "3.31", "3.32",
              "3.36", "3.40", "3.41", "3.43"}))
        report.merge(check_det_formulas(table, ctx));

    if (want({"4.3", "4.11", "4.12"})) {
        int n_hi = std::min(N, 4);
        report.merge(expansion_checks(table, n_hi, n_hi + 8, ctx));
    }

    if (!cfg.suite.empty() && !cfg.suite.count("all")) {
        ResidualReport filtered;
        for (auto& e : report.entries)
            if (cfg.suite.count(e.identity_id)) filtered.entries.push_back(std::move(e));
        report = std::move(filtered);
    }
    report.sort();
    return report;
}

}  // namespace opoly
