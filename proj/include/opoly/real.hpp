#ifndef OPOLY_REAL_HPP
#define OPOLY_REAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

namespace opoly {

// Arbitrary-precision binary float. Every arithmetic result is rounded to
// the thread-local working precision (see PrecisionScope); copies preserve
// the precision of the source exactly. Decimal conversion happens only at
// the I/O boundary.
class Real {
  public:
    Real() : Real(0.0) {}
    Real(double v) { mpfr_init2(v_, working_precision()); mpfr_set_d(v_, v, MPFR_RNDN); }
    Real(int v) : Real(static_cast<long>(v)) {}
    Real(long v) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, v, MPFR_RNDN); }
    Real(unsigned long v) { mpfr_init2(v_, working_precision()); mpfr_set_ui(v_, v, MPFR_RNDN); }
    explicit Real(const std::string& s) {
        mpfr_init2(v_, working_precision());
        mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Thread-local working precision in bits; all new results use it.
    static mpfr_prec_t working_precision();
    static void set_working_precision(mpfr_prec_t bits);

    friend Real operator-(const Real& a) {
        Real r = make();
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define OPOLY_REAL_BINOP(op, fn)                                     \
    friend Real operator op(const Real& a, const Real& b) {          \
        Real r = make();                                             \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                             \
        return r;                                                    \
    }                                                                \
    friend Real operator op(const Real& a, double b) { return a op Real(b); }  \
    friend Real operator op(double a, const Real& b) { return Real(a) op b; }  \
    friend Real operator op(const Real& a, int b) { return a op Real(b); }     \
    friend Real operator op(int a, const Real& b) { return Real(a) op b; }     \
    friend Real operator op(const Real& a, long b) { return a op Real(b); }    \
    friend Real operator op(long a, const Real& b) { return Real(a) op b; }

    OPOLY_REAL_BINOP(+, mpfr_add)
    OPOLY_REAL_BINOP(-, mpfr_sub)
    OPOLY_REAL_BINOP(*, mpfr_mul)
    OPOLY_REAL_BINOP(/, mpfr_div)
#undef OPOLY_REAL_BINOP

    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, double b) { return a < Real(b); }
    friend bool operator>(const Real& a, double b) { return a > Real(b); }
    friend bool operator<=(const Real& a, double b) { return a <= Real(b); }
    friend bool operator>=(const Real& a, double b) { return a >= Real(b); }

  private:
    static Real make() { return Real(0.0); }
    mpfr_t v_;
};

// Restores the previous working precision on scope exit.
class PrecisionScope {
  public:
    explicit PrecisionScope(mpfr_prec_t bits) : prev_(Real::working_precision()) {
        Real::set_working_precision(bits);
    }
    ~PrecisionScope() { Real::set_working_precision(prev_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    mpfr_prec_t prev_;
};

#define OPOLY_REAL_FN1(name, fn)                 \
    inline Real name(const Real& a) {            \
        Real r;                                  \
        fn(r.raw(), a.raw(), MPFR_RNDN);         \
        return r;                                \
    }
OPOLY_REAL_FN1(abs, mpfr_abs)
OPOLY_REAL_FN1(sqrt, mpfr_sqrt)
OPOLY_REAL_FN1(exp, mpfr_exp)
OPOLY_REAL_FN1(log, mpfr_log)
#undef OPOLY_REAL_FN1

inline Real floor(const Real& a) {
    Real r;
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDD);
    return r;
}

inline Real pow(const Real& a, const Real& b) {
    Real r;
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& a, long b) {
    Real r;
    mpfr_pow_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline Real pow(const Real& a, int b) { return pow(a, static_cast<long>(b)); }

inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return a < b ? a : b; }

inline Real pi() {
    Real r;
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

// 10^e at working precision (e may be negative).
inline Real pow10(long e) {
    Real r;
    mpfr_ui_pow_ui(r.raw(), 10u, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) mpfr_ui_div(r.raw(), 1u, r.raw(), MPFR_RNDN);
    return r;
}

Real factorial(long n);

// |a-b| / max(|a|, |b|, 1) -- the relative agreement measure used by the
// adaptive precision machinery; the floor at 1 makes it sane near zero.
inline Real rel_diff(const Real& a, const Real& b) {
    return abs(a - b) / max(Real(1), max(abs(a), abs(b)));
}

// Scientific notation with exactly `digits` significant digits ("-1.500e+00"
// style); the serialization used in JSON/CSV artifacts.
std::string to_sci(const Real& v, int digits);
// printf %g style with `digits` significant digits ("0.2398755..." style).
std::string to_gen(const Real& v, int digits);

}  // namespace opoly

#endif
