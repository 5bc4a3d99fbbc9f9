#include "opoly/real.hpp"

#include <cstdio>
#include <vector>

namespace opoly {

namespace {
thread_local mpfr_prec_t g_working_prec = 256;
}

mpfr_prec_t Real::working_precision() { return g_working_prec; }
void Real::set_working_precision(mpfr_prec_t bits) { g_working_prec = bits; }

Real factorial(long n) {
    Real r;
    mpfr_fac_ui(r.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    return r;
}

std::string to_sci(const Real& v, int digits) {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v.raw());
    return std::string(buf.data());
}

std::string to_gen(const Real& v, int digits) {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v.raw());
    return std::string(buf.data());
}

}  // namespace opoly
