#include "cmray/numeric.hpp"

#include <mpfr.h>

#include <cmath>

namespace cmray {

void EvalContext::validate() const {
    if (digits < 15)
        throw std::domain_error("EvalContext.digits must be >= 15 (got " +
                                std::to_string(digits) + ")");
    if (truncation_scale < 1)
        throw std::domain_error("EvalContext.truncation_scale must be >= 1");
}

long EvalContext::cutoff_terms(double im_tau) const {
    validate();
    if (!(im_tau > 0))
        throw std::domain_error("Im(tau) must be positive");
    const double ln10 = 2.302585092994046;
    double m = std::ceil((digits + 10) * ln10 / (2.0 * 3.141592653589793 * im_tau)) + 8;
    long cap = 20000;
    if (m > double(cap)) {
        int achievable = int(2.0 * 3.141592653589793 * im_tau * double(cap) / ln10) - 10;
        throw precision_error("series cutoff exceeds cap at Im(tau)=" + std::to_string(im_tau) +
                              "; at most " + std::to_string(achievable < 0 ? 0 : achievable) +
                              " digits are achievable there");
    }
    return long(m) * truncation_scale;
}

PrecisionScope::PrecisionScope(int decimal_digits)
    : prev_(Real::default_precision()) {
    if (decimal_digits < 15) decimal_digits = 15;
    Real::default_precision(unsigned(decimal_digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(prev_); }

const Real& const_pi() {
    thread_local unsigned cached_for = 0;
    thread_local Real pi;
    unsigned now = Real::default_precision();
    if (now != cached_for) {
        Real r;
        mpfr_const_pi(r.backend().data(), MPFR_RNDN);
        pi = r;
        cached_for = now;
    }
    return pi;
}

const Real& rounding_eps() {
    thread_local unsigned cached_for = 0;
    thread_local Real eps;
    unsigned now = Real::default_precision();
    if (now != cached_for) {
        eps = pow(Real(10), 2 - int(now));
        cached_for = now;
    }
    return eps;
}

static bool finite(const Real& x) { return mpfr_number_p(x.backend().data()) != 0; }

bool Cplx::err_finite() const { return finite(err) && finite(re) && finite(im); }

Real cmag(const Cplx& z) {
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

static Real round_allow(const Real& re, const Real& im) {
    using std::abs;
    return (abs(re) + abs(im)) * rounding_eps();
}

Cplx operator+(const Cplx& a, const Cplx& b) {
    Cplx r(a.re + b.re, a.im + b.im);
    r.err = a.err + b.err + round_allow(r.re, r.im);
    return r;
}

Cplx operator-(const Cplx& a, const Cplx& b) {
    Cplx r(a.re - b.re, a.im - b.im);
    r.err = a.err + b.err + round_allow(r.re, r.im);
    return r;
}

Cplx operator-(const Cplx& a) { return Cplx(-a.re, -a.im, a.err); }

Cplx operator*(const Cplx& a, const Cplx& b) {
    Cplx r(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    r.err = cmag(a) * b.err + cmag(b) * a.err + a.err * b.err + round_allow(r.re, r.im);
    return r;
}

Cplx operator*(const Real& s, const Cplx& z) {
    using std::abs;
    Cplx r(s * z.re, s * z.im);
    r.err = abs(s) * z.err + round_allow(r.re, r.im);
    return r;
}

Cplx operator*(long long s, const Cplx& z) { return Real(s) * z; }

Cplx cinv(const Cplx& z) {
    Real n2 = z.re * z.re + z.im * z.im;
    Real mag = sqrt(n2);
    if (!(mag > z.err))
        throw precision_error("division: denominator magnitude below its error bound");
    Cplx r(z.re / n2, -z.im / n2);
    // |1/z - 1/z~| <= err / (|z|(|z| - err))
    r.err = z.err / (mag * (mag - z.err)) + round_allow(r.re, r.im);
    return r;
}

Cplx operator/(const Cplx& a, const Cplx& b) { return a * cinv(b); }

Cplx cconj(const Cplx& z) { return Cplx(z.re, -z.im, z.err); }

Cplx cexp(const Cplx& z) {
    using std::abs;
    Real m = exp(z.re);
    Cplx r(m * cos(z.im), m * sin(z.im));
    // |exp(z+d) - exp(z)| <= |exp(z)| (e^|d| - 1)
    Real growth = z.err < Real(1) ? Real(2) * z.err : exp(z.err) - 1;
    r.err = m * growth + round_allow(r.re, r.im);
    return r;
}

Cplx csqr(const Cplx& z) { return z * z; }

Cplx cpow(const Cplx& z, long long n) {
    if (n == 0) return Cplx(Real(1));
    bool neg = n < 0;
    unsigned long long e = neg ? (unsigned long long)(-n) : (unsigned long long)n;
    Cplx base = z, acc(Real(1));
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = csqr(base);
    }
    return neg ? cinv(acc) : acc;
}

std::string real_to_string(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

} // namespace cmray
