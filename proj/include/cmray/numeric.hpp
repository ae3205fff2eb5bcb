#pragma once

// Extended-precision scalar/complex arithmetic used by every evaluator.
//
// Real is an MPFR-backed float whose precision is set at runtime through
// PrecisionScope; BigInt is a GMP integer (class-polynomial coefficients).
// Cplx is a complex value carrying an absolute error bound that is
// propagated through arithmetic, so every q-series result knows how many
// of its digits are trustworthy.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace cmray {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<
    boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

// Requested precision was not achievable (series cutoff cap, division with
// an error bound swallowing the denominator, rounding residue too large).
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A "cannot happen" branch was reached (search exhaustion and the like).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Precision budget for all q-expansion evaluators.
// digits: significant decimal digits requested for results.
// truncation_scale: multiplies the series cutoff; >1 is only used by tests
// that re-evaluate with a deeper truncation to check bound soundness.
struct EvalContext {
    int digits = 30;
    int truncation_scale = 1;

    static constexpr int guard_digits = 15;

    int working_digits() const { return digits + guard_digits; }
    void validate() const;

    // Series cutoff M = ceil((digits+10)*ln10 / (2*pi*im_tau)) + 8.
    long cutoff_terms(double im_tau) const;
};

// RAII: sets the process default Real precision (decimal digits) and restores
// the previous value on exit.  The default is a process-wide atomic, so scopes
// must not be opened concurrently with different precisions; parallel sweeps
// set precision once up front and never touch it from worker threads.
class PrecisionScope {
public:
    explicit PrecisionScope(int decimal_digits);
    explicit PrecisionScope(const EvalContext& ctx) : PrecisionScope(ctx.working_digits()) {}
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned prev_;
};

// pi at the current default precision (cached per thread per precision).
const Real& const_pi();

// Rounding allowance 10^(2 - working digits) at the current default precision.
const Real& rounding_eps();

// Complex value with an absolute error bound.  All arithmetic adds the
// trunction/rounding contributions of the operands plus a rounding allowance
// proportional to the magnitude of the result.
struct Cplx {
    Real re{0};
    Real im{0};
    Real err{0};

    Cplx() = default;
    explicit Cplx(const Real& x) : re(x) {}
    Cplx(const Real& r, const Real& i) : re(r), im(i) {}
    Cplx(const Real& r, const Real& i, const Real& e) : re(r), im(i), err(e) {}
    explicit Cplx(long long x) : re(x) {}

    bool err_finite() const;
};

Real cmag(const Cplx& z);            // |z|, sans error
Cplx operator+(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a);
Cplx operator*(const Cplx& a, const Cplx& b);
Cplx operator/(const Cplx& a, const Cplx& b);   // throws precision_error if b's bound reaches 0
Cplx operator*(const Real& s, const Cplx& z);
Cplx operator*(long long s, const Cplx& z);
Cplx cinv(const Cplx& z);
Cplx cconj(const Cplx& z);
Cplx cexp(const Cplx& z);
Cplx cpow(const Cplx& z, long long n);          // integer power, n may be negative
Cplx csqr(const Cplx& z);

// Decimal rendering with explicit digit count (round-trips through Real's parser).
std::string real_to_string(const Real& x, int digits);

} // namespace cmray
