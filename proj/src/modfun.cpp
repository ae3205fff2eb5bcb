#include "cmray/modfun.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace cmray {

namespace {

Real real_from_u128(unsigned __int128 v) {
    static const Real two64("18446744073709551616");
    std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    std::uint64_t lo = static_cast<std::uint64_t>(v);
    return Real(hi) * two64 + Real(lo);
}

Cplx from_real(const Real& x) { return Cplx{x, Real(0), Real(0)}; }

Real sqr(const Real& t) { return t * t; }

double im_as_double(const Cplx& tau) { return tau.im.convert_to<double>(); }

void require_upper_half(const Cplx& tau) {
    if (!(tau.im > 0))
        throw std::domain_error("tau must lie in the upper half plane");
}

// Upper bound for sum_{n>M} n^k x^n, 0 < x < 1.
Real tail_power_sum(int k, const Real& x, long long M) {
    Real a = pow(Real(M + 1), k) * pow(x, static_cast<int>(M + 1));
    Real r = x * pow(Real(M + 2) / Real(M + 1), k);
    if (!(r < 1))
        throw precision_error("q-series tail does not contract; tau too close to the real axis");
    return a / (1 - r);
}

// sigma_k(1..M) via divisor sieve, exact in 128-bit arithmetic.
std::vector<Real> divisor_power_sums(int k, long long M) {
    std::vector<unsigned __int128> acc(static_cast<std::size_t>(M) + 1, 0);
    for (long long d = 1; d <= M; ++d) {
        unsigned __int128 dk = 1;
        for (int i = 0; i < k; ++i) dk *= static_cast<unsigned __int128>(d);
        for (long long m = d; m <= M; m += d) acc[static_cast<std::size_t>(m)] += dk;
    }
    std::vector<Real> out(static_cast<std::size_t>(M) + 1, Real(0));
    for (long long n = 1; n <= M; ++n) out[static_cast<std::size_t>(n)] = real_from_u128(acc[static_cast<std::size_t>(n)]);
    return out;
}

// Shared q-expansion data at one tau: E4, E6 and q prod (1-q^n)^24.
struct Basis {
    Cplx tau;
    Cplx q;
    Real absq;
    long long M = 0;
    Cplx E4, E6, dq;
};

Basis eval_basis(const Cplx& tau, const EvalContext& ctx) {
    require_upper_half(tau);
    Basis b;
    b.tau = tau;
    b.M = ctx.cutoff_terms(im_as_double(tau));
    const Real two_pi = 2 * const_pi();
    b.q = cexp(Cplx{-two_pi * tau.im, two_pi * tau.re, Real(0)});
    b.absq = cmag(b.q);

    auto s3 = divisor_power_sums(3, b.M);
    auto s5 = divisor_power_sums(5, b.M);

    Cplx e4 = from_real(Real(1));
    Cplx e6 = from_real(Real(1));
    Cplx prod = from_real(Real(1));
    Cplx qn = from_real(Real(1));
    for (long long n = 1; n <= b.M; ++n) {
        qn = qn * b.q;
        e4 = e4 + s3[static_cast<std::size_t>(n)] * qn;
        e6 = e6 + s5[static_cast<std::size_t>(n)] * qn;
        Cplx f = from_real(Real(1)) - qn;
        Cplx f2 = csqr(f);
        Cplx f4 = csqr(f2);
        Cplx f8 = csqr(f4);
        prod = prod * (csqr(f8) * f8); // f^24
    }
    // E4 = 1 + 240 sum sigma3 q^n, E6 = 1 - 504 sum sigma5 q^n
    b.E4 = from_real(Real(1)) + 240 * (e4 - from_real(Real(1)));
    b.E6 = from_real(Real(1)) - 504 * (e6 - from_real(Real(1)));
    b.dq = b.q * prod;

    // truncation tails: sigma3(n) <= 1.21 n^3, sigma5(n) <= 1.04 n^5
    b.E4.err += Real("290.4") * tail_power_sum(3, b.absq, b.M);
    b.E6.err += Real("524.2") * tail_power_sum(5, b.absq, b.M);
    Real logtail = 24 * pow(b.absq, static_cast<int>(b.M + 1)) / sqr(1 - b.absq);
    if (!(logtail < Real("0.5")))
        throw precision_error("product tail too large; raise the term cutoff");
    b.dq.err += cmag(b.dq) * 2 * logtail;
    return b;
}

Cplx j_from_basis(const Basis& b) {
    return csqr(b.E4) * b.E4 * cinv(b.dq);
}

Cplx bigJ_from_basis(const Basis& b) {
    return (Real(1) / Real(1728)) * j_from_basis(b);
}

Cplx bigC_from_J(const Cplx& J) {
    Cplx Jm1 = J - from_real(Real(1));
    return csqr(J) * csqr(Jm1) * Jm1;
}

void require_j_domain(const Cplx& tau, const EvalContext& ctx) {
    require_upper_half(tau);
    if (tau.im < Real(1) / 2) {
        double im = im_as_double(tau);
        long long achievable = static_cast<long long>(ctx.digits * (im / 0.5));
        throw precision_error("Im tau = " + std::to_string(im) +
                              " is below 1/2; only about " + std::to_string(achievable) +
                              " digits achievable at this height");
    }
}

// z = alpha tau + beta with alpha, beta in [0,1).
struct ZRed {
    Real alpha, beta;
};

ZRed reduce_z(const Cplx& z, const Cplx& tau) {
    Real alpha = z.im / tau.im;
    Real beta = z.re - alpha * tau.re;
    alpha -= floor(alpha);
    beta -= floor(beta);
    return ZRed{alpha, beta};
}

Cplx qz_from_pair(const Real& alpha, const Real& beta, const Cplx& tau) {
    const Real two_pi = 2 * const_pi();
    return cexp(Cplx{-two_pi * alpha * tau.im, two_pi * (alpha * tau.re + beta), Real(0)});
}

void require_off_lattice(const Cplx& one_minus_qz) {
    if (cmag(one_minus_qz) <= 1000 * rounding_eps())
        throw std::domain_error("z lies on the period lattice (pole of p)");
}

// sum defining p/(2 pi i)^2: 1/12 + qz/(1-qz)^2
//   + sum_n [ q^n qz/(1-q^n qz)^2 + q^n/qz/(1-q^n/qz)^2 - 2 q^n/(1-q^n)^2 ].
Cplx wp_bracket(const Real& alpha, const Real& beta, const Basis& b) {
    Cplx qz = qz_from_pair(alpha, beta, b.tau);
    Cplx one = from_real(Real(1));
    Cplx omq = one - qz;
    require_off_lattice(omq);
    Cplx s = from_real(Real(1) / 12) + qz * cinv(csqr(omq));
    Cplx qzinv = cinv(qz);
    Cplx qn = one;
    for (long long n = 1; n <= b.M; ++n) {
        qn = qn * b.q;
        Cplx A = qn * qz;
        Cplx B = qn * qzinv;
        s = s + A * cinv(csqr(one - A));
        s = s + B * cinv(csqr(one - B));
        s = s - 2 * (qn * cinv(csqr(one - qn)));
    }
    const Real& x = b.absq;
    Real y = pow(x, Real(1) - alpha); // |q^{n}/qz| <= y for n >= 1
    Real top = pow(x, Real(b.M + 1) + alpha) + pow(x, Real(b.M + 1) - alpha) +
               2 * pow(x, static_cast<int>(b.M + 1));
    s.err += top / ((1 - x) * sqr(1 - y));
    return s;
}

// sum defining p'/(2 pi i)^3: qz(1+qz)/(1-qz)^3
//   + sum_n [ q^n qz(1+q^n qz)/(1-q^n qz)^3 - (q^n/qz)(1+q^n/qz)/(1-q^n/qz)^3 ].
Cplx wp_prime_bracket(const Real& alpha, const Real& beta, const Basis& b) {
    Cplx qz = qz_from_pair(alpha, beta, b.tau);
    Cplx one = from_real(Real(1));
    Cplx omq = one - qz;
    require_off_lattice(omq);
    auto cube = [](const Cplx& c) { return csqr(c) * c; };
    Cplx s = qz * (one + qz) * cinv(cube(omq));
    Cplx qzinv = cinv(qz);
    Cplx qn = one;
    for (long long n = 1; n <= b.M; ++n) {
        qn = qn * b.q;
        Cplx A = qn * qz;
        Cplx B = qn * qzinv;
        s = s + A * (one + A) * cinv(cube(one - A));
        s = s - B * (one + B) * cinv(cube(one - B));
    }
    const Real& x = b.absq;
    Real y = pow(x, Real(1) - alpha);
    Real top = 2 * (pow(x, Real(b.M + 1) + alpha) + pow(x, Real(b.M + 1) - alpha));
    s.err += top / ((1 - x) * sqr(1 - y) * (1 - y));
    return s;
}

Cplx wp_factor(const EvalContext&) { // (2 pi i)^2
    Real p = const_pi();
    return Cplx{-4 * p * p, Real(0), Real(0)};
}

Cplx wp_prime_factor(const EvalContext&) { // (2 pi i)^3
    Real p = const_pi();
    return Cplx{Real(0), -8 * p * p * p, Real(0)};
}

// g_v by its product expansion at a literal rational index; callers that
// need the canonical representative reduce v mod 1 first.
Cplx siegel_product(const Rational& v1, const Rational& v2, const Cplx& tau,
                    const EvalContext& ctx) {
    require_upper_half(tau);
    double a1 = v1.to_double();
    if (a1 <= -2.0 || a1 >= 3.0)
        throw std::domain_error("Siegel product index out of supported range");
    const Real two_pi = 2 * const_pi();
    const Real pi = const_pi();

    // -exp(pi i v2 (v1 - 1)) exp(2 pi i tau (v1^2 - v1 + 1/6)/2)
    Rational half_b2 = (v1 * v1 - v1 + Rational(1, 6)) * Rational(1, 2);
    Real r = half_b2.to_real();
    Cplx pre = cexp(Cplx{-two_pi * r * tau.im, two_pi * r * tau.re, Real(0)});
    Real ang = pi * (v2 * (v1 - Rational(1))).to_real();
    pre = pre * cexp(Cplx{Real(0), ang, Real(0)});
    pre = Real(-1) * pre;

    long long M = ctx.cutoff_terms(im_as_double(tau)) + 3;
    Cplx q = cexp(Cplx{-two_pi * tau.im, two_pi * tau.re, Real(0)});
    Real x = cmag(q);
    Cplx qz = cexp(Cplx{-two_pi * v1.to_real() * tau.im,
                        two_pi * (v1.to_real() * tau.re + v2.to_real()), Real(0)});
    Cplx one = from_real(Real(1));
    Cplx prod = one - qz;
    Cplx qzinv = cinv(qz);
    Cplx qn = one;
    for (long long n = 1; n <= M; ++n) {
        qn = qn * q;
        prod = prod * (one - qn * qz) * (one - qn * qzinv);
    }
    Cplx val = pre * prod;
    Real e_plus = pow(x, Real(M + 1) + v1.to_real());
    Real e_minus = pow(x, Real(M + 1) - v1.to_real());
    Real logtail = (e_plus + e_minus) / ((1 - x) * (1 - e_minus));
    if (!(logtail < Real("0.5")))
        throw precision_error("Siegel product tail too large; raise the term cutoff");
    val.err += cmag(val) * 2 * logtail;
    return val;
}

void require_no_extra_automorphisms(const FieldInvariants& F) {
    if (F.d == -3 || F.d == -4)
        throw std::domain_error("discriminant " + std::to_string(F.d) +
                                " has extra automorphisms; curve family undefined");
}

void require_n_nonneg(long long n) {
    if (n < 0) throw std::domain_error("twist exponent n must be nonnegative");
}

struct FieldEval {
    Cplx tau;
    Basis basis;
    Cplx J, C, Cn;
};

FieldEval field_eval(const FieldInvariants& F, long long n, const EvalContext& ctx) {
    FieldEval fe;
    fe.tau = surd_value(F.tau(), ctx);
    fe.basis = eval_basis(fe.tau, ctx);
    fe.J = bigJ_from_basis(fe.basis);
    fe.C = bigC_from_J(fe.J);
    fe.Cn = cpow(fe.C, n);
    return fe;
}

SiegelIndex index_of_point(const TorsionPoint& w) {
    return SiegelIndex(Rational(w.a, w.D), Rational(w.b, w.D));
}

} // namespace

Cplx surd_value(const Surd& s, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    if (s.disc >= 0) throw std::domain_error("surd has nonnegative discriminant");
    Cplx v{Real(s.num) / Real(s.den), sqrt(Real(-s.disc)) / Real(s.den), Real(0)};
    v.err = (abs(v.re) + abs(v.im)) * 4 * rounding_eps();
    return v;
}

Cplx j_value(const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    require_j_domain(tau, ctx);
    return j_from_basis(eval_basis(tau, ctx));
}

Cplx J_value(const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    require_j_domain(tau, ctx);
    return bigJ_from_basis(eval_basis(tau, ctx));
}

Cplx C_value(const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    require_j_domain(tau, ctx);
    return bigC_from_J(bigJ_from_basis(eval_basis(tau, ctx)));
}

Cplx g2_value(const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    Basis b = eval_basis(tau, ctx);
    Real p = const_pi();
    return (Real(4) / 3 * p * p * p * p) * b.E4;
}

Cplx g3_value(const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    Basis b = eval_basis(tau, ctx);
    Real p = const_pi();
    Real p6 = p * p * p;
    p6 *= p6;
    return (Real(8) / 27 * p6) * b.E6;
}

Cplx delta_value(const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    Basis b = eval_basis(tau, ctx);
    Real tp = 2 * const_pi();
    Real tp3 = tp * tp * tp;
    Real tp12 = tp3 * tp3;
    tp12 *= tp12;
    return tp12 * b.dq;
}

Cplx wp_value(const Cplx& z, const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    Basis b = eval_basis(tau, ctx);
    ZRed r = reduce_z(z, tau);
    return wp_factor(ctx) * wp_bracket(r.alpha, r.beta, b);
}

Cplx wp_prime_value(const Cplx& z, const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    Basis b = eval_basis(tau, ctx);
    ZRed r = reduce_z(z, tau);
    return wp_prime_factor(ctx) * wp_prime_bracket(r.alpha, r.beta, b);
}

Cplx siegel_value(const SiegelIndex& v, const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    return siegel_product(v.v1, v.v2, tau, ctx);
}

Cplx siegel_value_raw(const Rational& v1, const Rational& v2, const Cplx& tau,
                      const EvalContext& ctx) {
    if (v1.is_integer() && v2.is_integer())
        throw std::domain_error("Siegel index is integral");
    PrecisionScope scope(ctx);
    return siegel_product(v1, v2, tau, ctx);
}

Cplx fricke_value(const SiegelIndex& v, const Cplx& tau, const EvalContext& ctx) {
    PrecisionScope scope(ctx);
    Basis b = eval_basis(tau, ctx);
    Cplx s = wp_bracket(v.v1.to_real(), v.v2.to_real(), b);
    // f_v = -2^7 3^5 (g2 g3 / Delta) p(v1 tau + v2); the pi powers cancel
    // against (2 pi i)^2, leaving 12 E4 E6 S / dq.
    return 12 * (b.E4 * b.E6 * s * cinv(b.dq));
}

CurveCoefficients curve_coefficients(const FieldInvariants& F, long long n,
                                     const EvalContext& ctx) {
    require_no_extra_automorphisms(F);
    require_n_nonneg(n);
    PrecisionScope scope(ctx);
    FieldEval fe = field_eval(F, n, ctx);
    Cplx Jm1 = fe.J - from_real(Real(1));
    Cplx C2n = csqr(fe.Cn);
    Cplx C3n = C2n * fe.Cn;
    CurveCoefficients cc;
    cc.A = (Real(1) / 27) * (fe.J * Jm1 * C2n);
    cc.B = (Real(1) / 729) * (fe.J * csqr(Jm1) * C3n);
    return cc;
}

Cplx weber_x(const FieldInvariants& F, long long n, const TorsionPoint& w,
             const EvalContext& ctx) {
    require_no_extra_automorphisms(F);
    require_n_nonneg(n);
    PrecisionScope scope(ctx);
    FieldEval fe = field_eval(F, n, ctx);
    SiegelIndex v = index_of_point(w);
    Cplx s = wp_bracket(v.v1.to_real(), v.v2.to_real(), fe.basis);
    Cplx f = 12 * (fe.basis.E4 * fe.basis.E6 * s * cinv(fe.basis.dq));
    // x = C^n (g2 g3/Delta) p(omega) = -C^n f_v / (2^7 3^5)
    return (Real(-1) / 31104) * (fe.Cn * f);
}

Cplx weber_x_wp_route(const FieldInvariants& F, long long n, const TorsionPoint& w,
                      const EvalContext& ctx) {
    require_no_extra_automorphisms(F);
    require_n_nonneg(n);
    PrecisionScope scope(ctx);
    FieldEval fe = field_eval(F, n, ctx);
    Real p = const_pi();
    Real p4 = p * p;
    p4 *= p4;
    Real tp = 2 * p;
    Real tp3 = tp * tp * tp;
    Real tp12 = tp3 * tp3;
    tp12 *= tp12;
    Cplx g2 = (Real(4) / 3 * p4) * fe.basis.E4;
    Cplx g3 = (Real(8) / 27 * p4 * p * p) * fe.basis.E6;
    Cplx delta = tp12 * fe.basis.dq;
    SiegelIndex v = index_of_point(w);
    Cplx wp = wp_factor(ctx) * wp_bracket(v.v1.to_real(), v.v2.to_real(), fe.basis);
    return fe.Cn * g2 * g3 * cinv(delta) * wp;
}

Cplx y_squared(const FieldInvariants& F, long long n, const TorsionPoint& w,
               const EvalContext& ctx) {
    require_no_extra_automorphisms(F);
    require_n_nonneg(n);
    PrecisionScope scope(ctx);
    FieldEval fe = field_eval(F, n, ctx);
    Real p = const_pi();
    Real p4 = p * p;
    p4 *= p4;
    Real tp = 2 * p;
    Real tp3 = tp * tp * tp;
    Real tp12 = tp3 * tp3;
    tp12 *= tp12;
    Cplx g2 = (Real(4) / 3 * p4) * fe.basis.E4;
    Cplx g3 = (Real(8) / 27 * p4 * p * p) * fe.basis.E6;
    Cplx delta = tp12 * fe.basis.dq;
    SiegelIndex v = index_of_point(w);
    Cplx c = fe.Cn * g2 * g3 * cinv(delta);
    Cplx wpp = wp_prime_factor(ctx) *
               wp_prime_bracket(v.v1.to_real(), v.v2.to_real(), fe.basis);
    return csqr(c) * c * csqr(wpp);
}

} // namespace cmray
