#pragma once

// High-precision evaluation of the modular objects: Eisenstein-based
// q-expansions of g2, g3, Delta, j, J, C = J^2(J-1)^3, Weierstrass p and p',
// Siegel products g_v, Fricke functions f_v, the curve coefficients (A, B)
// of y^2 = 4x^3 - Ax - B, and the generator values x_{K,n}(omega),
// y_{K,n}(omega)^2.
//
// Every operation takes an EvalContext and returns values whose .err field
// bounds the absolute rounding-plus-truncation error.  j/J/C additionally
// guarantee relative error <= 10^(2-digits) for Im tau >= 1/2.

#include "cmray/cmfield.hpp"
#include "cmray/ideals.hpp"
#include "cmray/numeric.hpp"
#include "cmray/rational.hpp"

namespace cmray {

// Index of a Siegel/Fricke function: rational row vector (v1, v2) reduced
// into [0,1)^2 and excluded from Z^2.
struct SiegelIndex {
    Rational v1, v2;

    SiegelIndex(const Rational& a, const Rational& b) : v1(a.mod1()), v2(b.mod1()) {
        if (v1.num == 0 && v2.num == 0)
            throw std::domain_error("Siegel index (" + a.str() + "," + b.str() +
                                    ") is integral");
    }

    friend bool operator==(const SiegelIndex& x, const SiegelIndex& y) {
        return x.v1 == y.v1 && x.v2 == y.v2;
    }

    std::string str() const { return "(" + v1.str() + "," + v2.str() + ")"; }
};

// Exact surd -> floating complex at ctx's working precision.
Cplx surd_value(const Surd& s, const EvalContext& ctx);

Cplx j_value(const Cplx& tau, const EvalContext& ctx);
Cplx J_value(const Cplx& tau, const EvalContext& ctx);
Cplx C_value(const Cplx& tau, const EvalContext& ctx);

Cplx g2_value(const Cplx& tau, const EvalContext& ctx);
Cplx g3_value(const Cplx& tau, const EvalContext& ctx);
Cplx delta_value(const Cplx& tau, const EvalContext& ctx);

Cplx wp_value(const Cplx& z, const Cplx& tau, const EvalContext& ctx);
Cplx wp_prime_value(const Cplx& z, const Cplx& tau, const EvalContext& ctx);

Cplx siegel_value(const SiegelIndex& v, const Cplx& tau, const EvalContext& ctx);

// Product expansion at a literal, unreduced index (needed where indices u+v
// and u-v must not be reduced mod 1 first).
Cplx siegel_value_raw(const Rational& v1, const Rational& v2, const Cplx& tau,
                      const EvalContext& ctx);

Cplx fricke_value(const SiegelIndex& v, const Cplx& tau, const EvalContext& ctx);

struct CurveCoefficients {
    Cplx A, B;
};

CurveCoefficients curve_coefficients(const FieldInvariants& F, long long n,
                                     const EvalContext& ctx);

// x_{K,n}(omega) = C_K^n (g2 g3 / Delta)(tau_K) p(omega; [tau_K, 1]),
// evaluated through the Fricke function (pi-free route).
Cplx weber_x(const FieldInvariants& F, long long n, const TorsionPoint& w,
             const EvalContext& ctx);

// Same value through explicit g2 g3 / Delta and p; used as a cross-check.
Cplx weber_x_wp_route(const FieldInvariants& F, long long n, const TorsionPoint& w,
                      const EvalContext& ctx);

// y_{K,n}(omega)^2 = (C_K^n g2 g3 / Delta)^3 p'(omega)^2.
Cplx y_squared(const FieldInvariants& F, long long n, const TorsionPoint& w,
               const EvalContext& ctx);

} // namespace cmray
