#include "cmray/quadforms.hpp"
#include "cmray/ideals.hpp"
#include "cmray/numeric.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmray {

bool QuadForm::is_primitive() const {
    long long g = std::gcd(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b), c < 0 ? -c : c);
    return g == 1;
}

std::string QuadForm::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

QuadForm apply_sl2(const QuadForm& Q, const SL2& g) {
    // Q(m0 x + m1 y, m2 x + m3 y)
    QuadForm r;
    r.a = Q.a * g[0] * g[0] + Q.b * g[0] * g[2] + Q.c * g[2] * g[2];
    r.c = Q.a * g[1] * g[1] + Q.b * g[1] * g[3] + Q.c * g[3] * g[3];
    r.b = 2 * Q.a * g[0] * g[1] + Q.b * (g[0] * g[3] + g[1] * g[2]) + 2 * Q.c * g[2] * g[3];
    return r;
}

static SL2 mul(const SL2& x, const SL2& y) {
    return SL2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
               x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

ReducedForm reduce(const QuadForm& Q) {
    if (!Q.is_positive_definite())
        throw std::domain_error("form " + Q.str() + " is not positive definite");
    if (!Q.is_primitive())
        throw std::domain_error("form " + Q.str() + " is not primitive");

    QuadForm f = Q;
    SL2 w{1, 0, 0, 1};
    for (;;) {
        // translate b into (−a, a]
        if (f.b > f.a || f.b <= -f.a) {
            // b + 2am ∈ (−a, a]  =>  m = round((a − b) / 2a) rounded down on ties
            long long num = f.a - f.b;
            long long den = 2 * f.a;
            long long m = num >= 0 ? num / den : -((-num + den - 1) / den);
            SL2 t{1, m, 0, 1};
            f = apply_sl2(f, t);
            w = mul(w, t);
        }
        if (f.a > f.c) {
            SL2 s{0, -1, 1, 0};  // (a,b,c) -> (c,−b,a)
            f = apply_sl2(f, s);
            w = mul(w, s);
            continue;
        }
        break;
    }
    // boundary tie: a == c wants b >= 0
    if (f.a == f.c && f.b < 0) {
        SL2 s{0, -1, 1, 0};
        f = apply_sl2(f, s);
        w = mul(w, s);
    }
    if (!f.is_reduced()) throw internal_error("reduction left " + f.str() + " unreduced");
    return ReducedForm{f, w};
}

QuadForm principal_form(long long d) {
    long long b = (((d % 2) + 2) % 2);  // d ≡ 0 → 0, d ≡ 1 (mod 4) → 1
    return QuadForm{1, b, (b * b - d) / 4};
}

std::vector<QuadForm> enumerate_reduced(long long d) {
    if (!is_fundamental_discriminant(d))
        throw std::domain_error("not a negative fundamental discriminant: " + std::to_string(d));
    std::vector<QuadForm> out;
    long long amax = (long long)std::sqrt(double(-d) / 3.0) + 1;
    for (long long a = 1; a <= amax; ++a) {
        if (3 * a * a > -d) break;
        for (long long b = -a + 1; b <= a; ++b) {
            if (((b - d) % 2) != 0) continue;
            long long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            QuadForm f{a, b, c};
            if (!f.is_reduced() || !f.is_primitive()) continue;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

long long class_number(long long d) { return (long long)enumerate_reduced(d).size(); }

Surd tau_of_form(const QuadForm& Q) {
    if (!Q.is_positive_definite())
        throw std::domain_error("form " + Q.str() + " is not positive definite");
    return Surd{-Q.b, 2 * Q.a, Q.disc()};
}

ReducedForm compose(const QuadForm& Q1, const QuadForm& Q2) {
    if (Q1.disc() != Q2.disc())
        throw std::domain_error("discriminant mismatch: " + Q1.str() + " vs " + Q2.str());
    FieldInvariants F = field_invariants(Q1.disc());
    IdealHNF I = ideal_of_form(F, Q1);
    IdealHNF J = ideal_of_form(F, Q2);
    return reduce(form_of_ideal(F, ideal_multiply(I, J)));
}

} // namespace cmray
