#include "cmray/classfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cmray {

namespace {

long long gcd3(long long a, long long b, long long c) {
    return std::gcd(a, std::gcd(b, c));
}

long long mod_pos(long long x, long long m) { return ((x % m) + m) % m; }

void require_level(long long N) {
    if (N < 2) throw std::domain_error("level N must be at least 2");
}

void require_plain_units(const FieldInvariants& F) {
    if (F.d == -3 || F.d == -4)
        throw std::domain_error("discriminant " + std::to_string(F.d) +
                                " has extra units; residue classes not supported");
}

BigInt round_to_int(const Real& x) {
    Real half("0.5");
    return static_cast<BigInt>(floor(x + half).convert_to<BigInt>());
}

} // namespace

ReciprocityMatrix reciprocity_matrix(const QuadForm& Q, const FieldInvariants& F,
                                     long long N) {
    if (Q.disc() != F.d)
        throw std::domain_error("form discriminant does not match the field");
    if (std::gcd(mod_pos(Q.a, N), N) != 1)
        throw std::domain_error("leading coefficient of the form is not coprime to the level");
    if ((Q.b - F.b) % 2 != 0)
        throw internal_error("form and field middle coefficients differ in parity");
    return ReciprocityMatrix{Q.a, (Q.b - F.b) / 2};
}

std::vector<BigInt> hilbert_class_poly(long long d, const EvalContext& ctx) {
    FieldInvariants F = field_invariants(d);
    (void)F;
    auto forms = enumerate_reduced(d);

    double sum_inv_a = 0;
    for (const auto& f : forms) sum_inv_a += 1.0 / static_cast<double>(f.a);
    int estimate = static_cast<int>(std::ceil(
                       3.14159265358979 * std::sqrt(static_cast<double>(-d)) *
                       sum_inv_a / std::log(10.0))) +
                   25;
    int digits = std::max(ctx.digits, estimate);

    Real worst_residue(0);
    for (int attempt = 0; attempt < 5; ++attempt) {
        EvalContext c = ctx;
        c.digits = digits;
        PrecisionScope scope(c);

        std::vector<Cplx> coeff{Cplx(Real(1))};
        for (const auto& f : forms) {
            Cplx j = j_value(surd_value(tau_of_form(f), c), c);
            coeff.emplace_back(Real(0));
            for (std::size_t i = coeff.size() - 1; i >= 1; --i)
                coeff[i] = coeff[i] - j * coeff[i - 1];
        }

        Real tol("1e-4");
        worst_residue = 0;
        std::vector<BigInt> out;
        out.reserve(coeff.size());
        for (const auto& cf : coeff) {
            BigInt k = round_to_int(cf.re);
            Real residue = abs(cf.re - Real(k.str()));
            if (abs(cf.im) > residue) residue = abs(cf.im);
            if (residue > worst_residue) worst_residue = residue;
            out.push_back(k);
        }
        if (worst_residue < tol) return out;
        digits *= 2;
    }
    throw precision_error("class polynomial coefficients failed to round (residue " +
                          real_to_string(worst_residue, 6) + ")");
}

SiegelIndex siegel_index_action(const SiegelIndex& v, const Mat2& gamma, long long N) {
    require_level(N);
    long long det = gamma[0] * gamma[3] - gamma[1] * gamma[2];
    if (std::gcd(mod_pos(det, N), N) != 1)
        throw std::domain_error("matrix determinant is not coprime to the level");
    Rational w1 = v.v1 * Rational(gamma[0]) + v.v2 * Rational(gamma[2]);
    Rational w2 = v.v1 * Rational(gamma[1]) + v.v2 * Rational(gamma[3]);
    return SiegelIndex(w1, w2);
}

Cplx conjugate_fricke_value(const SiegelIndex& v, const QuadForm& Q,
                            const FieldInvariants& F, long long N,
                            const EvalContext& ctx) {
    ReciprocityMatrix gamma = reciprocity_matrix(Q, F, N);
    SiegelIndex moved = siegel_index_action(v, gamma.matrix(), N);
    return fricke_value(moved, surd_value(tau_of_form(Q), ctx), ctx);
}

Cplx conjugate_j_value(const QuadForm& Q, const FieldInvariants& F,
                       const EvalContext& ctx) {
    if (Q.disc() != F.d)
        throw std::domain_error("form discriminant does not match the field");
    return j_value(surd_value(tau_of_form(Q), ctx), ctx);
}

std::vector<std::pair<long long, long long>> residue_units(const FieldInvariants& F,
                                                           long long N) {
    require_level(N);
    require_plain_units(F);
    std::vector<char> taken(static_cast<std::size_t>(N * N), 0);
    std::vector<std::pair<long long, long long>> out;
    for (long long s = 0; s < N; ++s)
        for (long long t = 0; t < N; ++t) {
            if (taken[static_cast<std::size_t>(s * N + t)]) continue;
            if (std::gcd(mod_pos(norm_form(F, s, t), N), N) != 1) continue;
            out.emplace_back(s, t);
            taken[static_cast<std::size_t>(s * N + t)] = 1;
            long long ns = mod_pos(-s, N), nt = mod_pos(-t, N);
            taken[static_cast<std::size_t>(ns * N + nt)] = 1;
        }
    return out;
}

std::vector<Cplx> conjugates_over_HK(const FieldInvariants& F, long long N,
                                     long long n, const EvalContext& ctx) {
    auto units = residue_units(F, N);
    std::vector<Cplx> out;
    out.reserve(units.size());
    for (const auto& [s, t] : units) {
        TorsionPoint w = make_torsion_point(s, t, N);
        out.push_back(weber_x(F, n, w, ctx));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (cmag(out[i] - out[j]) <= out[i].err + out[j].err)
                throw precision_error(
                    "conjugate values indistinguishable within error bounds; raise digits");
    return out;
}

long long ray_class_degree(const FieldInvariants& F, long long N) {
    return static_cast<long long>(residue_units(F, N).size());
}

std::vector<SNElement> enumerate_S_N(long long N) {
    require_level(N);
    std::vector<SNElement> out;
    for (long long s = 0; s < N; ++s)
        for (long long t = 0; t < N; ++t)
            if (gcd3(N, s, t) == 1) out.push_back(SNElement{s, t});
    return out;
}

std::vector<std::pair<SNElement, SNElement>> enumerate_P_N(long long N) {
    auto S = enumerate_S_N(N);
    std::vector<std::pair<SNElement, SNElement>> out;
    for (const auto& u : S)
        for (const auto& v : S) {
            bool same = (u.s == v.s && u.t == v.t);
            bool neg = (u.s == mod_pos(-v.s, N) && u.t == mod_pos(-v.t, N));
            if (!same && !neg) out.emplace_back(u, v);
        }
    return out;
}

long long m_N(long long N) {
    auto S = enumerate_S_N(N);
    long long size = static_cast<long long>(S.size());
    long long class_mass = 0; // sum over u of |class(u)|
    for (const auto& u : S) {
        bool self = (u.s == mod_pos(-u.s, N) && u.t == mod_pos(-u.t, N));
        class_mass += self ? 1 : 2;
    }
    return size * size - class_mass;
}

Cplx normconstant_ratio(long long N, const Cplx& tau, const EvalContext& ctx) {
    require_level(N);
    PrecisionScope scope(ctx);
    if (2 * tau.im * tau.im < Real(3) / 2) // Im tau >= sqrt(3)/2
        throw std::domain_error("tau must have height at least sqrt(3)/2");

    auto S = enumerate_S_N(N);
    std::vector<Cplx> f;
    f.reserve(S.size());
    for (const auto& u : S)
        f.push_back(fricke_value(SiegelIndex(Rational(u.s, N), Rational(u.t, N)), tau, ctx));

    Cplx num(Real(1));
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            if (i == j) continue;
            const auto& u = S[i];
            const auto& v = S[j];
            if (u.s == mod_pos(-v.s, N) && u.t == mod_pos(-v.t, N)) continue;
            num = num * cpow(f[i] - f[j], 6);
        }

    Cplx J = J_value(tau, ctx);
    Cplx C = csqr(J) * (csqr(J - Cplx(Real(1))) * (J - Cplx(Real(1))));
    return num * cinv(cpow(C, m_N(N)));
}

std::pair<BigInt, BigInt> best_rational_approx(const Real& x, const BigInt& max_den) {
    if (max_den < 1) throw std::domain_error("denominator bound must be positive");
    Real y = x;
    BigInt h2(0), h1(1), k2(1), k1(0); // seed convergents 0/1 and 1/0
    std::pair<BigInt, BigInt> best{round_to_int(x), BigInt(1)};
    for (int iter = 0; iter < 128; ++iter) {
        Real fl = floor(y);
        BigInt a = fl.convert_to<BigInt>();
        BigInt h = a * h1 + h2;
        BigInt k = a * k1 + k2;
        if (k > max_den) break;
        best = {h, k};
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        Real frac = y - fl;
        if (frac < rounding_eps()) break;
        y = 1 / frac;
    }
    return best;
}

} // namespace cmray
