#include "cmray/ideals.hpp"
#include "cmray/numeric.hpp"

#include <numeric>
#include <stdexcept>

namespace cmray {

std::string IdealHNF::str() const {
    return "[" + std::to_string(a) + ", " + std::to_string(b) + "+" + std::to_string(ctil) +
           "*tau]";
}

std::string TorsionPoint::str() const {
    return "(" + std::to_string(a) + "*tau+" + std::to_string(b) + ")/" + std::to_string(D);
}

static long long gcdll(long long x, long long y) {
    return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
}

IdealHNF make_ideal(const FieldInvariants& F, long long a, long long b, long long ctil) {
    if (a <= 0 || ctil <= 0) throw std::domain_error("ideal requires a > 0 and ctil > 0");
    if (b < 0 || b >= a) throw std::domain_error("ideal requires 0 <= b < a");
    if (a % ctil != 0 || b % ctil != 0)
        throw std::domain_error("ideal requires ctil | a and ctil | b");
    // closure under tau: a*ctil must divide N(b + ctil*tau) = c ctil^2 - b_K b ctil + b^2
    long long nrm = F.c * ctil * ctil - F.b * b * ctil + b * b;
    if (nrm % (a * ctil) != 0)
        throw std::domain_error("lattice [" + std::to_string(a) + ", " + std::to_string(b) + "+" +
                                std::to_string(ctil) + "*tau] is not an ideal of O_K");
    return IdealHNF{F.d, a, b, ctil};
}

TorsionPoint make_torsion_point(long long a, long long b, long long D) {
    if (D <= 0) throw std::domain_error("torsion point requires D > 0");
    long long g = std::gcd(gcdll(a, b), D);
    if (g > 1) { a /= g; b /= g; D /= g; }
    a = ((a % D) + D) % D;
    b = ((b % D) + D) % D;
    if (D == 1 || (a == 0 && b == 0))
        throw std::domain_error("torsion point lies in O_K");
    return TorsionPoint{a, b, D};
}

// HNF of the Z-span of integer vectors (s, t); assumes the span is already
// closed under tau (callers append tau*g for every generator g).
static IdealHNF hnf_of_vectors(const FieldInvariants& F,
                               std::vector<std::pair<long long, long long>> vecs) {
    // combine to a single vector w carrying the gcd of all s-coordinates
    long long ctil = 0;
    std::pair<long long, long long> w{0, 0};
    for (const auto& v : vecs) {
        if (v.first == 0) continue;
        if (ctil == 0) {
            w = v;
            ctil = v.first < 0 ? -v.first : v.first;
            if (w.first < 0) { w.first = -w.first; w.second = -w.second; }
            continue;
        }
        // extended gcd of (ctil, v.s): g = x*ctil + y*v.s
        long long r0 = ctil, r1 = v.first, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
            std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
        }
        if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
        w = {r0, x0 * w.second + y0 * v.second};
        ctil = r0;
    }
    if (ctil == 0) throw std::domain_error("generators span the zero module");
    // reduce every vector to s = 0 and take the gcd of the leftover integers
    long long a = 0;
    for (const auto& v : vecs) {
        long long t = v.second - (v.first / ctil) * w.second;
        a = gcdll(a, t);
    }
    if (a == 0) throw std::domain_error("generators span a rank-1 module, not an ideal");
    long long b = ((w.second % a) + a) % a;
    return make_ideal(F, a, b, ctil);
}

IdealHNF ideal_from_generators(const FieldInvariants& F,
                               const std::vector<std::pair<long long, long long>>& gens,
                               const std::vector<long long>& int_gens) {
    std::vector<std::pair<long long, long long>> vecs;
    auto push_with_tau = [&](long long s, long long t) {
        vecs.emplace_back(s, t);
        // tau*(s*tau + t) = (t − s*b_K)*tau − s*c_K
        vecs.emplace_back(t - s * F.b, -s * F.c);
    };
    for (const auto& [s, t] : gens) push_with_tau(s, t);
    for (long long n : int_gens) push_with_tau(0, n);
    bool all_zero = true;
    for (const auto& v : vecs)
        if (v.first != 0 || v.second != 0) all_zero = false;
    if (vecs.empty() || all_zero) throw std::domain_error("generators span the zero module");
    return hnf_of_vectors(F, vecs);
}

IdealHNF whole_ring(const FieldInvariants& F) { return IdealHNF{F.d, 1, 0, 1}; }

IdealHNF principal_ideal(const FieldInvariants& F, long long s, long long t) {
    return ideal_from_generators(F, {{s, t}});
}

IdealHNF integer_ideal(const FieldInvariants& F, long long N) {
    if (N == 0) throw std::domain_error("zero is not a generator of a nonzero ideal");
    return ideal_from_generators(F, {}, {N});
}

IdealHNF prime_ideal_above(const FieldInvariants& F, long long p,
                           std::optional<long long> root) {
    SplitType st = classify_prime(F, p);
    if (st == SplitType::Inert) {
        if (root)
            throw std::domain_error("inert prime " + std::to_string(p) + " admits no root");
        return integer_ideal(F, p);
    }
    std::vector<long long> roots;
    for (long long r = 0; r < p; ++r)
        if ((norm_form(F, 1, r)) % p == 0) roots.push_back(r);  // r^2 − b_K r + c_K ≡ 0
    if (roots.empty()) throw internal_error("no norm-form root above non-inert prime");
    long long r = roots.front();
    if (root) {
        long long want = ((*root % p) + p) % p;
        bool ok = false;
        for (long long cand : roots) ok = ok || cand == want;
        if (!ok)
            throw std::domain_error(std::to_string(*root) + " is not a root of the norm form mod " +
                                    std::to_string(p));
        r = want;
    }
    return make_ideal(F, p, r, 1);
}

IdealHNF ideal_multiply(const IdealHNF& I, const IdealHNF& J) {
    if (I.d != J.d) throw std::domain_error("ideal discriminant mismatch");
    FieldInvariants F = field_invariants(I.d);
    // pairwise products of the generators (a, 0), (b + ctil*tau)
    auto mul = [&](long long s1, long long t1, long long s2,
                   long long t2) -> std::pair<long long, long long> {
        // (s1 tau + t1)(s2 tau + t2), tau^2 = −b_K tau − c_K
        return {t1 * s2 + s1 * t2 - s1 * s2 * F.b, t1 * t2 - s1 * s2 * F.c};
    };
    std::vector<std::pair<long long, long long>> gens = {
        mul(0, I.a, 0, J.a), mul(0, I.a, J.ctil, J.b), mul(I.ctil, I.b, 0, J.a),
        mul(I.ctil, I.b, J.ctil, J.b)};
    return ideal_from_generators(F, gens);
}

long long least_positive_integer(const IdealHNF& I) { return I.a; }
long long ideal_norm(const IdealHNF& I) { return I.norm(); }

bool is_coprime_to_integer(const IdealHNF& I, long long N) {
    if (N < 1) throw std::domain_error("modulus must be >= 1");
    if (N == 1) return true;
    FieldInvariants F = field_invariants(I.d);
    IdealHNF sum = ideal_from_generators(F, {{0, I.a}, {I.ctil, I.b}}, {N});
    return sum.is_whole_ring();
}

// 2x2 Smith normal form U*M*V = diag(d0, d1); only V is tracked (solution
// lattice needs it).
static void snf2x2(long long M[2][2], long long V[2][2]) {
    V[0][0] = V[1][1] = 1;
    V[0][1] = V[1][0] = 0;
    auto swap_cols = [&]() {
        std::swap(M[0][0], M[0][1]);
        std::swap(M[1][0], M[1][1]);
        std::swap(V[0][0], V[0][1]);
        std::swap(V[1][0], V[1][1]);
    };
    for (;;) {
        // clear M[0][1] with column ops, M[1][0] with row ops
        while (M[0][1] != 0) {
            if (M[0][0] == 0) { swap_cols(); continue; }
            long long q = M[0][1] / M[0][0];
            M[0][1] -= q * M[0][0];
            M[1][1] -= q * M[1][0];
            V[0][1] -= q * V[0][0];
            V[1][1] -= q * V[1][0];
            if (M[0][1] != 0) swap_cols();
        }
        while (M[1][0] != 0) {
            if (M[0][0] == 0) {
                std::swap(M[0][0], M[1][0]);
                std::swap(M[0][1], M[1][1]);
                continue;
            }
            long long q = M[1][0] / M[0][0];
            M[1][0] -= q * M[0][0];
            M[1][1] -= q * M[0][1];
        }
        if (M[0][1] == 0) break;  // row ops may have refilled it
    }
    // divisibility d0 | d1 is not needed for kernel extraction; skip it
}

IdealHNF annihilator(const FieldInvariants& F, const TorsionPoint& w) {
    // x = s*tau + t annihilates omega = (p*tau + q)/D iff
    //   s(q − p b_K) + t p ≡ 0  and  −s p c_K + t q ≡ 0  (mod D)
    long long D = w.D;
    long long M[2][2] = {{w.b - w.a * F.b, w.a}, {-w.a * F.c, w.b}};
    long long V[2][2];
    snf2x2(M, V);
    long long d0 = M[0][0] < 0 ? -M[0][0] : M[0][0];
    long long d1 = M[1][1] < 0 ? -M[1][1] : M[1][1];
    long long m0 = D / std::gcd(d0, D);
    long long m1 = D / std::gcd(d1, D);
    // kernel = V * (m0 Z × m1 Z)
    std::vector<std::pair<long long, long long>> gens = {
        {m0 * V[0][0], m0 * V[1][0]}, {m1 * V[0][1], m1 * V[1][1]}};
    return ideal_from_generators(F, gens, {D});
}

TorsionPoint find_omega(const FieldInvariants& F, const IdealHNF& I) {
    if (I.is_whole_ring()) throw std::domain_error("whole ring has no torsion generator");
    long long D = I.a;
    for (long long p = 0; p < D; ++p) {
        for (long long q = 0; q < D; ++q) {
            if (p == 0 && q == 0) continue;
            // quick membership test: (b + ctil*tau)·omega ∈ O_K
            long long s = I.b * p + I.ctil * q - I.ctil * p * F.b;
            long long t = I.b * q - I.ctil * p * F.c;
            if (s % D != 0 || t % D != 0) continue;
            if (std::gcd(gcdll(p, q), D) != 1) continue;
            TorsionPoint w{p, q, D};
            if (annihilator(F, w) == I) return w;
        }
    }
    throw internal_error("no torsion generator found for " + I.str());
}

IdealHNF ideal_of_form(const FieldInvariants& F, const QuadForm& Q) {
    if (Q.disc() != F.d) throw std::domain_error("form discriminant mismatch");
    if (!Q.is_positive_definite() || !Q.is_primitive())
        throw std::domain_error("form " + Q.str() + " is not primitive positive definite");
    // (a, b, c) -> [a, (−b+√d)/2] = [a, (b_K−b)/2 + tau]
    long long beta = (F.b - Q.b) / 2;
    return make_ideal(F, Q.a, ((beta % Q.a) + Q.a) % Q.a, 1);
}

QuadForm form_of_ideal(const FieldInvariants& F, const IdealHNF& I) {
    if (I.d != F.d) throw std::domain_error("ideal discriminant mismatch");
    long long a = I.a / I.ctil;  // primitive part: I = ctil·[a, b/ctil + tau]
    long long beta = I.b / I.ctil;
    long long b = F.b - 2 * beta;
    b = ((b % (2 * a)) + 2 * a) % (2 * a);  // into [0, 2a), then (−a, a]
    if (b > a) b -= 2 * a;
    QuadForm Q{a, b, 0};
    Q.c = (Q.b * Q.b - F.d) / (4 * Q.a);
    if (Q.disc() != F.d) throw internal_error("form/ideal correspondence broke discriminant");
    return Q;
}

std::vector<IdealHNF> ideals_up_to_norm(const FieldInvariants& F, long long bound) {
    std::vector<IdealHNF> out;
    for (long long ctil = 1; ctil * ctil <= bound; ++ctil) {
        for (long long a = ctil; a * ctil <= bound; a += ctil) {
            for (long long b = 0; b < a; b += ctil) {
                long long nrm = F.c * ctil * ctil - F.b * b * ctil + b * b;
                if (nrm % (a * ctil) != 0) continue;
                out.push_back(IdealHNF{F.d, a, b, ctil});
            }
        }
    }
    return out;
}

} // namespace cmray
