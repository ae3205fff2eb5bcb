#pragma once

// Integral ideals of O_K as two-generator Hermite-normal-form lattices
//   I = Z·a + Z·(b + ctil·tau_K),   ctil | a,  ctil | b,  0 <= b < a,
// with norm a·ctil and least positive integer a.  Products, coprimality,
// and the torsion point omega generating I^{-1}/O_K with its annihilator.

#include "cmray/cmfield.hpp"
#include "cmray/quadforms.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cmray {

struct IdealHNF {
    long long d = 0;     // ambient discriminant
    long long a = 1;     // least positive rational integer in the ideal
    long long b = 0;     // 0 <= b < a
    long long ctil = 1;  // content of the tau coordinate; ctil | a, ctil | b

    long long norm() const { return a * ctil; }
    long long least_positive_integer() const { return a; }
    bool is_whole_ring() const { return a == 1 && ctil == 1; }

    friend bool operator==(const IdealHNF& x, const IdealHNF& y) {
        return x.d == y.d && x.a == y.a && x.b == y.b && x.ctil == y.ctil;
    }
    friend bool operator!=(const IdealHNF& x, const IdealHNF& y) { return !(x == y); }

    std::string str() const;
};

// omega = (a·tau_K + b)/D, stored with gcd(a,b,D) = 1 and 0 <= a,b < D.
struct TorsionPoint {
    long long a = 0;
    long long b = 1;
    long long D = 2;

    std::string str() const;
};

// Validating constructors.
IdealHNF make_ideal(const FieldInvariants& F, long long a, long long b, long long ctil);
TorsionPoint make_torsion_point(long long a, long long b, long long D);

// HNF of the O_K-module spanned by gens (pairs (s,t) meaning s·tau_K + t)
// and optional plain integer generators.  Throws for the zero module.
IdealHNF ideal_from_generators(const FieldInvariants& F,
                               const std::vector<std::pair<long long, long long>>& gens,
                               const std::vector<long long>& int_gens = {});

IdealHNF whole_ring(const FieldInvariants& F);
IdealHNF principal_ideal(const FieldInvariants& F, long long s, long long t);
IdealHNF integer_ideal(const FieldInvariants& F, long long N);

// The prime ideal above p: p·O_K when p is inert, [p, r + tau_K] with
// r² − b_K r + c_K ≡ 0 (mod p) otherwise.  An explicit root selects between
// the two split primes; the smallest root is the default.
IdealHNF prime_ideal_above(const FieldInvariants& F, long long p,
                           std::optional<long long> root = std::nullopt);

IdealHNF ideal_multiply(const IdealHNF& I, const IdealHNF& J);

long long least_positive_integer(const IdealHNF& I);
long long ideal_norm(const IdealHNF& I);

// True iff I + N·O_K = O_K.
bool is_coprime_to_integer(const IdealHNF& I, long long N);

// {x in O_K : x·omega in O_K}, by exact 2x2 linear algebra mod D.
IdealHNF annihilator(const FieldInvariants& F, const TorsionPoint& w);

// Lexicographically least (a,b) in [0,D)², D = least_positive_integer(I),
// with annihilator((a·tau_K+b)/D) = I.
TorsionPoint find_omega(const FieldInvariants& F, const IdealHNF& I);

// Form <-> ideal correspondence (a,b,c) <-> [a, (−b+√d)/2].
IdealHNF ideal_of_form(const FieldInvariants& F, const QuadForm& Q);
QuadForm form_of_ideal(const FieldInvariants& F, const IdealHNF& I);

// All ideals of norm <= bound (test corpus helper).
std::vector<IdealHNF> ideals_up_to_norm(const FieldInvariants& F, long long bound);

} // namespace cmray
