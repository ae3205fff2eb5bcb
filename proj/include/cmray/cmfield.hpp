#pragma once

// Exact invariants of an imaginary quadratic field K = Q(sqrt(d)):
// fundamental discriminant data, the principal form coefficients b_K, c_K,
// prime splitting, and the norm form N(s*tau_K + t).
//
// tau_K = (-b_K + sqrt(d_K))/2 satisfies tau_K^2 = -b_K*tau_K - c_K, so the
// ring of integers is the lattice [tau_K, 1]; everything downstream works in
// that basis with exact integers.

#include <string>

namespace cmray {

// Exact quadratic surd (num + sqrt(disc)) / den with disc < 0.
struct Surd {
    long long num = 0;
    long long den = 1;
    long long disc = -3;

    std::string str() const {
        return "(" + std::to_string(num) + "+sqrt(" + std::to_string(disc) + "))/" +
               std::to_string(den);
    }
};

enum class SplitType { Ramified, Inert, Split };

const char* split_name(SplitType s);

struct FieldInvariants {
    long long d = 0;  // fundamental discriminant, < 0
    long long b = 0;  // 0 if d ≡ 0 (mod 4), else 1
    long long c = 0;  // (b^2 - d)/4
    long long h = 0;  // class number

    Surd tau() const { return Surd{-b, 2, d}; }
};

bool is_prime(long long p);
bool is_fundamental_discriminant(long long d);

// Throws std::domain_error naming the violated condition for invalid d.
FieldInvariants field_invariants(long long d);

// Standard Kronecker symbol (d/p) for prime p; (d/2) is 0 for even d,
// +1 for d ≡ ±1 (mod 8), −1 for d ≡ ±3 (mod 8).
int kronecker_symbol(long long d, long long p);

SplitType classify_prime(const FieldInvariants& F, long long p);

// N(s*tau_K + t) = c_K s^2 − b_K s t + t^2 (positive definite).
long long norm_form(const FieldInvariants& F, long long s, long long t);

// True iff every prime factor of N is inert in K.
bool inert_modulus_check(const FieldInvariants& F, long long N);

} // namespace cmray
