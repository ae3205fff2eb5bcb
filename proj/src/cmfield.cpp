#include "cmray/cmfield.hpp"
#include "cmray/quadforms.hpp"

#include <stdexcept>

namespace cmray {

const char* split_name(SplitType s) {
    switch (s) {
        case SplitType::Ramified: return "ramified";
        case SplitType::Inert: return "inert";
        case SplitType::Split: return "split";
    }
    return "?";
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

static bool squarefree(long long n) {
    if (n < 0) n = -n;
    for (long long q = 2; q * q <= n; ++q)
        if (n % (q * q) == 0) return false;
    return true;
}

bool is_fundamental_discriminant(long long d) {
    if (d >= 0) return false;
    long long r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(d);
    if (r == 0) {
        long long m = d / 4;
        long long mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree(m);
    }
    return false;
}

FieldInvariants field_invariants(long long d) {
    if (d >= 0)
        throw std::domain_error("discriminant must be negative (got " + std::to_string(d) + ")");
    long long r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw std::domain_error("discriminant must be 0 or 1 mod 4 (got " + std::to_string(d) + ")");
    if (!is_fundamental_discriminant(d))
        throw std::domain_error(
            "discriminant is not fundamental: " + std::to_string(d) +
            (r == 1 ? " is not squarefree" : " has d/4 not squarefree or d/4 ≡ 1 (mod 4)"));
    FieldInvariants F;
    F.d = d;
    F.b = (r == 1) ? 1 : 0;
    F.c = (F.b * F.b - d) / 4;
    F.h = class_number(d);
    return F;
}

int kronecker_symbol(long long d, long long p) {
    if (!is_prime(p))
        throw std::domain_error(std::to_string(p) + " is not prime");
    if (p == 2) {
        if (d % 2 == 0) return 0;
        long long r = ((d % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    long long a = ((d % p) + p) % p;
    if (a == 0) return 0;
    // Euler criterion: a^((p-1)/2) mod p
    long long result = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) result = (__int128)result * base % p;
        base = (__int128)base * base % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

SplitType classify_prime(const FieldInvariants& F, long long p) {
    int k = kronecker_symbol(F.d, p);
    if (k == 0) return SplitType::Ramified;
    return k == -1 ? SplitType::Inert : SplitType::Split;
}

long long norm_form(const FieldInvariants& F, long long s, long long t) {
    return F.c * s * s - F.b * s * t + t * t;
}

bool inert_modulus_check(const FieldInvariants& F, long long N) {
    if (N < 2) throw std::domain_error("modulus must be >= 2");
    long long n = N;
    for (long long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            if (classify_prime(F, q) != SplitType::Inert) return false;
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1 && classify_prime(F, n) != SplitType::Inert) return false;
    return true;
}

} // namespace cmray
