#pragma once

// Binary quadratic forms a x^2 + b xy + c y^2 of negative discriminant:
// Gauss reduction with an SL2(Z) witness, enumeration of the reduced
// representatives, class numbers, composition (through the ideal
// correspondence), and the CM point tau_Q = (-b + sqrt(d)) / (2a).

#include "cmray/cmfield.hpp"

#include <array>
#include <vector>

namespace cmray {

struct QuadForm {
    long long a = 1, b = 0, c = 1;

    long long disc() const { return b * b - 4 * a * c; }
    bool is_primitive() const;
    bool is_positive_definite() const { return a > 0 && disc() < 0; }
    bool is_reduced() const {
        return (-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c);
    }

    friend bool operator==(const QuadForm& x, const QuadForm& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator!=(const QuadForm& x, const QuadForm& y) { return !(x == y); }

    std::string str() const;
};

// Row-major [[m0 m1],[m2 m3]], det = 1.
using SL2 = std::array<long long, 4>;

// (Q ∘ γ)(x,y) = Q(m0 x + m1 y, m2 x + m3 y)
QuadForm apply_sl2(const QuadForm& Q, const SL2& g);

struct ReducedForm {
    QuadForm form;
    SL2 witness{1, 0, 0, 1};  // apply_sl2(input, witness) == form
};

// Gauss reduction; throws std::domain_error for non-positive-definite or
// imprimitive input.
ReducedForm reduce(const QuadForm& Q);

QuadForm principal_form(long long d);

// All reduced forms of fundamental discriminant d, sorted by (a, b);
// the principal form comes first.
std::vector<QuadForm> enumerate_reduced(long long d);

long long class_number(long long d);

// tau_Q = (−b + √d)/(2a), the root of Q(x, 1) in the upper half-plane.
Surd tau_of_form(const QuadForm& Q);

// Dirichlet composition via the ideal correspondence
// (a, b, c) <-> [a, (−b+√d)/2]; returns the reduced representative.
ReducedForm compose(const QuadForm& Q1, const QuadForm& Q2);

} // namespace cmray
