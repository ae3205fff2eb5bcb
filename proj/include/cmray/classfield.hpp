#pragma once

// Class-field aggregates on top of the evaluators: Hilbert class polynomials,
// Galois conjugation of modular values through reciprocity matrices, the
// conjugate list of a generator value over the Hilbert class field, and the
// S_N / P_N / m_N index combinatorics with the norm-constant product.

#include "cmray/cmfield.hpp"
#include "cmray/modfun.hpp"
#include "cmray/quadforms.hpp"

#include <array>
#include <utility>
#include <vector>

namespace cmray {

using Mat2 = std::array<long long, 4>; // row major [[m0,m1],[m2,m3]]

// Row vector with 0 <= s,t < N and gcd(N,s,t) = 1.
struct SNElement {
    long long s = 0, t = 0;
    friend bool operator==(const SNElement& a, const SNElement& b) {
        return a.s == b.s && a.t == b.t;
    }
};

// Upper-triangular conjugation matrix [[a_Q, (b_Q-b_K)/2], [0, 1]] carrying
// the action of the form class [Q] on level-N function values.
struct ReciprocityMatrix {
    long long a = 1;     // a_Q; coprime to the level
    long long shift = 0; // (b_Q - b_K)/2

    Mat2 matrix() const { return {a, shift, 0, 1}; }
};

ReciprocityMatrix reciprocity_matrix(const QuadForm& Q, const FieldInvariants& F,
                                     long long N);

// monic integer polynomial with roots j(tau_Q) over the reduced forms of
// discriminant d; coefficients degree-descending.  Starts from a digit
// estimate based on |d| and the form denominators, and doubles the budget
// until every rounding residue is below 1e-4.
std::vector<BigInt> hilbert_class_poly(long long d, const EvalContext& ctx);

// v -> v*gamma reduced mod 1; det(gamma) must be coprime to N.
SiegelIndex siegel_index_action(const SiegelIndex& v, const Mat2& gamma, long long N);

// Galois conjugate of f_v(tau_K) under the class of Q: f_{v gamma_Q}(tau_Q).
Cplx conjugate_fricke_value(const SiegelIndex& v, const QuadForm& Q,
                            const FieldInvariants& F, long long N,
                            const EvalContext& ctx);

// Level-1 counterpart: the conjugate of j(tau_K) under [Q] is j(tau_Q).
Cplx conjugate_j_value(const QuadForm& Q, const FieldInvariants& F,
                       const EvalContext& ctx);

// Representatives (s,t) of the residues s tau_K + t that are invertible
// mod N, one per +/- pair, lexicographically smallest member first,
// ascending.  Requires N >= 2 and d not in {-3,-4}.
std::vector<std::pair<long long, long long>> residue_units(const FieldInvariants& F,
                                                           long long N);

// x_{K,n}((s tau_K + t)/N) over residue_units(F, N), in the same order.
// Throws precision_error if two entries cannot be told apart within their
// error bounds.
std::vector<Cplx> conjugates_over_HK(const FieldInvariants& F, long long N,
                                     long long n, const EvalContext& ctx);

// [K_(N) : H_K] = number of residue unit representatives.
long long ray_class_degree(const FieldInvariants& F, long long N);

std::vector<SNElement> enumerate_S_N(long long N);

// Ordered pairs (u,v) from S_N with u not congruent to +/- v mod N.
std::vector<std::pair<SNElement, SNElement>> enumerate_P_N(long long N);

// |P_N|, computed without materializing the pairs.
long long m_N(long long N);

// prod_{(u,v) in P_N} (f_{u/N} - f_{v/N})^6 / {J^2 (J-1)^3}^{m_N} at tau;
// constant in tau (a rational number) by the norm-constant identity.
Cplx normconstant_ratio(long long N, const Cplx& tau, const EvalContext& ctx);

// Best rational approximation p/q to x with q <= max_den, by continued
// fractions; returns {p, q}.
std::pair<BigInt, BigInt> best_rational_approx(const Real& x, const BigInt& max_den);

} // namespace cmray
