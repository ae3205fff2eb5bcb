#pragma once

// Quantitative layer: the n_min lower bound for single-value ray class field
// generation, the per-modulus generator plan, and numeric certificates for
// the inequalities and identities the generation theorems rest on
// (j-ratio inequality, Siegel value bounds, the Fricke/Siegel sixth-power
// identity, norm-constant constancy, curve-model consistency, and the
// separation |C(tau_Q)| < |C(tau_K)|).

#include "cmray/cmfield.hpp"
#include "cmray/ideals.hpp"
#include "cmray/numeric.hpp"

#include <string>

namespace cmray {

enum class TheoremTag {
    InertCase,        // modulus N*O_K with every prime factor of N inert: all n >= 0
    ConditionalBound, // generic modulus: n >= n_min certified by the closed-form bound
    HilbertOnly,      // ray class field equals the Hilbert class field; bound vacuous
};

const char* theorem_name(TheoremTag t);

struct BoundReport {
    long long d = 0;
    long long Nm = 0;
    Real raw_bound{0};
    long long n_min = 0;
    TheoremTag theorem = TheoremTag::ConditionalBound;

    // intermediates of the closed form
    Real numerator{0};   // (13/24) pi sqrt|d| + 6 ln(229 Nm / 76)
    Real denominator{0}; // (5/2) pi sqrt|d| - ln 877383
    Real log_term{0};    // ln(229 Nm / 76)

    // x and y^2 jointly generate for every n >= 0 regardless of n_min.
    bool xy_all_n = true;
    // set when the modulus is not N*O_K, where proper containment over H_K
    // is not checked here
    bool unverified_containment = false;
};

// Smallest n with n >= (13/24 pi sqrt|d| + 6 ln(229 Nm/76)) / ((5/2) pi
// sqrt|d| - ln 877383) - 1/6, clamped to >= 0.  Evaluated at 40 digits.
BoundReport n_min_bound(const FieldInvariants& F, long long Nm);

// Bound report for a concrete modulus: InertCase / HilbertOnly detection for
// integer ideals, conditional bound otherwise.
BoundReport generator_plan(const FieldInvariants& F, const IdealHNF& I);

// Outcome of a numeric sweep: pass iff every margin stayed positive.
struct Certificate {
    std::string claim;
    std::string sample_description;
    bool pass = false;
    double worst_margin = 0; // smallest normalized slack observed
    long long samples_checked = 0;
    unsigned long long seed = 0;
};

inline constexpr unsigned long long kDefaultCertifySeed = 0x5D1E6E55ULL;

// |C(tau_Q)/C(tau_K)| < 877383 |q_{tau_K}|^{5/2} < 1 for every fundamental
// d in [d_min, d_max] with h >= 2 and every nonprincipal reduced Q.
Certificate certify_j_inequality(long long d_min, long long d_max,
                                 const EvalContext& ctx);

// |g_v(tau)| < 2.29 |q|^{-1/24} for arbitrary v, and > 0.76 |q|^{1/12} / N
// for v on the (1/N)-grid, over a deterministic boundary grid plus `samples`
// seeded random draws with Im tau in [sqrt(3)/2, 10] and 2 <= N <= N_max.
Certificate certify_siegel_bounds(long long N_max, long long samples,
                                  const EvalContext& ctx,
                                  unsigned long long seed = kDefaultCertifySeed,
                                  int workers = 1);

// (f_u - f_v)^6 = (2^7 3^5)^6 {J^2(J-1)^3/3^9} g_{u+v}^6 g_{u-v}^6 /
// (g_u^12 g_v^12) over `trials` random (u, v, tau), to relative 1e-9.
Certificate certify_ffgg(long long trials, const EvalContext& ctx,
                         unsigned long long seed = kDefaultCertifySeed,
                         int workers = 1);

// normconstant_ratio(N, tau) constant across `points` sample heights to
// relative 1e-6 and real to 1e-8.
Certificate certify_normconstant(long long N, long long points, const EvalContext& ctx,
                                 unsigned long long seed = kDefaultCertifySeed);

// y^2 = 4x^3 - Ax - B and A B = C^(5n+1)/27^3 to relative 1e-10 over random
// (d, n <= 3, omega).
Certificate certify_curve_consistency(long long trials, const EvalContext& ctx,
                                      unsigned long long seed = kDefaultCertifySeed,
                                      int workers = 1);

// |C(tau_Q)|^n stays strictly below |C(tau_K)|^n for 1 <= n <= n_max and
// every nonprincipal class of discriminant d (h >= 2 required).
Certificate certify_hkc_separation(long long d, long long n_max,
                                   const EvalContext& ctx);

} // namespace cmray
