#include "cmray/bounds.hpp"

#include "cmray/classfield.hpp"
#include "cmray/modfun.hpp"
#include "cmray/quadforms.hpp"
#include "cmray/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace cmray {

namespace {

constexpr std::uint64_t kStreamSalt = 0x9e3779b97f4a7c15ULL;

// Runs fn(i) for i in [0, total); with workers > 1 the index set is striped
// across threads.  fn must confine its writes to slot i of preallocated
// storage; the first exception is rethrown after all threads join.
template <typename Fn>
void parallel_for(int workers, long long total, Fn&& fn) {
    if (workers <= 1) {
        for (long long i = 0; i < total; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&fn, &errors, w, workers, total] {
            try {
                for (long long i = w; i < total; i += workers) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct MarginTracker {
    double worst = std::numeric_limits<double>::infinity();
    long long count = 0;

    void add(const Real& margin) {
        double m = margin.convert_to<double>();
        if (m < worst) worst = m;
        ++count;
    }

    void fold(double m) {
        if (m < worst) worst = m;
        ++count;
    }
};

Certificate seal(std::string claim, std::string description, const MarginTracker& mt,
                 unsigned long long seed) {
    Certificate c;
    c.claim = std::move(claim);
    c.sample_description = std::move(description);
    c.worst_margin = mt.worst;
    c.samples_checked = mt.count;
    c.seed = seed;
    c.pass = mt.count > 0 && mt.worst > 0;
    return c;
}

std::vector<long long> fundamental_pool(long long lo, long long hi) {
    std::vector<long long> out;
    for (long long d = hi; d >= lo; --d)
        if (is_fundamental_discriminant(d)) out.push_back(d);
    return out;
}

Cplx class_invariant(const QuadForm& f, const EvalContext& ctx) {
    return C_value(surd_value(tau_of_form(f), ctx), ctx);
}

} // namespace

const char* theorem_name(TheoremTag t) {
    switch (t) {
        case TheoremTag::InertCase: return "InertCase";
        case TheoremTag::ConditionalBound: return "ConditionalBound";
        case TheoremTag::HilbertOnly: return "HilbertOnly";
    }
    return "?";
}

BoundReport n_min_bound(const FieldInvariants& F, long long Nm) {
    if (Nm < 2)
        throw std::domain_error("least contained integer of a proper modulus is at least 2");
    EvalContext ctx{40};
    PrecisionScope scope(ctx);
    const Real pi = const_pi();
    Real root = sqrt(Real(-F.d));

    BoundReport r;
    r.d = F.d;
    r.Nm = Nm;
    r.log_term = log(Real(229) * Nm / 76);
    r.numerator = Real(13) * pi * root / 24 + 6 * r.log_term;
    r.denominator = Real(5) * pi * root / 2 - log(Real(877383));
    if (!(r.denominator > 0))
        throw std::domain_error("bound denominator is not positive for this discriminant");
    r.raw_bound = r.numerator / r.denominator - Real(1) / 6;
    long long n = static_cast<long long>(ceil(r.raw_bound).convert_to<long long>());
    r.n_min = n < 0 ? 0 : n;
    r.theorem = TheoremTag::ConditionalBound;
    return r;
}

BoundReport generator_plan(const FieldInvariants& F, const IdealHNF& I) {
    if (F.d == -3 || F.d == -4)
        throw std::domain_error("generator plan requires unit group {1,-1}");
    if (I.d != F.d) throw std::domain_error("ideal belongs to a different field");
    if (I.is_whole_ring()) throw std::domain_error("modulus must be a proper ideal");

    BoundReport r = n_min_bound(F, I.least_positive_integer());
    bool integer_modulus = (I.b == 0 && I.ctil == I.a);
    if (!integer_modulus) {
        r.unverified_containment = true;
        return r;
    }
    long long N = I.a;
    if (ray_class_degree(F, N) == 1) {
        r.theorem = TheoremTag::HilbertOnly;
        r.n_min = 0;
    } else if (inert_modulus_check(F, N)) {
        r.theorem = TheoremTag::InertCase;
        r.n_min = 0;
    }
    return r;
}

Certificate certify_j_inequality(long long d_min, long long d_max,
                                 const EvalContext& ctx) {
    if (d_min > d_max || d_max > -15)
        throw std::domain_error("scan range must satisfy d_min <= d_max <= -15");
    PrecisionScope scope(ctx);
    const Real pi = const_pi();

    MarginTracker mt;
    for (long long d = d_min; d <= d_max; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        auto forms = enumerate_reduced(d);
        if (forms.size() < 2) continue;
        Real bound = 877383 * exp(-(Real(5) / 2) * pi * sqrt(Real(-d)));
        mt.add(1 - bound); // the bound itself stays below 1
        Real ck = cmag(class_invariant(forms[0], ctx));
        for (std::size_t i = 1; i < forms.size(); ++i) {
            Real ratio = cmag(class_invariant(forms[i], ctx)) / ck;
            mt.add((bound - ratio) / bound);
        }
    }
    return seal("j-ratio-inequality",
                "|C(tau_Q)/C(tau_K)| < 877383 |q_{tau_K}|^{5/2} < 1 over fundamental d in [" +
                    std::to_string(d_min) + "," + std::to_string(d_max) +
                    "], h >= 2, all nonprincipal classes",
                mt, 0);
}

Certificate certify_siegel_bounds(long long N_max, long long samples,
                                  const EvalContext& ctx, unsigned long long seed,
                                  int workers) {
    if (N_max < 2) throw std::domain_error("grid order must be at least 2");
    PrecisionScope scope(ctx);
    const Real pi = const_pi();
    const Real one24 = Real(1) / 24;
    const Real one12 = Real(1) / 12;

    auto upper_margin = [&](const Cplx& g, const Real& absq) {
        Real ub = Real("2.29") * pow(absq, -one24);
        return (ub - cmag(g)) / ub;
    };
    auto lower_margin = [&](const Cplx& g, const Real& absq, long long N) {
        Real lb = Real("0.76") * pow(absq, one12) / N;
        return (cmag(g) - lb) / cmag(g);
    };

    MarginTracker mt;

    // deterministic boundary grid: the extremes live at Im tau = sqrt(3)/2
    Real im_edge = sqrt(Real(3)) / 2;
    Real absq_edge = exp(-2 * pi * im_edge);
    const char* res[] = {"-0.5", "-0.25", "0", "0.25", "0.5"};
    for (const char* re : res) {
        Cplx tau{Real(re), im_edge};
        for (long long N = 2; N <= std::min<long long>(N_max, 6); ++N)
            for (long long a = 0; a < N; ++a)
                for (long long b = 0; b < N; ++b) {
                    if (a == 0 && b == 0) continue;
                    Cplx g = siegel_value(SiegelIndex(Rational(a, N), Rational(b, N)),
                                          tau, ctx);
                    mt.add(upper_margin(g, absq_edge));
                    mt.add(lower_margin(g, absq_edge, N));
                }
    }

    // seeded random sweep; three checks per sample, margins merged in order
    std::vector<double> margins(static_cast<std::size_t>(samples) * 3,
                                std::numeric_limits<double>::infinity());
    const double im_lo = (sqrt(Real(3)) / 2).convert_to<double>();
    parallel_for(workers, samples, [&](long long i) {
        SplitMix64 rng(seed ^ (kStreamSalt * static_cast<std::uint64_t>(i + 1)));
        Real re(rng.uniform() - 0.5);
        Real im(im_lo + rng.uniform() * (10.0 - im_lo));
        Cplx tau{re, im};
        Real absq = exp(-2 * pi * im);

        long long N = rng.range(2, N_max);
        long long a = rng.range(0, N - 1);
        long long b = rng.range(0, N - 1);
        if (a == 0 && b == 0) a = 1;
        Cplx g = siegel_value(SiegelIndex(Rational(a, N), Rational(b, N)), tau, ctx);
        margins[static_cast<std::size_t>(3 * i)] = upper_margin(g, absq).convert_to<double>();
        margins[static_cast<std::size_t>(3 * i) + 1] =
            lower_margin(g, absq, N).convert_to<double>();

        long long q1 = rng.range(2, 64), q2 = rng.range(2, 64);
        long long p1 = rng.range(0, q1 - 1), p2 = rng.range(0, q2 - 1);
        if (p1 == 0 && p2 == 0) p1 = 1;
        Cplx h = siegel_value(SiegelIndex(Rational(p1, q1), Rational(p2, q2)), tau, ctx);
        margins[static_cast<std::size_t>(3 * i) + 2] =
            upper_margin(h, absq).convert_to<double>();
    });
    for (double m : margins) mt.fold(m);

    return seal("siegel-value-bounds",
                "|g_v| < 2.29 |q|^{-1/24} and |g_v| > 0.76 |q|^{1/12}/N, boundary grid plus " +
                    std::to_string(samples) + " samples, N <= " + std::to_string(N_max) +
                    ", Im tau in [sqrt(3)/2, 10]",
                mt, seed);
}

Certificate certify_ffgg(long long trials, const EvalContext& ctx,
                         unsigned long long seed, int workers) {
    if (trials < 1) throw std::domain_error("at least one trial required");
    PrecisionScope scope(ctx);
    const Real tol("1e-9");
    const Real prefactor = pow(Real(31104), 6); // (2^7 3^5)^6
    const Real three9 = pow(Real(3), 9);

    std::vector<double> margins(static_cast<std::size_t>(trials),
                                std::numeric_limits<double>::infinity());
    parallel_for(workers, trials, [&](long long i) {
        SplitMix64 rng(seed ^ (kStreamSalt * static_cast<std::uint64_t>(i + 1)));

        auto draw_component = [&]() {
            long long q = rng.range(2, 16);
            return Rational(rng.range(0, q - 1), q);
        };
        Rational u1, u2, v1, v2;
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            u1 = draw_component();
            u2 = draw_component();
            v1 = draw_component();
            v2 = draw_component();
            auto nonintegral = [](const Rational& x, const Rational& y) {
                return !(x.is_integer() && y.is_integer());
            };
            ok = nonintegral(u1, u2) && nonintegral(v1, v2) &&
                 nonintegral(u1 + v1, u2 + v2) && nonintegral(u1 - v1, u2 - v2);
        }
        if (!ok) throw internal_error("index sampling failed to find a valid tuple");

        Cplx tau{Real(rng.uniform() - 0.5), Real(0.87 + rng.uniform() * 3.13)};

        Cplx fu = fricke_value(SiegelIndex(u1, u2), tau, ctx);
        Cplx fv = fricke_value(SiegelIndex(v1, v2), tau, ctx);
        Cplx lhs = cpow(fu - fv, 6);

        Cplx J = J_value(tau, ctx);
        Cplx Jm1 = J - Cplx(Real(1));
        Cplx C = csqr(J) * (csqr(Jm1) * Jm1);

        Cplx gu = siegel_value(SiegelIndex(u1, u2), tau, ctx);
        Cplx gv = siegel_value(SiegelIndex(v1, v2), tau, ctx);
        Cplx gp = siegel_value_raw(u1 + v1, u2 + v2, tau, ctx);
        Cplx gm = siegel_value_raw(u1 - v1, u2 - v2, tau, ctx);

        Cplx rhs = (prefactor / three9) * (C * cpow(gp, 6) * cpow(gm, 6) *
                                           cinv(cpow(gu, 12) * cpow(gv, 12)));
        Real rel = cmag(lhs - rhs) / cmag(rhs);
        margins[static_cast<std::size_t>(i)] = ((tol - rel) / tol).convert_to<double>();
    });

    MarginTracker mt;
    for (double m : margins) mt.fold(m);
    return seal("fricke-siegel-sixth-power",
                "(f_u - f_v)^6 = (2^7 3^5)^6 {J^2(J-1)^3/3^9} g_{u+v}^6 g_{u-v}^6 / "
                "(g_u^12 g_v^12) to relative 1e-9 over " +
                    std::to_string(trials) + " random (u, v, tau)",
                mt, seed);
}

Certificate certify_normconstant(long long N, long long points, const EvalContext& ctx,
                                 unsigned long long seed) {
    if (points < 2) throw std::domain_error("need at least two sample points");
    PrecisionScope scope(ctx);
    const Real tol_const("1e-6");
    const Real tol_real("1e-8");

    SplitMix64 rng(seed);
    MarginTracker mt;
    Cplx first;
    for (long long i = 0; i < points; ++i) {
        Cplx tau{Real(rng.uniform() - 0.5), Real(0.9 + rng.uniform() * 2.1)};
        Cplx r = normconstant_ratio(N, tau, ctx);
        mt.add((tol_real - abs(r.im) / cmag(r)) / tol_real);
        if (i == 0) {
            first = r;
            continue;
        }
        Real dev = cmag(r - first) / cmag(first);
        mt.add((tol_const - dev) / tol_const);
    }
    return seal("norm-constant-constancy",
                "prod (f_u - f_v)^6 / {J^2(J-1)^3}^{m_N} constant to 1e-6 and real to 1e-8, N = " +
                    std::to_string(N) + ", " + std::to_string(points) + " points",
                mt, seed);
}

Certificate certify_curve_consistency(long long trials, const EvalContext& ctx,
                                      unsigned long long seed, int workers) {
    if (trials < 1) throw std::domain_error("at least one trial required");
    PrecisionScope scope(ctx);
    const Real tol("1e-10");
    auto pool = fundamental_pool(-300, -7);

    std::vector<double> margins(static_cast<std::size_t>(trials) * 2,
                                std::numeric_limits<double>::infinity());
    parallel_for(workers, trials, [&](long long i) {
        SplitMix64 rng(seed ^ (kStreamSalt * static_cast<std::uint64_t>(i + 1)));
        long long d = pool[static_cast<std::size_t>(rng.next() % pool.size())];
        long long n = rng.range(0, 3);
        long long D = rng.range(3, 9);
        long long a = rng.range(0, D - 1);
        long long b = rng.range(0, D - 1);
        if (a == 0 && b == 0) b = 1;
        while ((2 * a) % D == 0 && (2 * b) % D == 0) b = (b + 1) % D; // avoid y = 0

        FieldInvariants F = field_invariants(d);
        TorsionPoint w = make_torsion_point(a, b, D);
        auto [A, B] = curve_coefficients(F, n, ctx);
        Cplx x = weber_x(F, n, w, ctx);
        Cplx y2 = y_squared(F, n, w, ctx);
        Cplx rhs = 4 * (csqr(x) * x) - A * x - B;
        Real rel_curve = cmag(y2 - rhs) / cmag(rhs);
        margins[static_cast<std::size_t>(2 * i)] =
            ((tol - rel_curve) / tol).convert_to<double>();

        Cplx C = C_value(surd_value(F.tau(), ctx), ctx);
        Cplx ab_rhs = (Real(1) / 19683) * cpow(C, 5 * n + 1);
        Real rel_ab = cmag(A * B - ab_rhs) / cmag(ab_rhs);
        margins[static_cast<std::size_t>(2 * i) + 1] =
            ((tol - rel_ab) / tol).convert_to<double>();
    });

    MarginTracker mt;
    for (double m : margins) mt.fold(m);
    return seal("curve-model-consistency",
                "y^2 = 4x^3 - Ax - B and A B = C^{5n+1}/27^3 to relative 1e-10 over " +
                    std::to_string(trials) + " random (d, n <= 3, omega)",
                mt, seed);
}

Certificate certify_hkc_separation(long long d, long long n_max, const EvalContext& ctx) {
    FieldInvariants F = field_invariants(d);
    if (F.h < 2) throw std::domain_error("separation needs at least two form classes");
    if (n_max < 1) throw std::domain_error("exponent range must start at 1");
    PrecisionScope scope(ctx);

    auto forms = enumerate_reduced(d);
    Real ck = cmag(class_invariant(forms[0], ctx));
    MarginTracker mt;
    for (std::size_t i = 1; i < forms.size(); ++i) {
        Real ratio = cmag(class_invariant(forms[i], ctx)) / ck;
        for (long long n = 1; n <= n_max; ++n) mt.add(1 - pow(ratio, static_cast<int>(n)));
    }
    return seal("class-invariant-separation",
                "|C(tau_Q)|^n < |C(tau_K)|^n for nonprincipal Q, d = " + std::to_string(d) +
                    ", 1 <= n <= " + std::to_string(n_max),
                mt, 0);
}

} // namespace cmray
