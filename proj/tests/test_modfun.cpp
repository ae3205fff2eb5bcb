#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmray/modfun.hpp"

#include <complex>
#include <vector>

using namespace cmray;

namespace {

Real R(const char* s) { return Real(s); }

// |a - b| within the sum of the carried error bounds plus a slack term.
bool agree(const Cplx& a, const Cplx& b, const Real& slack) {
    return cmag(a - b) <= a.err + b.err + slack;
}

Real relgap(const Cplx& a, const Cplx& b) { return cmag(a - b) / cmag(b); }

std::complex<double> to_cd(const Cplx& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

// Brute-force lattice sums in machine doubles over the symmetric box
// |m|, |n| <= 150.  Conditionally convergent pieces cancel pairwise under
// w -> -w, so the box sums are good to ~1e-4 relative: coarse, but an
// oracle that is independent of every q-expansion above.
namespace latt {

constexpr int RANGE = 150;
using cd = std::complex<double>;

cd g2(cd tau) {
    cd s = 0;
    for (int m = -RANGE; m <= RANGE; ++m)
        for (int n = -RANGE; n <= RANGE; ++n) {
            if (m == 0 && n == 0) continue;
            cd w = double(m) * tau + double(n);
            cd w2 = w * w;
            s += 1.0 / (w2 * w2);
        }
    return 60.0 * s;
}

cd g3(cd tau) {
    cd s = 0;
    for (int m = -RANGE; m <= RANGE; ++m)
        for (int n = -RANGE; n <= RANGE; ++n) {
            if (m == 0 && n == 0) continue;
            cd w = double(m) * tau + double(n);
            cd w3 = w * w * w;
            s += 1.0 / (w3 * w3);
        }
    return 140.0 * s;
}

cd wp(cd z, cd tau) {
    cd s = 1.0 / (z * z);
    for (int m = -RANGE; m <= RANGE; ++m)
        for (int n = -RANGE; n <= RANGE; ++n) {
            if (m == 0 && n == 0) continue;
            cd w = double(m) * tau + double(n);
            cd d = z - w;
            s += 1.0 / (d * d) - 1.0 / (w * w);
        }
    return s;
}

cd wp_prime(cd z, cd tau) {
    cd s = 0;
    for (int m = -RANGE; m <= RANGE; ++m)
        for (int n = -RANGE; n <= RANGE; ++n) {
            cd w = double(m) * tau + double(n);
            cd d = z - w;
            s += 1.0 / (d * d * d);
        }
    return -2.0 * s;
}

} // namespace latt

} // namespace

TEST_CASE("g2^3 - 27 g3^2 equals Delta within carried error bounds") {
    EvalContext ctx{40};
    PrecisionScope scope(ctx);
    std::vector<Cplx> taus = {Cplx(R("0"), R("1")), Cplx(R("0"), R("2")),
                              Cplx(R("0.3"), R("0.9")), Cplx(R("-0.45"), R("0.6"))};
    for (const auto& tau : taus) {
        Cplx g2 = g2_value(tau, ctx);
        Cplx g3 = g3_value(tau, ctx);
        Cplx lhs = csqr(g2) * g2 - 27 * csqr(g3);
        Cplx rhs = delta_value(tau, ctx);
        CHECK(agree(lhs, rhs, cmag(rhs) * R("1e-38")));
    }
}

TEST_CASE("j takes its classical values at the nine unit-class points") {
    EvalContext ctx{40};
    PrecisionScope scope(ctx);
    struct Case {
        int d;
        const char* value;
    };
    // singular moduli for each imaginary quadratic field with one form class
    const Case cases[] = {
        {-3, "0"},           {-4, "1728"},         {-7, "-3375"},
        {-8, "8000"},        {-11, "-32768"},      {-19, "-884736"},
        {-43, "-884736000"}, {-67, "-147197952000"},
        {-163, "-262537412640768000"},
    };
    for (const auto& c : cases) {
        FieldInvariants F = field_invariants(c.d);
        CHECK(F.h == 1);
        Cplx j = j_value(surd_value(F.tau(), ctx), ctx);
        CHECK(cmag(j - Cplx(R(c.value))) <= j.err + R("1e-20"));
        CHECK(abs(j.im) <= j.err);
    }
    Cplx j2i = j_value(Cplx(R("0"), R("2")), ctx);
    CHECK(cmag(j2i - Cplx(R("287496"))) <= j2i.err + R("1e-30")); // 66^3 at 2i
}

TEST_CASE("j at the two form classes of discriminant -15") {
    EvalContext ctx{38};
    PrecisionScope scope(ctx);
    FieldInvariants F = field_invariants(-15);
    Cplx j1 = j_value(surd_value(F.tau(), ctx), ctx);
    // tau of the nonprincipal class (2,1,2): (-1 + sqrt(-15))/4
    Cplx j2 = j_value(surd_value(Surd{-1, 4, -15}, ctx), ctx);
    CHECK(cmag(j1 - Cplx(R("-191657.832862547207471353444821273049933"))) <= j1.err + R("1e-28"));
    CHECK(cmag(j2 - Cplx(R("632.832862547207471353444821273049933"))) <= j2.err + R("1e-28"));
    // the pair sums to an integer and multiplies to an integer
    Cplx s = j1 + j2;
    Cplx p = j1 * j2;
    CHECK(cmag(s - Cplx(R("-191025"))) <= s.err + R("1e-25"));
    CHECK(cmag(p - Cplx(R("-121287375"))) <= p.err + R("1e-18"));
}

TEST_CASE("p and p' match brute-force lattice sums") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    std::vector<Cplx> taus = {Cplx(R("0"), R("1")), Cplx(R("0.5"), R("1.3228756555322952952508078768196")),
                              Cplx(R("0.25"), R("1.313"))};
    for (const auto& tau : taus) {
        auto tcd = to_cd(tau);
        double rel_g2 = std::abs(to_cd(g2_value(tau, ctx)) - latt::g2(tcd)) / std::abs(latt::g2(tcd));
        CHECK(rel_g2 < 1e-3);
        auto g3d = latt::g3(tcd);
        double scale_g3 = std::max(std::abs(g3d), 1.0);
        CHECK(std::abs(to_cd(g3_value(tau, ctx)) - g3d) / scale_g3 < 1e-3);

        std::vector<Cplx> zs = {Cplx(R("0.5"), R("0")),
                                Real("0.5") * tau,
                                (Real(1) / 3) * (tau + Cplx(R("1"), R("0")))};
        for (const auto& z : zs) {
            auto zcd = to_cd(z);
            auto wp_o = latt::wp(zcd, tcd);
            auto wpp_o = latt::wp_prime(zcd, tcd);
            CHECK(std::abs(to_cd(wp_value(z, tau, ctx)) - wp_o) / std::abs(wp_o) < 1e-3);
            double scale = std::max(std::abs(wpp_o), 1.0);
            CHECK(std::abs(to_cd(wp_prime_value(z, tau, ctx)) - wpp_o) / scale < 1e-2);
        }
    }
}

TEST_CASE("p at the half periods of the square lattice") {
    EvalContext ctx{45};
    PrecisionScope scope(ctx);
    Cplx i(R("0"), R("1"));
    Cplx e1 = wp_value(Cplx(R("0.5"), R("0")), i, ctx);
    Cplx e3 = wp_value(Cplx(R("0"), R("0.5")), i, ctx);
    Cplx e2 = wp_value(Cplx(R("0.5"), R("0.5")), i, ctx);
    Real frozen = R("6.87518581802037282749009577981055719790085645");
    CHECK(abs(e1.re - frozen) <= e1.err + R("1e-42"));
    CHECK(abs(e1.im) <= e1.err);
    CHECK(cmag(e3 + e1) <= e1.err + e3.err + R("1e-42")); // e3 = -e1 at tau = i
    CHECK(cmag(e2) <= e2.err + R("1e-42"));               // e2 = 0 at tau = i
    // p' vanishes at every half period
    Cplx d1 = wp_prime_value(Cplx(R("0.5"), R("0")), i, ctx);
    CHECK(cmag(d1) <= d1.err + R("1e-40"));
}

TEST_CASE("p satisfies its differential equation") {
    EvalContext ctx{35};
    PrecisionScope scope(ctx);
    std::vector<Cplx> taus = {Cplx(R("0.3"), R("1.1")), Cplx(R("-0.2"), R("0.8"))};
    for (const auto& tau : taus) {
        Cplx z = Real("0.31") * tau + Cplx(R("0.217"), R("0"));
        Cplx P = wp_value(z, tau, ctx);
        Cplx lhs = csqr(wp_prime_value(z, tau, ctx));
        Cplx rhs = 4 * (csqr(P) * P) - g2_value(tau, ctx) * P - g3_value(tau, ctx);
        CHECK(relgap(lhs, rhs) < R("1e-30"));
    }
}

TEST_CASE("p is even and p' is odd; translation by the lattice is exact") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    Cplx tau(R("0.37"), R("0.91"));
    Cplx z = Real("0.23") * tau + Cplx(R("0.41"), R("0"));
    Cplx shifted = z + 3 * tau - Cplx(R("2"), R("0"));
    CHECK(agree(wp_value(z, tau, ctx), wp_value(-z, tau, ctx), R("1e-38")));
    CHECK(agree(wp_prime_value(z, tau, ctx), -wp_prime_value(-z, tau, ctx), R("1e-38")));
    CHECK(agree(wp_value(z, tau, ctx), wp_value(shifted, tau, ctx), R("1e-38")));
    CHECK(agree(wp_prime_value(z, tau, ctx), wp_prime_value(shifted, tau, ctx), R("1e-38")));
}

TEST_CASE("p rejects lattice points as poles") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    Cplx tau(R("0.1"), R("1.2"));
    CHECK_THROWS_AS(wp_value(Cplx(R("0"), R("0")), tau, ctx), std::domain_error);
    CHECK_THROWS_AS(wp_value(tau, tau, ctx), std::domain_error);
    CHECK_THROWS_AS(wp_value(2 * tau - Cplx(R("3"), R("0")), tau, ctx), std::domain_error);
    CHECK_THROWS_AS(wp_prime_value(Cplx(R("5"), R("0")), tau, ctx), std::domain_error);
}

TEST_CASE("j requires height 1/2 and reports achievable digits below it") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    CHECK_THROWS_AS(j_value(Cplx(R("0"), R("0.3")), ctx), precision_error);
    CHECK_THROWS_AS(j_value(Cplx(R("0"), R("-1")), ctx), std::domain_error);
    try {
        j_value(Cplx(R("0"), R("0.25")), ctx);
        CHECK(false);
    } catch (const precision_error& e) {
        CHECK(std::string(e.what()).find("digits") != std::string::npos);
    }
}

TEST_CASE("Siegel value at the square lattice: g_(0,1/2)(i) = 2^(1/4) i") {
    EvalContext ctx{45};
    PrecisionScope scope(ctx);
    Cplx g = siegel_value(SiegelIndex(Rational(0), Rational(1, 2)), Cplx(R("0"), R("1")), ctx);
    CHECK(abs(g.re) <= g.err + R("1e-42"));
    CHECK(abs(g.im - R("1.18920711500272106671749997056047591529297209")) <= g.err + R("1e-42"));
}

TEST_CASE("Siegel magnitude at 2i, index (1/3, 2/3)") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    Cplx g = siegel_value(SiegelIndex(Rational(1, 3), Rational(2, 3)), Cplx(R("0"), R("2")), ctx);
    CHECK(abs(cmag(g) - R("1.42877797916721")) < R("1e-12"));
}

TEST_CASE("g_v^(12N) is invariant under v -> v + m and v -> -v") {
    EvalContext ctx{25};
    PrecisionScope scope(ctx);
    Cplx tau(R("0.37"), R("0.9"));
    auto check_index = [&](long long N, long long a, long long b) {
        Rational v1(a, N), v2(b, N);
        Cplx base = cpow(siegel_value(SiegelIndex(v1, v2), tau, ctx), 12 * N);
        Cplx t1 = cpow(siegel_value_raw(v1 + Rational(1), v2, tau, ctx), 12 * N);
        Cplx t2 = cpow(siegel_value_raw(v1, v2 + Rational(1), tau, ctx), 12 * N);
        Cplx t3 = cpow(siegel_value_raw(Rational(0) - v1, Rational(0) - v2, tau, ctx), 12 * N);
        Real slack = cmag(base) * R("1e-18");
        CHECK(agree(t1, base, slack));
        CHECK(agree(t2, base, slack));
        CHECK(agree(t3, base, slack));
    };
    for (long long N = 2; N <= 8; ++N)
        for (long long a = 0; a < N; ++a)
            for (long long b = 0; b < N; ++b) {
                if (a == 0 && b == 0) continue;
                check_index(N, a, b);
            }
    const long long pairs[][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 5}};
    for (long long N = 9; N <= 12; ++N)
        for (const auto& p : pairs) check_index(N, p[0], p[1]);
}

TEST_CASE("Siegel index validation") {
    CHECK_THROWS_AS(SiegelIndex(Rational(1), Rational(0)), std::domain_error);
    CHECK_THROWS_AS(SiegelIndex(Rational(-3), Rational(7)), std::domain_error);
    SiegelIndex v(Rational(7, 5), Rational(-1, 3));
    CHECK(v.v1 == Rational(2, 5));
    CHECK(v.v2 == Rational(2, 3));
    EvalContext ctx{20};
    PrecisionScope scope(ctx);
    CHECK_THROWS_AS(siegel_value_raw(Rational(2), Rational(5), Cplx(R("0"), R("1")), ctx),
                    std::domain_error);
}

TEST_CASE("Fricke values are even in the index") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    FieldInvariants F = field_invariants(-15);
    Cplx tau = surd_value(F.tau(), ctx);
    const long long idx[][3] = {{1, 2, 5}, {0, 1, 3}, {3, 1, 7}, {1, 1, 2}};
    for (const auto& t : idx) {
        SiegelIndex v(Rational(t[0], t[2]), Rational(t[1], t[2]));
        SiegelIndex neg(Rational(-t[0], t[2]), Rational(-t[1], t[2]));
        Cplx a = fricke_value(v, tau, ctx);
        Cplx b = fricke_value(neg, tau, ctx);
        CHECK(agree(a, b, R("1e-28")));
    }
}

TEST_CASE("Fricke values vanish at tau = i where g3 = 0") {
    EvalContext ctx{35};
    PrecisionScope scope(ctx);
    Cplx i(R("0"), R("1"));
    Cplx g3 = g3_value(i, ctx);
    CHECK(cmag(g3) <= g3.err + R("1e-32"));
    Cplx f = fricke_value(SiegelIndex(Rational(1, 2), Rational(0)), i, ctx);
    CHECK(cmag(f) <= f.err + R("1e-30"));
}

TEST_CASE("Fricke equals -2^7 3^5 (g2 g3/Delta) p on the nose") {
    EvalContext ctx{32};
    PrecisionScope scope(ctx);
    FieldInvariants F = field_invariants(-20);
    Cplx tau = surd_value(F.tau(), ctx);
    SiegelIndex v(Rational(1, 4), Rational(2, 3));
    Cplx z = v.v1.to_real() * tau + Cplx(v.v2.to_real(), R("0"));
    Cplx direct = Real(-31104) * (g2_value(tau, ctx) * g3_value(tau, ctx) *
                                  cinv(delta_value(tau, ctx)) * wp_value(z, tau, ctx));
    Cplx f = fricke_value(v, tau, ctx);
    CHECK(relgap(f, direct) < R("1e-27"));
}

TEST_CASE("curve coefficients: worked x-coordinate -35/128 at d = -7") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    FieldInvariants F = field_invariants(-7);
    TorsionPoint w = make_torsion_point(0, 1, 2); // omega = 1/2
    Cplx x = weber_x(F, 0, w, ctx);
    CHECK(abs(x.re + R("0.2734375")) <= x.err + R("1e-25")); // -35/128
    CHECK(abs(x.im) <= x.err + R("1e-25"));
}

TEST_CASE("the two x-coordinate routes agree") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    struct Case {
        int d;
        long long n, a, b, D;
    };
    const Case cases[] = {{-7, 0, 0, 1, 2}, {-7, 1, 0, 1, 2},  {-15, 1, 1, 2, 5},
                          {-20, 2, 1, 1, 3}, {-20, 3, 1, 0, 2}, {-24, 1, 1, 4, 7}};
    for (const auto& c : cases) {
        FieldInvariants F = field_invariants(c.d);
        TorsionPoint w = make_torsion_point(c.a, c.b, c.D);
        Cplx x1 = weber_x(F, c.n, w, ctx);
        Cplx x2 = weber_x_wp_route(F, c.n, w, ctx);
        CHECK(relgap(x1, x2) < R("1e-26"));
    }
}

TEST_CASE("y^2 closes the curve equation y^2 = 4x^3 - Ax - B") {
    EvalContext ctx{34};
    PrecisionScope scope(ctx);
    struct Case {
        int d;
        long long n, a, b, D;
    };
    const Case cases[] = {{-7, 1, 1, 1, 3}, {-15, 0, 1, 1, 3}, {-20, 2, 1, 2, 5}};
    for (const auto& c : cases) {
        FieldInvariants F = field_invariants(c.d);
        TorsionPoint w = make_torsion_point(c.a, c.b, c.D);
        auto [A, B] = curve_coefficients(F, c.n, ctx);
        Cplx x = weber_x(F, c.n, w, ctx);
        Cplx lhs = y_squared(F, c.n, w, ctx);
        Cplx rhs = 4 * (csqr(x) * x) - A * x - B;
        CHECK(relgap(lhs, rhs) < R("1e-26"));
    }
    // at a 2-torsion point both sides vanish: y = 0 there
    FieldInvariants F7 = field_invariants(-7);
    TorsionPoint half = make_torsion_point(0, 1, 2);
    auto [A, B] = curve_coefficients(F7, 1, ctx);
    Cplx x = weber_x(F7, 1, half, ctx);
    Cplx y2 = y_squared(F7, 1, half, ctx);
    Cplx rhs = 4 * (csqr(x) * x) - A * x - B;
    CHECK(cmag(y2) <= y2.err + R("1e-28"));
    CHECK(cmag(rhs) <= rhs.err + R("1e-28"));
}

TEST_CASE("A B = C^(5n+1)/27^3, including huge exponents") {
    EvalContext ctx{30};
    PrecisionScope scope(ctx);
    for (long long n : {0LL, 1LL, 2LL, 7LL, 40LL}) {
        FieldInvariants F = field_invariants(-20);
        auto [A, B] = curve_coefficients(F, n, ctx);
        Cplx C = C_value(surd_value(F.tau(), ctx), ctx);
        Cplx rhs = (Real(1) / 19683) * cpow(C, 5 * n + 1);
        CHECK(relgap(A * B, rhs) < R("1e-24"));
        CHECK(A.err_finite());
        CHECK(B.err_finite());
    }
}

TEST_CASE("curve family refuses the two extra-automorphism fields") {
    EvalContext ctx{20};
    FieldInvariants F3 = field_invariants(-3);
    FieldInvariants F4 = field_invariants(-4);
    CHECK_THROWS_AS(curve_coefficients(F3, 1, ctx), std::domain_error);
    CHECK_THROWS_AS(curve_coefficients(F4, 0, ctx), std::domain_error);
    FieldInvariants F = field_invariants(-7);
    TorsionPoint w = make_torsion_point(0, 1, 2);
    CHECK_THROWS_AS(weber_x(F3, 1, w, ctx), std::domain_error);
    CHECK_THROWS_AS(y_squared(F4, 1, w, ctx), std::domain_error);
    CHECK_THROWS_AS(curve_coefficients(F, -1, ctx), std::domain_error);
}

TEST_CASE("doubling the truncation stays inside the carried error bounds") {
    EvalContext base{30, 1};
    EvalContext deep{30, 2};
    PrecisionScope scope(base);
    std::vector<Cplx> taus = {Cplx(R("0.13"), R("0.62")), Cplx(R("0"), R("0.55")),
                              Cplx(R("-0.49"), R("1.02"))};
    for (const auto& tau : taus) {
        Cplx a = j_value(tau, base);
        Cplx b = j_value(tau, deep);
        CHECK(cmag(a - b) <= a.err + b.err);
        Cplx z = Real("0.29") * tau + Cplx(R("0.35"), R("0"));
        Cplx pa = wp_value(z, tau, base);
        Cplx pb = wp_value(z, tau, deep);
        CHECK(cmag(pa - pb) <= pa.err + pb.err);
        SiegelIndex v(Rational(1, 7), Rational(3, 7));
        Cplx ga = siegel_value(v, tau, base);
        Cplx gb = siegel_value(v, tau, deep);
        CHECK(cmag(ga - gb) <= ga.err + gb.err);
    }
}

TEST_CASE("raising the digit budget tightens the result consistently") {
    EvalContext lo{15};
    EvalContext hi{60};
    Cplx tau;
    {
        PrecisionScope scope(hi);
        tau = Cplx(R("0.21"), R("0.83"));
    }
    Cplx a = j_value(tau, lo);
    Cplx b = j_value(tau, hi);
    PrecisionScope scope(hi);
    CHECK(cmag(a - b) <= a.err + b.err);
    CHECK(b.err < a.err);
    CHECK(a.err / cmag(a) < R("1e-13")); // relative error meets 10^(2-digits)
    CHECK(b.err / cmag(b) < R("1e-58"));
}
