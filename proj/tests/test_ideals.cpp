#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmray/ideals.hpp"

#include <numeric>
#include <stdexcept>

using namespace cmray;

static const FieldInvariants F20 = field_invariants(-20);
static const FieldInvariants F15 = field_invariants(-15);
static const FieldInvariants F7 = field_invariants(-7);

TEST_CASE("HNF from generators reproduces the worked prime ideals") {
    // p1 = [1+tau, 2]
    IdealHNF p1 = ideal_from_generators(F20, {{1, 1}}, {2});
    CHECK(p1.a == 2);
    CHECK(p1.b == 1);
    CHECK(p1.ctil == 1);
    CHECK(p1.norm() == 2);

    // 13 O_K
    IdealHNF p2 = integer_ideal(F20, 13);
    CHECK(p2.a == 13);
    CHECK(p2.ctil == 13);
    CHECK(p2.norm() == 169);

    // p3 = [15+tau, 23]
    IdealHNF p3 = ideal_from_generators(F20, {{1, 15}}, {23});
    CHECK(p3.a == 23);
    CHECK(p3.b == 15);
    CHECK(p3.norm() == 23);

    // generator order does not matter
    CHECK(ideal_from_generators(F20, {{0, 23}, {1, 15}}) == p3);
    CHECK_THROWS_AS(ideal_from_generators(F20, {{0, 0}}), std::domain_error);
}

TEST_CASE("prime ideal constructors") {
    CHECK(prime_ideal_above(F20, 2) == make_ideal(F20, 2, 1, 1));
    CHECK(prime_ideal_above(F20, 13) == integer_ideal(F20, 13));
    CHECK(prime_ideal_above(F20, 23, 15) == make_ideal(F20, 23, 15, 1));
    // the two split primes above 23 come from the two roots {8, 15}
    CHECK(prime_ideal_above(F20, 23) == make_ideal(F20, 23, 8, 1));
    CHECK_THROWS_AS(prime_ideal_above(F20, 23, 7), std::domain_error);
    CHECK_THROWS_AS(prime_ideal_above(F20, 13, 1), std::domain_error);
}

TEST_CASE("products: p1^2 = 2 O_K and the modulus of the worked example") {
    IdealHNF p1 = prime_ideal_above(F20, 2);
    CHECK(ideal_multiply(p1, p1) == integer_ideal(F20, 2));

    IdealHNF m = ideal_multiply(ideal_multiply(p1, prime_ideal_above(F20, 13)),
                                prime_ideal_above(F20, 23, 15));
    CHECK(least_positive_integer(m) == 598);
    CHECK(m.norm() == 2 * 169 * 23);

    // identity
    CHECK(ideal_multiply(m, whole_ring(F20)) == m);
}

TEST_CASE("norm multiplicativity on a 200-pair corpus") {
    auto corpus = ideals_up_to_norm(F20, 40);
    size_t pairs = 0;
    for (size_t i = 0; i < corpus.size() && pairs < 200; ++i)
        for (size_t j = i; j < corpus.size() && pairs < 200; ++j, ++pairs) {
            IdealHNF prod = ideal_multiply(corpus[i], corpus[j]);
            CHECK(prod.norm() == corpus[i].norm() * corpus[j].norm());
        }
    CHECK(pairs == 200);
}

TEST_CASE("every HNF in the corpus satisfies the divisibility invariants") {
    for (const FieldInvariants& F : {F20, F15, F7}) {
        for (const IdealHNF& I : ideals_up_to_norm(F, 60)) {
            CHECK(I.a % I.ctil == 0);
            CHECK(I.b % I.ctil == 0);
            CHECK(I.norm() % I.a == 0);
            CHECK((I.a * I.a) % I.norm() == 0);
            CHECK_NOTHROW(make_ideal(F, I.a, I.b, I.ctil));
        }
    }
}

TEST_CASE("coprimality with rational integers") {
    CHECK(is_coprime_to_integer(principal_ideal(F20, 1, 1), 13));
    CHECK_FALSE(is_coprime_to_integer(prime_ideal_above(F20, 2), 2));
    // principal (s tau + t) coprime to 13 iff gcd(norm_form) = 1 — exhaustive
    for (long long s = 0; s < 13; ++s)
        for (long long t = 0; t < 13; ++t) {
            if (s == 0 && t == 0) continue;
            bool lhs = is_coprime_to_integer(principal_ideal(F20, s, t), 13);
            bool rhs = std::gcd(norm_form(F20, s, t), 13ll) == 1;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("annihilators of simple torsion points") {
    CHECK(annihilator(F20, make_torsion_point(0, 1, 13)) == integer_ideal(F20, 13));
    // normalization first: 2/4 = 1/2
    CHECK(annihilator(F20, make_torsion_point(0, 2, 4)) == integer_ideal(F20, 2));
    CHECK(annihilator(F20, make_torsion_point(1, 1, 2)) == prime_ideal_above(F20, 2));
    CHECK_THROWS_AS(make_torsion_point(0, 4, 4), std::domain_error);
    CHECK_THROWS_AS(make_torsion_point(3, 3, 3), std::domain_error);
}

TEST_CASE("find_omega on the worked ideals") {
    IdealHNF p1 = prime_ideal_above(F20, 2);
    TorsionPoint w = find_omega(F20, p1);
    CHECK(w.a == 1);
    CHECK(w.b == 1);
    CHECK(w.D == 2);

    CHECK(find_omega(F20, integer_ideal(F20, 7)).a == 0);
    CHECK(find_omega(F20, integer_ideal(F20, 7)).b == 1);
    CHECK(find_omega(F20, integer_ideal(F20, 7)).D == 7);

    IdealHNF m = ideal_multiply(ideal_multiply(p1, prime_ideal_above(F20, 13)),
                                prime_ideal_above(F20, 23, 15));
    TorsionPoint wm = find_omega(F20, m);
    CHECK(wm.D == 598);
    CHECK(annihilator(F20, wm) == m);
}

// independent oracle: annihilator by brute-force residue scan
static IdealHNF annihilator_bruteforce(const FieldInvariants& F, const TorsionPoint& w) {
    std::vector<std::pair<long long, long long>> members;
    for (long long s = 0; s < w.D; ++s)
        for (long long t = 0; t < w.D; ++t) {
            long long u = s * w.b + t * w.a - s * w.a * F.b;  // tau coefficient * D
            long long v = t * w.b - s * w.a * F.c;            // integer part * D
            if (u % w.D == 0 && v % w.D == 0) members.emplace_back(s, t);
        }
    return ideal_from_generators(F, members, {w.D});
}

TEST_CASE("annihilator agrees with the brute-force residue scan") {
    IdealHNF p1 = prime_ideal_above(F20, 2);
    IdealHNF m = ideal_multiply(ideal_multiply(p1, prime_ideal_above(F20, 13)),
                                prime_ideal_above(F20, 23, 15));
    TorsionPoint wm = find_omega(F20, m);
    CHECK(annihilator_bruteforce(F20, wm) == m);

    for (const IdealHNF& I : ideals_up_to_norm(F15, 30)) {
        if (I.is_whole_ring()) continue;
        TorsionPoint w = find_omega(F15, I);
        CHECK(annihilator_bruteforce(F15, w) == annihilator(F15, w));
    }
}

TEST_CASE("annihilator(find_omega(I)) = I for every ideal of norm <= 600") {
    for (const FieldInvariants& F : {F7, F15, F20}) {
        for (const IdealHNF& I : ideals_up_to_norm(F, 600)) {
            if (I.is_whole_ring()) continue;
            TorsionPoint w = find_omega(F, I);
            CHECK(annihilator(F, w) == I);
        }
    }
}

TEST_CASE("form/ideal correspondence round-trips") {
    for (const FieldInvariants& F : {F7, F15, F20}) {
        for (const QuadForm& Q : enumerate_reduced(F.d)) {
            IdealHNF I = ideal_of_form(F, Q);
            CHECK(I.norm() == Q.a);
            CHECK(form_of_ideal(F, I) == Q);
        }
    }
}
