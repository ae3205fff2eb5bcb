#pragma once

// Small exact rational used for Siegel/Fricke indices and torsion coordinates.
// Denominators in practice stay below a few thousand; int64 is ample.

#include "cmray/numeric.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cmray {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }
    /* implicit */ Rational(long long n) : num(n), den(1) {}

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_integer() const { return den == 1; }

    // representative in [0,1)
    Rational mod1() const {
        long long r = num % den;
        if (r < 0) r += den;
        return Rational(r, den);
    }

    Real to_real() const { return Real(num) / Real(den); }
    double to_double() const { return double(num) / double(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator*(long long s, const Rational& a) {
        return Rational(s * a.num, a.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
};

} // namespace cmray
