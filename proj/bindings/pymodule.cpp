// Python surface over the core: field data, bounds, and the main evaluators.
// Values cross the boundary as machine doubles/complexes; the high-precision
// decimal string is available where rounding matters (class polynomials, raw
// bound).

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmray/bounds.hpp"
#include "cmray/classfield.hpp"
#include "cmray/ideals.hpp"
#include "cmray/modfun.hpp"

#include <complex>

namespace py = pybind11;
using namespace cmray;

namespace {

std::complex<double> to_py(const Cplx& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

py::int_ big_to_int(const BigInt& k) {
    std::string s = k.str();
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

Cplx from_py(std::complex<double> z) { return Cplx{Real(z.real()), Real(z.imag())}; }

} // namespace

PYBIND11_MODULE(_cmray, m) {
    m.doc() = "quadratic field class groups, modular units, and CM curve x-coordinates";

    py::register_exception<precision_error>(m, "PrecisionError", PyExc_ArithmeticError);

    m.def("class_number", [](long long d) { return field_invariants(d).h; }, py::arg("d"),
          "class number of the field with fundamental discriminant d");

    m.def(
        "reduced_forms",
        [](long long d) {
            std::vector<std::tuple<long long, long long, long long>> out;
            for (const QuadForm& f : enumerate_reduced(d)) out.emplace_back(f.a, f.b, f.c);
            return out;
        },
        py::arg("d"), "reduced binary quadratic forms (a, b, c) of discriminant d");

    m.def(
        "classify_prime",
        [](long long d, long long p) {
            return std::string(split_name(classify_prime(field_invariants(d), p)));
        },
        py::arg("d"), py::arg("p"), "'ramified', 'inert', or 'split'");

    m.def(
        "hilbert_class_poly",
        [](long long d, int digits) {
            EvalContext ctx{digits};
            py::list out;
            for (const BigInt& k : hilbert_class_poly(d, ctx)) out.append(big_to_int(k));
            return out;
        },
        py::arg("d"), py::arg("digits") = 30,
        "integer coefficients of the Hilbert class polynomial, degree first");

    m.def(
        "n_min_bound",
        [](long long d, long long Nm) {
            BoundReport r = n_min_bound(field_invariants(d), Nm);
            py::dict out;
            out["d"] = r.d;
            out["N_m"] = r.Nm;
            out["raw"] = r.raw_bound.convert_to<double>();
            out["raw_str"] = real_to_string(r.raw_bound, 30);
            out["n_min"] = r.n_min;
            out["theorem"] = theorem_name(r.theorem);
            return out;
        },
        py::arg("d"), py::arg("Nm"),
        "exponent lower bound for a modulus with least contained integer Nm");

    m.def(
        "j",
        [](std::complex<double> tau, int digits) {
            EvalContext ctx{digits};
            return to_py(j_value(from_py(tau), ctx));
        },
        py::arg("tau"), py::arg("digits") = 30, "modular j at tau (Im tau > 0)");

    m.def(
        "j_surd",
        [](long long d, int digits) {
            EvalContext ctx{digits};
            return to_py(j_value(surd_value(field_invariants(d).tau(), ctx), ctx));
        },
        py::arg("d"), py::arg("digits") = 30, "j(tau_K) for the field of discriminant d");

    m.def(
        "siegel",
        [](long long p1, long long q1, long long p2, long long q2, std::complex<double> tau,
           int digits) {
            EvalContext ctx{digits};
            return to_py(siegel_value(SiegelIndex(Rational(p1, q1), Rational(p2, q2)),
                                      from_py(tau), ctx));
        },
        py::arg("p1"), py::arg("q1"), py::arg("p2"), py::arg("q2"), py::arg("tau"),
        py::arg("digits") = 30, "Siegel unit g_{(p1/q1, p2/q2)}(tau)");

    m.def(
        "fricke",
        [](long long p1, long long q1, long long p2, long long q2, std::complex<double> tau,
           int digits) {
            EvalContext ctx{digits};
            return to_py(fricke_value(SiegelIndex(Rational(p1, q1), Rational(p2, q2)),
                                      from_py(tau), ctx));
        },
        py::arg("p1"), py::arg("q1"), py::arg("p2"), py::arg("q2"), py::arg("tau"),
        py::arg("digits") = 30, "Fricke function f_{(p1/q1, p2/q2)}(tau)");

    m.def(
        "weber_x",
        [](long long d, long long n, long long a, long long b, long long D, int digits) {
            EvalContext ctx{digits};
            return to_py(weber_x(field_invariants(d), n, make_torsion_point(a, b, D), ctx));
        },
        py::arg("d"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("D"),
        py::arg("digits") = 30, "x-coordinate value x_{K,n}((a tau_K + b)/D)");

    m.def(
        "ray_class_degree",
        [](long long d, long long N) { return ray_class_degree(field_invariants(d), N); },
        py::arg("d"), py::arg("N"), "[K_(N) : H_K] by residue counting");

    m.def(
        "conjugates",
        [](long long d, long long N, long long n, int digits) {
            EvalContext ctx{digits};
            std::vector<std::complex<double>> out;
            for (const Cplx& x : conjugates_over_HK(field_invariants(d), N, n, ctx))
                out.push_back(to_py(x));
            return out;
        },
        py::arg("d"), py::arg("N"), py::arg("n") = 0, py::arg("digits") = 30,
        "conjugate x-values of x_{K,n} over H_K at level N");
}
