// Command-line surface: field data, n_min bounds, function evaluation,
// certificate runs, and the worked three-prime example.
//
// Exit codes: 0 success / certificate pass, 1 certificate failure,
// 2 usage, domain, or precision errors.

#include "CLI11.hpp"
#include "json.hpp"

#include "cmray/bounds.hpp"
#include "cmray/classfield.hpp"
#include "cmray/ideals.hpp"
#include "cmray/modfun.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

using namespace cmray;
using nlohmann::json;

namespace {

long long to_ll(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

Real real_of(const std::string& s) {
    try {
        return Real(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
}

// "a+bi", "bi", "i", "a" — a and b decimal, exponents allowed.
Cplx parse_complex(std::string s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    if (t.find('i') == std::string::npos) return Cplx(real_of(t));
    if (t.back() != 'i') throw std::invalid_argument("complex literal must end in i: '" + s + "'");
    std::string body = t.substr(0, t.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    std::string re = split == std::string::npos ? "0" : body.substr(0, split);
    std::string imc = split == std::string::npos ? body : body.substr(split);
    if (imc.empty() || imc == "+") imc = "1";
    if (imc == "-") imc = "-1";
    return Cplx{real_of(re), real_of(imc)};
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(to_ll(s), 1);
    return Rational(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
}

// "p/q,r/s" — a Siegel/Fricke index.
std::pair<Rational, Rational> parse_index(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("index must be 'p/q,r/s': '" + s + "'");
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

// "a,b/D" means (a tau_K + b)/D.
TorsionPoint parse_omega(const std::string& s) {
    auto comma = s.find(',');
    auto slash = s.find('/', comma == std::string::npos ? 0 : comma);
    if (comma == std::string::npos || slash == std::string::npos || slash < comma)
        throw std::invalid_argument("omega must be 'a,b/D': '" + s + "'");
    long long a = to_ll(s.substr(0, comma));
    long long b = to_ll(s.substr(comma + 1, slash - comma - 1));
    long long D = to_ll(s.substr(slash + 1));
    if (D <= 0) throw std::invalid_argument("omega denominator must be positive");
    return make_torsion_point(((a % D) + D) % D, ((b % D) + D) % D, D);
}

// "p:2;p:13;p:23:15" — product of primes above the listed p, optional root.
IdealHNF parse_ideal_spec(const FieldInvariants& F, const std::string& spec) {
    IdealHNF acc = whole_ring(F);
    std::size_t pos = 0;
    bool any = false;
    while (pos <= spec.size()) {
        std::size_t end = spec.find(';', pos);
        std::string tok = spec.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? spec.size() + 1 : end + 1;
        if (tok.empty()) continue;
        if (tok.rfind("p:", 0) != 0)
            throw std::invalid_argument("ideal factor must look like 'p:2' or 'p:23:15': '" + tok + "'");
        std::string rest = tok.substr(2);
        auto colon = rest.find(':');
        std::optional<long long> root;
        long long p;
        if (colon == std::string::npos) {
            p = to_ll(rest);
        } else {
            p = to_ll(rest.substr(0, colon));
            root = to_ll(rest.substr(colon + 1));
        }
        acc = ideal_multiply(acc, prime_ideal_above(F, p, root));
        any = true;
    }
    if (!any) throw std::invalid_argument("empty ideal spec");
    return acc;
}

std::string rstr(const Real& x, int digits) { return real_to_string(x, digits); }

json cplx_json(const Cplx& z, int digits) {
    return json{{"re", rstr(z.re, digits)}, {"im", rstr(z.im, digits)}, {"err", rstr(z.err, 3)}};
}

void print_value(const Cplx& z, int digits) {
    std::printf("re   %s\n", rstr(z.re, digits).c_str());
    std::printf("im   %s\n", rstr(z.im, digits).c_str());
    std::printf("err  <= %s\n", rstr(z.err, 3).c_str());
}

void emit(const json& envelope) { std::printf("%s\n", envelope.dump(2).c_str()); }

json bound_json(const BoundReport& r, int digits) {
    return json{{"d", r.d},
                {"N_m", r.Nm},
                {"raw_bound", rstr(r.raw_bound, digits)},
                {"n_min", r.n_min},
                {"theorem", theorem_name(r.theorem)},
                {"numerator", rstr(r.numerator, digits)},
                {"denominator", rstr(r.denominator, digits)},
                {"log_term", rstr(r.log_term, digits)},
                {"all_n_at_least_n_min", r.xy_all_n},
                {"unverified_containment", r.unverified_containment}};
}

void print_bound(const BoundReport& r, int digits) {
    std::printf("d            %lld\n", r.d);
    std::printf("N_m          %lld\n", r.Nm);
    std::printf("raw bound    %s\n", rstr(r.raw_bound, digits).c_str());
    std::printf("n_min        %lld\n", r.n_min);
    std::printf("theorem      %s\n", theorem_name(r.theorem));
    if (r.unverified_containment)
        std::printf("note         modulus is not N*O_K; containment of the integer level unverified\n");
}

json cert_json(const Certificate& c) {
    return json{{"claim", c.claim},
                {"description", c.sample_description},
                {"pass", c.pass},
                {"worst_margin", std::to_string(c.worst_margin)},
                {"samples_checked", c.samples_checked},
                {"seed", std::to_string(c.seed)}};
}

void print_cert(const Certificate& c) {
    std::printf("claim         %s\n", c.claim.c_str());
    std::printf("description   %s\n", c.sample_description.c_str());
    std::printf("seed          %llu\n", static_cast<unsigned long long>(c.seed));
    std::printf("checks        %lld\n", c.samples_checked);
    std::printf("worst margin  %g\n", c.worst_margin);
    std::printf("result        %s\n", c.pass ? "PASS" : "FAIL");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"class-field generator toolkit: quadratic field data, modular function "
                 "values, n_min bounds, and numeric certificates"};
    app.require_subcommand(1);

    int digits = 30;
    bool as_json = false;
    app.add_option("--digits", digits, "working decimal digits (default 30)")
        ->envname("CMRAY_DIGITS")
        ->check(CLI::Range(15, 5000));
    app.add_flag("--json", as_json, "emit a machine-readable JSON envelope");

    // field
    auto* cmd_field = app.add_subcommand("field", "invariants, reduced forms, prime splitting");
    cmd_field->fallthrough();
    long long field_d = 0;
    bool field_poly = false;
    cmd_field->add_option("--d", field_d, "fundamental discriminant (< 0)")->required();
    cmd_field->add_flag("--class-poly", field_poly, "also print the Hilbert class polynomial");

    // bound
    auto* cmd_bound = app.add_subcommand("bound", "n_min lower bound for a modulus");
    cmd_bound->fallthrough();
    long long bound_d = 0, bound_nm = 0;
    std::string bound_ideal;
    bool modulus_integer = false;
    cmd_bound->add_option("--d", bound_d, "fundamental discriminant (< 0)")->required();
    cmd_bound->add_option("--nm", bound_nm, "least positive integer in the modulus");
    cmd_bound->add_option("--ideal", bound_ideal, "modulus as prime factors, e.g. 'p:2;p:13;p:23:15'");
    cmd_bound->add_flag("--modulus-integer", modulus_integer,
                        "treat --nm as the full integer modulus N*O_K");

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a modular or curve function");
    cmd_eval->fallthrough();
    std::string kind, tau_str, v_str, omega_str;
    long long tau_surd = 0, eval_d = 0, eval_n = 0;
    cmd_eval->add_option("kind", kind, "one of j, J, C, siegel, fricke, weber-x, y2")
        ->required()
        ->check(CLI::IsMember({"j", "J", "C", "siegel", "fricke", "weber-x", "y2"}));
    cmd_eval->add_option("--tau", tau_str, "upper-half-plane point, e.g. '2i' or '0.5+1.2i'");
    auto* surd_opt = cmd_eval->add_option("--tau-surd", tau_surd, "use tau_K of this discriminant");
    cmd_eval->add_option("--v", v_str, "function index 'p/q,r/s' (siegel/fricke)");
    cmd_eval->add_option("--omega", omega_str, "torsion point 'a,b/D' meaning (a tau_K + b)/D");
    cmd_eval->add_option("--d", eval_d, "field discriminant (weber-x/y2)");
    cmd_eval->add_option("--n", eval_n, "curve family exponent (weber-x/y2, default 0)");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a numeric certificate");
    cmd_verify->fallthrough();
    std::string claim, out_path;
    long long from_d = -300, to_d = -15, trials = 0, level = 0, points = 5;
    long long verify_d = -15, n_max = 6;
    unsigned long long seed = kDefaultCertifySeed;
    int workers = 1;
    cmd_verify
        ->add_option("claim", claim,
                     "one of j-inequality, siegel-bounds, ffgg, normconstant, curve, hkc")
        ->required()
        ->check(CLI::IsMember(
            {"j-inequality", "siegel-bounds", "ffgg", "normconstant", "curve", "hkc"}));
    cmd_verify->add_option("--from", from_d, "scan start discriminant (default -300)");
    cmd_verify->add_option("--to", to_d, "scan end discriminant (default -15)");
    cmd_verify->add_option("--trials", trials, "sample count (per-claim default)");
    cmd_verify->add_option("--seed", seed, "sample seed (fixed default)");
    cmd_verify->add_option("--N", level, "index grid order / level");
    cmd_verify->add_option("--points", points, "sample points (normconstant, default 5)");
    cmd_verify->add_option("--workers", workers, "worker threads (default 1)")
        ->check(CLI::Range(1, 64));
    cmd_verify->add_option("--d", verify_d, "discriminant (hkc, default -15)");
    cmd_verify->add_option("--n-max", n_max, "largest exponent checked (hkc, default 6)");
    cmd_verify->add_option("--out", out_path, "write the certificate JSON to this file");

    // example paper
    auto* cmd_example = app.add_subcommand("example", "worked end-to-end examples");
    cmd_example->fallthrough();
    auto* cmd_paper = cmd_example->add_subcommand("paper", "the three-prime modulus over d = -20");
    cmd_paper->fallthrough();
    cmd_example->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        EvalContext ctx{digits};
        ctx.validate();
        PrecisionScope scope(ctx); // inputs parsed at working precision

        if (*cmd_field) {
            FieldInvariants F = field_invariants(field_d);
            auto forms = enumerate_reduced(field_d);
            json splitting;
            for (long long p : {2, 3, 5, 7, 11, 13})
                splitting[std::to_string(p)] = split_name(classify_prime(F, p));
            std::vector<BigInt> H;
            if (field_poly) {
                if (digits < 30)
                    std::fprintf(stderr,
                                 "warning: fewer than 30 digits requested; class polynomial "
                                 "rounding uses its own precision estimate\n");
                H = hilbert_class_poly(field_d, ctx);
            }
            if (as_json) {
                json jforms = json::array();
                for (const QuadForm& f : forms) jforms.push_back({f.a, f.b, f.c});
                json env{{"command", "field"},
                         {"digits", digits},
                         {"inputs", {{"d", field_d}}},
                         {"results",
                          {{"d", F.d},
                           {"b", F.b},
                           {"c", F.c},
                           {"h", F.h},
                           {"tau", F.tau().str()},
                           {"forms", jforms},
                           {"splitting", splitting}}}};
                if (field_poly) {
                    json coeffs = json::array();
                    for (const BigInt& k : H) coeffs.push_back(k.str());
                    env["results"]["class_poly"] = coeffs;
                }
                emit(env);
            } else {
                std::printf("d      %lld\n", F.d);
                std::printf("tau_K  %s\n", F.tau().str().c_str());
                std::printf("h      %lld\n", F.h);
                std::printf("forms  ");
                for (const QuadForm& f : forms)
                    std::printf("(%lld,%lld,%lld) ", f.a, f.b, f.c);
                std::printf("\n");
                for (long long p : {2, 3, 5, 7, 11, 13})
                    std::printf("p=%-2lld   %s\n", p, split_name(classify_prime(F, p)));
                if (field_poly) {
                    std::printf("H_d    ");
                    for (const BigInt& k : H) std::printf("%s ", k.str().c_str());
                    std::printf("\n");
                }
            }
            return 0;
        }

        if (*cmd_bound) {
            bool has_nm = cmd_bound->count("--nm") > 0;
            bool has_ideal = !bound_ideal.empty();
            if (has_nm == has_ideal)
                throw std::invalid_argument("give exactly one of --nm or --ideal");
            if (modulus_integer && !has_nm)
                throw std::invalid_argument("--modulus-integer requires --nm");
            FieldInvariants F = field_invariants(bound_d);
            BoundReport r;
            json inputs{{"d", bound_d}};
            if (has_ideal) {
                IdealHNF m = parse_ideal_spec(F, bound_ideal);
                r = generator_plan(F, m);
                inputs["ideal"] = bound_ideal;
                inputs["ideal_hnf"] = m.str();
            } else if (modulus_integer) {
                r = generator_plan(F, integer_ideal(F, bound_nm));
                inputs["nm"] = bound_nm;
                inputs["modulus_integer"] = true;
            } else {
                r = n_min_bound(F, bound_nm);
                inputs["nm"] = bound_nm;
            }
            if (as_json)
                emit(json{{"command", "bound"},
                          {"digits", digits},
                          {"inputs", inputs},
                          {"results", bound_json(r, digits)}});
            else
                print_bound(r, digits);
            return 0;
        }

        if (*cmd_eval) {
            bool has_tau = !tau_str.empty();
            bool has_surd = surd_opt->count() > 0;
            auto tau_point = [&]() -> Cplx {
                if (has_tau == has_surd)
                    throw std::invalid_argument("give exactly one of --tau or --tau-surd");
                if (has_tau) return parse_complex(tau_str);
                return surd_value(field_invariants(tau_surd).tau(), ctx);
            };

            Cplx value;
            json inputs{{"kind", kind}};
            if (has_tau) inputs["tau"] = tau_str;
            if (has_surd) inputs["tau_surd"] = tau_surd;

            if (kind == "j" || kind == "J" || kind == "C") {
                Cplx tau = tau_point();
                value = kind == "j"   ? j_value(tau, ctx)
                        : kind == "J" ? J_value(tau, ctx)
                                      : C_value(tau, ctx);
            } else if (kind == "siegel" || kind == "fricke") {
                if (v_str.empty()) throw std::invalid_argument("--v is required for " + kind);
                auto [v1, v2] = parse_index(v_str);
                SiegelIndex v(v1, v2);
                Cplx tau = tau_point();
                inputs["v"] = v.str();
                value = kind == "siegel" ? siegel_value(v, tau, ctx) : fricke_value(v, tau, ctx);
            } else { // weber-x / y2
                if (cmd_eval->count("--d") == 0)
                    throw std::invalid_argument("--d is required for " + kind);
                if (omega_str.empty()) throw std::invalid_argument("--omega is required for " + kind);
                FieldInvariants F = field_invariants(eval_d);
                TorsionPoint w = parse_omega(omega_str);
                inputs["d"] = eval_d;
                inputs["n"] = eval_n;
                inputs["omega"] = w.str();
                value = kind == "weber-x" ? weber_x(F, eval_n, w, ctx)
                                          : y_squared(F, eval_n, w, ctx);
            }

            if (as_json)
                emit(json{{"command", "eval"},
                          {"digits", digits},
                          {"inputs", inputs},
                          {"results", cplx_json(value, digits)}});
            else
                print_value(value, digits);
            return 0;
        }

        if (*cmd_verify) {
            Certificate c;
            if (claim == "j-inequality") {
                c = certify_j_inequality(from_d, to_d, ctx);
            } else if (claim == "siegel-bounds") {
                c = certify_siegel_bounds(level ? level : 50, trials ? trials : 10000, ctx,
                                          seed, workers);
            } else if (claim == "ffgg") {
                c = certify_ffgg(trials ? trials : 1000, ctx, seed, workers);
            } else if (claim == "normconstant") {
                c = certify_normconstant(level ? level : 2, points, ctx, seed);
            } else if (claim == "curve") {
                c = certify_curve_consistency(trials ? trials : 100, ctx, seed, workers);
            } else { // hkc
                c = certify_hkc_separation(verify_d, n_max, ctx);
            }
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw std::invalid_argument("cannot write " + out_path);
                out << cert_json(c).dump(2) << "\n";
            }
            if (as_json)
                emit(json{{"command", "verify"},
                          {"digits", digits},
                          {"inputs", {{"claim", claim}, {"seed", std::to_string(seed)}}},
                          {"results", cert_json(c)}});
            else
                print_cert(c);
            return c.pass ? 0 : 1;
        }

        if (*cmd_paper) {
            FieldInvariants F = field_invariants(-20);
            IdealHNF p1 = prime_ideal_above(F, 2);
            IdealHNF p2 = prime_ideal_above(F, 13);
            IdealHNF p3 = prime_ideal_above(F, 23);
            IdealHNF m = ideal_multiply(ideal_multiply(p1, p2), p3);
            BoundReport r = generator_plan(F, m);

            bool ok = m.least_positive_integer() == 598 &&
                      abs(r.raw_bound - Real("2.286282")) < Real("1e-4") && r.n_min == 3 &&
                      classify_prime(F, 2) == SplitType::Ramified &&
                      classify_prime(F, 13) == SplitType::Inert &&
                      classify_prime(F, 23) == SplitType::Split;

            if (as_json) {
                emit(json{{"command", "example"},
                          {"digits", digits},
                          {"inputs", {{"name", "paper"}}},
                          {"results",
                           {{"d", -20},
                            {"p1", p1.str()},
                            {"p2", p2.str()},
                            {"p3", p3.str()},
                            {"modulus", m.str()},
                            {"splitting",
                             {{"2", split_name(classify_prime(F, 2))},
                              {"13", split_name(classify_prime(F, 13))},
                              {"23", split_name(classify_prime(F, 23))}}},
                            {"bound", bound_json(r, digits)},
                            {"checkpoints_ok", ok}}}});
            } else {
                std::printf("field        d = -20, tau_K = %s, h = %lld\n", F.tau().str().c_str(),
                            F.h);
                std::printf("p1 above 2   %s  (%s)\n", p1.str().c_str(),
                            split_name(classify_prime(F, 2)));
                std::printf("p2 above 13  %s  (%s)\n", p2.str().c_str(),
                            split_name(classify_prime(F, 13)));
                std::printf("p3 above 23  %s  (%s)\n", p3.str().c_str(),
                            split_name(classify_prime(F, 23)));
                std::printf("modulus      %s\n", m.str().c_str());
                print_bound(r, digits);
                std::printf("applicable   x-coordinate route valid for every n >= %lld\n",
                            r.n_min);
                std::printf("checkpoints  N_m=598 %s | raw~2.286282 %s | n_min=3 %s | splitting %s\n",
                            m.least_positive_integer() == 598 ? "ok" : "MISMATCH",
                            abs(r.raw_bound - Real("2.286282")) < Real("1e-4") ? "ok" : "MISMATCH",
                            r.n_min == 3 ? "ok" : "MISMATCH", ok ? "ok" : "MISMATCH");
            }
            return ok ? 0 : 1;
        }
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const precision_error& e) {
        std::fprintf(stderr, "precision error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 2; // no subcommand matched (require_subcommand should prevent this)
}
