// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "frobvir/errors.hpp"
#include "frobvir/euler_span.hpp"
#include "frobvir/foundations.hpp"
#include "frobvir/genus1.hpp"
#include "frobvir/models.hpp"
#include "frobvir/suite.hpp"

using namespace frobvir;

namespace {

const std::vector<std::string> kBuiltins{"point", "cp1", "cp2", "curve-even", "k3-full", "k3-sublocus",
                                         "M2",    "M3",  "M4",  "M5",         "M6"};

// Collects failure reasons for one criterion.
struct Criterion {
    std::vector<std::string> problems;
    std::vector<std::string> facts;
    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

TruncatedSeries power(const TruncatedSeries& x, int k, const Frobenius& fr) {
    TruncatedSeries r = fr.constant(1);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

bool same(const TruncatedSeries& a, const TruncatedSeries& b) { return equal_up_to_common_order(a, b); }

bool same(const VectorField& a, const VectorField& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same(a[i], b[i])) return false;
    return true;
}

TruncatedSeries displacement(const Frobenius& fr, std::size_t alpha) {
    return fr.coordinate(alpha) - fr.constant(fr.model().base_point[alpha]);
}

void foundations(Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    const std::set<std::string> identities{"wdvv", "string", "quantum-product", "quasi-homogeneity",
                                           "euler-coefficients", "derivative-identities"};
    for (const auto& name : kBuiltins) {
        ModelSpec spec = builtin(name);
        auto r = run_suite(spec, Suite::Foundations);
        c.require(r.unexpected() == 0, name + ": unexpected foundations outcome");
        for (const auto& check : r.checks) {
            const bool bracket = check.name.rfind("euler-bracket", 0) == 0;
            if (identities.count(check.name) || bracket)
                c.require(check.status == Status::Pass, name + ": " + check.name + " is " + to_string(check.status));
        }
        // All ordered pairs, including those the suite derives by antisymmetry.
        Frobenius fr(spec);
        for (int k = 0; k <= 3; ++k)
            for (int m = 0; m <= 3; ++m)
                c.require(check_euler_bracket(fr, k, m).status == Status::Pass,
                          name + ": bracket (" + std::to_string(k) + "," + std::to_string(m) + ")");
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(seconds < 60, "took " + std::to_string(seconds) + " s");
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << seconds << " s for " << kBuiltins.size() << " models";
    c.facts.push_back(s.str());
}

void euler_relations(Criterion& c) {
    {
        Frobenius fr(builtin("curve-even"));
        auto s = minimal_euler_relation(fr);
        const auto t1 = fr.coordinate(0);
        c.require(s.n == 1 && same(s.f[0], fr.constant(0) - t1 * t1) && same(s.f[1], 2 * t1),
                  "curve-even relation");
    }
    {
        Frobenius fr(builtin("M4"));
        auto s = minimal_euler_relation(fr);
        const auto t0 = fr.coordinate(0);
        c.require(s.n == 2 && same(s.f[0], power(t0, 3, fr)) && same(s.f[1], -3 * power(t0, 2, fr)) &&
                      same(s.f[2], 3 * t0),
                  "M4 relation");
        const auto z0 = (3 * power(t0, 2, fr)) * fr.euler_power(0) - (6 * t0) * fr.euler() +
                        Rational(3) * fr.euler_power(2);
        c.require(same(Z_field(fr, s, 0), z0), "M4 Z0");
    }
    {
        Frobenius fr(builtin("M6"));
        auto s = minimal_euler_relation(fr);
        const auto t0 = fr.coordinate(0);
        c.require(s.n == 3 && same(s.f[0], -1 * power(t0, 4, fr)) && same(s.f[1], 4 * power(t0, 3, fr)) &&
                      same(s.f[2], -6 * power(t0, 2, fr)) && same(s.f[3], 4 * t0),
                  "M6 relation");
        const auto z0 = (-4 * power(t0, 3, fr)) * fr.euler_power(0) + (12 * power(t0, 2, fr)) * fr.euler() -
                        (12 * t0) * fr.euler_power(2) + Rational(4) * fr.euler_power(3);
        c.require(same(Z_field(fr, s, 0), z0), "M6 Z0");
    }
}

void phi_family(Criterion& c) {
    {
        Frobenius fr(builtin("k3-full"));
        c.require(Genus1(fr).phi(2).is_zero(), "phi_2(k3-full) nonzero");
    }
    {
        Frobenius fr(builtin("point"));
        c.require(Genus1(fr).phi(2).is_zero(), "phi_2(point) nonzero");
    }
    {
        Frobenius fr(builtin("curve-even"));
        c.require(same(Genus1(fr).phi(2), rational(-1, 6) * displacement(fr, 0)), "phi_2(curve-even)");
    }
    for (const auto& name : kBuiltins) {
        Frobenius fr(builtin(name));
        Genus1 g(fr);
        for (int k = 2; k <= 5; ++k)
            c.require(check_phi_equivalence(g, k).status == Status::Pass,
                      name + ": phi_" + std::to_string(k) + " closed vs recursive");
    }
}

// Pairs (k, m), 0 <= k, m <= 4, k != m, whose phi-Virasoro residual is nonzero.
std::vector<std::pair<int, int>> phi_virasoro_failures(const Genus1& g) {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k <= 4; ++k)
        for (int m = 0; m <= 4; ++m)
            if (k != m && check_phi_virasoro(g, k, m).status != Status::Pass) out.emplace_back(k, m);
    return out;
}

void phi_virasoro_and_trace(Criterion& c) {
    for (const char* name : {"point", "cp1", "cp2", "k3-full", "M2", "M3", "M4", "M5", "M6"}) {
        Frobenius fr(builtin(name));
        Genus1 g(fr);
        c.require(phi_virasoro_failures(g).empty(), std::string(name) + ": phi-Virasoro residual");
    }
    std::vector<ModelSpec> controls{builtin("curve-even", std::nullopt, 1), builtin("curve-even", std::nullopt, 2),
                                    builtin("curve-even", std::nullopt, 3), builtin("k3-sublocus")};
    for (const auto& spec : controls) {
        Frobenius fr(spec);
        Genus1 g(fr);
        auto failures = phi_virasoro_failures(g);
        c.require(!failures.empty(), spec.name + ": no phi-Virasoro failure");
        for (auto [k, m] : failures)
            c.require(k == 0 || m == 0, spec.name + ": failure outside the E^0 cases");
        c.require(check_borisov(fr).status == Status::Fail, spec.name + ": trace identity passed");
    }
    for (const char* name : {"cp1", "k3-full"}) {
        ModelSpec spec = builtin(name);
        const auto b = b_weights(spec);
        Rational lhs = 0;
        for (const auto& x : b) lhs += x * (1 - x) / 2;
        const Rational b1 = b[0];  // weight of the unit class
        lhs -= (b1 + 1) * spec.euler_char / 12;
        const Rational rhs = -spec.c1_cd1 / 12;
        c.require(lhs == rhs && borisov_residual(spec) == 0, std::string(name) + ": trace identity");
        Frobenius fr(spec);
        c.require(check_borisov(fr).status == Status::Pass, std::string(name) + ": trace identity check");
        c.facts.push_back(std::string(name) + " " + to_string(lhs) + " = " + to_string(rhs));
    }
}

void genus1_verdicts(Criterion& c) {
    for (const char* name : {"point", "cp1", "k3-full"}) {
        Frobenius fr(builtin(name));
        c.require(genus1_verdict(Genus1(fr)).status == Status::Pass, std::string(name) + ": verdict");
    }
    {
        Frobenius fr(builtin("cp1"));
        Genus1 g(fr);
        const auto t = rational(-1, 6) * displacement(fr, 0);
        c.require(same(g.phi(2), t) && same(fr.corr1(fr.euler_power(2)), t) && g.h(2).is_zero(), "cp1 h_2");
        auto getzler = check_getzler(g);
        c.require(getzler.status == Status::Pass && getzler.order >= 6,
                  "cp1 Getzler at order " + std::to_string(getzler.order));
        c.facts.push_back("Getzler order " + std::to_string(getzler.order));
        for (int m = 2; m <= 5; ++m)
            c.require(check_g0g1(g, m).status == Status::Pass, "cp1 g0g1 m=" + std::to_string(m));
        const auto lhs = rational(1, 2) * fr.apply(fr.euler_power(0), fr.corr1(fr.euler_power(2)));
        const auto rhs = fr.corr1(fr.euler());
        c.require(same(lhs, fr.constant(rational(-1, 12))) && same(rhs, fr.constant(rational(-1, 12))),
                  "cp1 m=2 sides");
    }
    for (int genus = 1; genus <= 3; ++genus) {
        ModelSpec spec = builtin("curve-even", std::nullopt, genus);
        Frobenius fr(spec);
        auto v = genus1_verdict(Genus1(fr));
        const bool witness = v.witness && v.witness->monomial == "t1" && v.witness->coefficient == rational(genus, 6);
        c.require(v.status == Status::Fail && witness, spec.name + ": verdict witness");
        apply_expectation(spec, v);
        c.require(v.status == Status::ExpectedFail && !v.unexpected, spec.name + ": verdict not EXPECTED-FAIL");
    }
}

void wdvv_solver(Criterion& c) {
    auto sol = solve_wdvv_potential(cp2_template(4));
    const std::vector<Rational> expect{1, 1, 12, 620};
    c.require(sol.coefficients == expect, "plane curve counts");
    c.facts.push_back("re-verified at order " + std::to_string(sol.verified_order));
    const int order = 24;
    ModelSpec base = builtin("cp2", order);
    c.require(check_wdvv(Frobenius(base)).status == Status::Pass, "unperturbed potential");
    for (int d = 1; d <= 4; ++d) {
        auto n = expect;
        n[d - 1] += 1;
        ModelSpec spec = base;
        spec.f0 = cp2_potential(n, order);
        auto r = check_wdvv(Frobenius(spec));
        c.require(r.status == Status::Fail && r.witness && r.witness->coefficient != 0,
                  "perturbed N_" + std::to_string(d) + " not detected");
    }
}

void classifier(Criterion& c) {
    const std::vector<std::pair<std::string, Verdict>> expect{
        {"cp1", Verdict::SemisimpleType}, {"cp2", Verdict::SemisimpleType}, {"M2", Verdict::NonDegenerate},
        {"M3", Verdict::NonDegenerate},   {"M4", Verdict::Degenerate},      {"M5", Verdict::Degenerate},
        {"M6", Verdict::Degenerate}};
    for (const auto& [name, verdict] : expect) {
        auto cl = classify(Frobenius(builtin(name)));
        c.require(cl.verdict == verdict, name + ": " + to_string(cl.verdict));
        if (name == "M2" || name == "M3") c.require(cl.n + 1 <= 2, name + ": span above 2");
    }
    std::size_t compared = 0;
    for (const auto& name : kBuiltins) {
        Frobenius fr(builtin(name));
        auto cl = classify(fr);
        auto ev = resultant_criterion(fr, minimal_euler_relation(fr));
        c.require(ev.agree, name + ": det A differs from the resultant");
        if (cl.resultant_agrees) c.require(*cl.resultant_agrees, name + ": classifier saw a mismatch");
        ++compared;
    }
    c.facts.push_back("resultant = det A on " + std::to_string(compared) + " models");
}

void predictor(Criterion& c) {
    ModelSpec spec = builtin("cp2");
    Frobenius fr(spec);
    auto p = predict_genus1(Genus1(fr));
    c.require(p.unique && p.f1 && p.report.status == Status::Pass, "cp2 gradient not unique or not integrable");
    if (!p.f1) return;
    Monomial t2(fr.table().size());
    t2.set_exponent(1, 1);
    const Rational linear = p.f1->coefficient(t2);
    c.require(linear == rational(-1, 8), "linear coefficient " + to_string(linear));
    // <<E>>_1 = -c1_cd1/24 at the origin, where E = 3 gamma_2.
    const Rational euler_value = fr.apply(fr.euler(), *p.f1).constant_term();
    c.require(euler_value == -spec.c1_cd1 / 24 && euler_value / 3 == linear, "string cross-check");
    c.facts.push_back("t2 coefficient " + to_string(linear));

    spec.f1 = *p.f1;
    auto r = run_suite(spec, Suite::Genus1);
    for (const auto& check : r.checks) {
        const bool required = check.name == "genus1-verdict" || check.name == "getzler" ||
                              check.name.rfind("g0g1", 0) == 0 || check.name == "h-representation";
        if (required) c.require(check.status == Status::Pass, "installed: " + check.name);
    }
    c.require(r.unexpected() == 0, "installed: unexpected outcome");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
        {"foundations suite on every builtin", foundations},
        {"golden Euler relations", euler_relations},
        {"phi family", phi_family},
        {"phi-Virasoro and the trace identity", phi_virasoro_and_trace},
        {"genus-1 verdict, Getzler relation and Euler-power identity", genus1_verdicts},
        {"WDVV solver", wdvv_solver},
        {"classifier", classifier},
        {"genus-1 predictor round trip", predictor},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("error: ") + e.what());
        }
        const bool ok = c.problems.empty();
        if (!ok) ++failed;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
        const auto& detail = ok ? c.facts : c.problems;
        for (std::size_t j = 0; j < detail.size(); ++j) std::cout << (j ? "; " : " (") << detail[j];
        if (!detail.empty()) std::cout << ")";
        std::cout << "\n";
    }
    return failed == 0 ? 0 : 1;
}
