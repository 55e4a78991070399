#include <doctest.h>

#include "frobvir/euler_span.hpp"
#include "frobvir/models.hpp"

using namespace frobvir;

namespace {

bool field_equal(const VectorField& a, const VectorField& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal_up_to_common_order(a[i], b[i])) return false;
    return true;
}

// x^k. For the cohomology-ring models t0 is the coordinate of the unit, centred at 1.
TruncatedSeries pow(const TruncatedSeries& x, int k, const Frobenius& fr) {
    TruncatedSeries r = fr.constant(1);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

void check_relation(const EulerSpan& s, const std::vector<TruncatedSeries>& expect) {
    REQUIRE(s.f.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CAPTURE(i);
        CHECK(equal_up_to_common_order(s.f[i], expect[i]));
    }
}

}  // namespace

TEST_CASE("curve-even relation E^2 = -t1^2 E^0 + 2 t1 E") {
    Frobenius fr(builtin("curve-even"));
    auto s = minimal_euler_relation(fr);
    CHECK(s.n == 1);
    const auto t1 = fr.coordinate(0);
    check_relation(s, {fr.constant(0) - t1 * t1, 2 * t1});
}

TEST_CASE("M4 relation and Z0") {
    Frobenius fr(builtin("M4"));
    auto s = minimal_euler_relation(fr);
    CHECK(s.n == 2);
    const auto t0 = fr.coordinate(0);
    check_relation(s, {pow(t0, 3, fr), -3 * pow(t0, 2, fr), 3 * t0});
    const auto z0 = Z_field(fr, s, 0);
    const auto expect = (3 * pow(t0, 2, fr)) * fr.euler_power(0) - (6 * t0) * fr.euler() + Rational(3) * fr.euler_power(2);
    CHECK(field_equal(z0, expect));
    // Z_k = t0^k Z_0.
    CHECK(field_equal(Z_field(fr, s, 2), pow(t0, 2, fr) * z0));
}

TEST_CASE("M6 relation and Z0") {
    Frobenius fr(builtin("M6"));
    auto s = minimal_euler_relation(fr);
    CHECK(s.n == 3);
    const auto t0 = fr.coordinate(0);
    check_relation(s, {-1 * pow(t0, 4, fr), 4 * pow(t0, 3, fr), -6 * pow(t0, 2, fr), 4 * t0});
    const auto expect = (-4 * pow(t0, 3, fr)) * fr.euler_power(0) + (12 * pow(t0, 2, fr)) * fr.euler() -
                        (12 * t0) * fr.euler_power(2) + Rational(4) * fr.euler_power(3);
    CHECK(field_equal(Z_field(fr, s, 0), expect));
}

TEST_CASE("relation polynomial of M4 is (x - t0)^3") {
    Frobenius fr(builtin("M4"));
    auto s = minimal_euler_relation(fr);
    auto p = relation_polynomial(s);
    const auto t0 = fr.coordinate(0);
    REQUIRE(p.size() == 4);
    CHECK(equal_up_to_common_order(p[0], -1 * pow(t0, 3, fr)));
    CHECK(equal_up_to_common_order(p[1], 3 * pow(t0, 2, fr)));
    CHECK(equal_up_to_common_order(p[2], -3 * t0));
    CHECK(equal_up_to_common_order(p[3], fr.constant(1)));
    auto ev = resultant_criterion(fr, s);
    CHECK(ev.agree);
    CHECK_FALSE(ev.nonzero);
}

TEST_CASE("classification") {
    struct Case {
        const char* name;
        Verdict verdict;
    };
    for (auto c : {Case{"cp1", Verdict::SemisimpleType}, Case{"cp2", Verdict::SemisimpleType},
                   Case{"point", Verdict::SemisimpleType}, Case{"M2", Verdict::NonDegenerate},
                   Case{"M3", Verdict::NonDegenerate}, Case{"M4", Verdict::Degenerate},
                   Case{"M5", Verdict::Degenerate}, Case{"M6", Verdict::Degenerate},
                   Case{"k3-full", Verdict::Degenerate}}) {
        CAPTURE(c.name);
        Frobenius fr(builtin(c.name));
        auto cl = classify(fr);
        CHECK(cl.verdict == c.verdict);
        CHECK(cl.semisimple == (c.verdict == Verdict::SemisimpleType));
        if (cl.resultant_agrees) CHECK(*cl.resultant_agrees);
    }
}

TEST_CASE("cp1 resultant is nonzero and equals det A") {
    Frobenius fr(builtin("cp1"));
    auto s = minimal_euler_relation(fr);
    auto ev = resultant_criterion(fr, s);
    CHECK(ev.agree);
    CHECK(ev.nonzero);
    CHECK(ev.resultant == ev.det_a);
    auto sem = semisimplicity_check(fr, s);
    REQUIRE(sem.matches_relation);
    CHECK(*sem.matches_relation);
    CHECK(sem.square_free);
}

TEST_CASE("span identities on curve-even") {
    Frobenius fr(builtin("curve-even", std::nullopt, 0));
    Genus1 g(fr);
    auto s = minimal_euler_relation(fr);
    CHECK(check_f_recursion(fr, s).status == Status::Pass);
    CHECK(check_z_fields(fr, s).status == Status::Pass);
    CHECK(check_philinear(g, s).status == Status::Pass);
    CHECK(check_z_annihilates_h2(g, s).status == Status::Pass);
    Frobenius fr2(builtin("curve-even", std::nullopt, 2));
    Genus1 g2(fr2);
    auto s2 = minimal_euler_relation(fr2);
    CHECK(philinear_residual(g2, s2, 0).is_zero() == false);
}
