#include <doctest.h>

#include <algorithm>
#include <array>

#include "frobvir/errors.hpp"
#include "frobvir/genus1.hpp"
#include "frobvir/models.hpp"

using namespace frobvir;

namespace {

using Quad = std::array<const VectorField*, 4>;

// Sums f over all 24 orderings of the arguments.
template <class F>
TruncatedSeries sum_s4(const Frobenius& fr, const Quad& v, F f) {
    std::array<int, 4> p{0, 1, 2, 3};
    TruncatedSeries total = fr.constant(0);
    do {
        total += f(*v[p[0]], *v[p[1]], *v[p[2]], *v[p[3]]);
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

TruncatedSeries literal_G0(const Frobenius& fr, const Quad& v) {
    const std::size_t n = fr.size();
    return sum_s4(fr, v, [&](const VectorField& a, const VectorField& b, const VectorField& c, const VectorField& d) {
        TruncatedSeries s = fr.constant(0);
        for (std::size_t al = 0; al < n; ++al) {
            const auto lo_a = fr.gamma(al), up_a = fr.gamma_up(al);
            for (std::size_t be = 0; be < n; ++be) {
                const auto lo_b = fr.gamma(be), up_b = fr.gamma_up(be);
                s += rational(1, 6) * fr.corr0(a, b, c, up_a) * fr.corr0(lo_a, d, lo_b, up_b);
                s += rational(1, 24) * fr.corr0(a, b, c, d, up_a) * fr.corr0(lo_a, lo_b, up_b);
                s -= rational(1, 4) * fr.corr0(a, b, up_a, up_b) * fr.corr0(lo_a, lo_b, c, d);
            }
        }
        return s;
    });
}

TruncatedSeries literal_G1(const Frobenius& fr, const Quad& v) {
    const std::size_t n = fr.size();
    return sum_s4(fr, v, [&](const VectorField& a, const VectorField& b, const VectorField& c, const VectorField& d) {
        const auto ab = fr.product(a, b);
        TruncatedSeries s = 3 * fr.corr1(ab, fr.product(c, d)) - 4 * fr.corr1(fr.product(ab, c), d);
        for (std::size_t al = 0; al < n; ++al) {
            const auto lo = fr.gamma(al), up = fr.gamma_up(al);
            s -= fr.corr0(ab, c, d, up) * fr.corr1(lo);
            s += 2 * fr.corr0(a, b, c, up) * fr.corr1(fr.product(lo, d));
        }
        return s;
    });
}

TruncatedSeries literal_derivative_form(const Frobenius& fr, const Quad& v) {
    return sum_s4(fr, v, [&](const VectorField& a, const VectorField& b, const VectorField& c, const VectorField& d) {
        const auto ab = fr.product(a, b);
        return 3 * fr.apply(ab, fr.corr1(fr.product(c, d))) - 4 * fr.apply(d, fr.corr1(fr.product(ab, c))) -
               6 * fr.corr1(fr.product(fr.bracket(ab, c), d));
    });
}

// Agreement up to the common order, which must not collapse below `floor`.
void agree(const TruncatedSeries& got, const TruncatedSeries& oracle, int floor) {
    CHECK(std::min(got.valid_order(), oracle.valid_order()) >= floor);
    CHECK(equal_up_to_common_order(got, oracle));
}

std::vector<Quad> quadruples(const std::vector<VectorField>& fields) {
    std::vector<Quad> out;
    const std::size_t m = fields.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            for (std::size_t k = j; k < m; ++k)
                for (std::size_t l = k; l < m; ++l) out.push_back({&fields[i], &fields[j], &fields[k], &fields[l]});
    return out;
}

std::vector<VectorField> fields_of(const Frobenius& fr) {
    std::vector<VectorField> f;
    for (std::size_t a = 0; a < fr.size(); ++a) f.push_back(fr.gamma(a));
    f.push_back(fr.euler());
    return f;
}

ModelSpec with_predicted_f1(ModelSpec spec) {
    Frobenius fr(spec);
    Genus1 g(fr);
    auto p = predict_genus1(g);
    REQUIRE(p.unique);
    REQUIRE(p.f1);
    spec.f1 = *p.f1;
    return spec;
}

TruncatedSeries t(const Frobenius& fr, std::size_t alpha) { return fr.coordinate(alpha) - fr.constant(fr.model().base_point[alpha]); }

}  // namespace

TEST_CASE("G0, G1 and the derivative form match their S4 definitions") {
    for (auto spec : {builtin("cp1", 8), builtin("curve-even", 8, 2), with_predicted_f1(builtin("cp2", 9))}) {
        CAPTURE(spec.name);
        Frobenius fr(spec);
        Genus1 g(fr);
        auto fields = fields_of(fr);
        for (const auto& q : quadruples(fields)) {
            agree(g.G0(*q[0], *q[1], *q[2], *q[3]), literal_G0(fr, q), 1);
            agree(g.G1(*q[0], *q[1], *q[2], *q[3]), literal_G1(fr, q), 1);
            agree(g.G1_derivative_form(*q[0], *q[1], *q[2], *q[3]), literal_derivative_form(fr, q), 1);
        }
    }
}

TEST_CASE("Getzler relation on cp1, and its failure for a wrong genus-1 potential") {
    Frobenius fr(builtin("cp1"));
    Genus1 g(fr);
    auto report = check_getzler(g);
    CHECK(report.status == Status::Pass);
    CHECK(report.order >= 6);
    const auto g2 = fr.gamma(1);
    const auto& e = fr.euler();
    CHECK(equal_up_to_common_order(g.G0(g2, g2, e, e), fr.constant(0) - g.G1(g2, g2, e, e)));
    CHECK_FALSE(g.G0(g2, g2, e, e).is_zero());

    ModelSpec wrong = builtin("cp1");
    wrong.f1 = rational(-1, 12) * TruncatedSeries::variable(wrong.table(), "t2", wrong.order);
    Frobenius fw(wrong);
    Genus1 gw(fw);
    auto bad = check_getzler(gw);
    CHECK(bad.status == Status::Fail);
    REQUIRE(bad.witness);
    CHECK(bad.witness->coefficient != 0);
}

TEST_CASE("phi_2 on curve-even is -t1/6 for every genus, and h_2 = g t1/6") {
    for (int genus = 0; genus <= 3; ++genus) {
        CAPTURE(genus);
        Frobenius fr(builtin("curve-even", std::nullopt, genus));
        Genus1 g(fr);
        CHECK(equal_up_to_common_order(g.phi(2), rational(-1, 6) * t(fr, 0)));
        CHECK(equal_up_to_common_order(g.h(2), rational(genus, 6) * t(fr, 0)));
        // <<E>>_1 = -c1_cd1/24 = (g - 1)/12.
        CHECK(equal_up_to_common_order(fr.corr1(fr.euler()), fr.constant(rational(genus - 1, 12))));
    }
}

TEST_CASE("phi_2 vanishes on point and k3-full") {
    for (const char* name : {"point", "k3-full"}) {
        CAPTURE(name);
        Frobenius fr(builtin(name));
        Genus1 g(fr);
        CHECK(g.phi(2).is_zero());
        CHECK(g.h(2).is_zero());
    }
}

TEST_CASE("closed and recursive phi_k agree") {
    for (const char* name : {"cp1", "curve-even", "M4"}) {
        CAPTURE(name);
        Frobenius fr(builtin(name));
        Genus1 g(fr);
        for (int k = 2; k <= 5; ++k) CHECK(equal_up_to_common_order(g.phi_closed(k), g.phi_recursive(k)));
        CHECK(g.phi(0).is_zero());
        CHECK(equal_up_to_common_order(g.phi(1), fr.constant(-fr.model().c1_cd1 / 24)));
    }
}

TEST_CASE("Euler-power identity at m = 2 on cp1") {
    Frobenius fr(builtin("cp1"));
    Genus1 g(fr);
    const auto e0 = fr.euler_power(0), e2 = fr.euler_power(2);
    const auto lhs = rational(1, 2) * fr.apply(e0, fr.corr1(e2));
    const auto rhs = fr.corr1(fr.euler());
    CHECK(equal_up_to_common_order(lhs, fr.constant(rational(-1, 12))));
    CHECK(equal_up_to_common_order(rhs, fr.constant(rational(-1, 12))));
    CHECK(g.G0(e0, e0, fr.euler(), fr.euler()).is_zero());
    for (int m = 2; m <= 5; ++m) CHECK(check_g0g1(g, m).status == Status::Pass);
}

TEST_CASE("genus-1 checks need a genus-1 potential") {
    Frobenius fr(builtin("M4"));
    Genus1 g(fr);
    CHECK_THROWS_AS(g.h(2), CapabilityError);
    CHECK_THROWS_AS(genus1_verdict(g), CapabilityError);
}

TEST_CASE("genus-1 predictor") {
    SUBCASE("point gives zero") {
        Frobenius fr(builtin("point"));
        auto p = predict_genus1(Genus1(fr));
        CHECK(p.unique);
        REQUIRE(p.f1);
        CHECK(p.f1->is_zero());
    }
    SUBCASE("cp1 gives -t2/24") {
        Frobenius fr(builtin("cp1"));
        auto p = predict_genus1(Genus1(fr));
        REQUIRE(p.f1);
        CHECK(p.report.status == Status::Pass);
        CHECK(equal_up_to_common_order(*p.f1, rational(-1, 24) * t(fr, 1)));
    }
    SUBCASE("cp2 has linear term -t2/8 and matches the genus-1 Euler values") {
        Frobenius fr(builtin("cp2", 12));
        auto p = predict_genus1(Genus1(fr));
        REQUIRE(p.unique);
        REQUIRE(p.f1);
        CHECK(p.report.status == Status::Pass);
        Monomial m(fr.table().size());
        m.set_exponent(1, 1);
        CHECK(p.f1->coefficient(m) == rational(-1, 8));
        // <<E>>_1 = -c1_cd1/24 with c1_cd1 = 9.
        CHECK(equal_up_to_common_order(fr.apply(fr.euler(), *p.f1), fr.constant(rational(-3, 8))));
    }
    SUBCASE("k3-full is underdetermined but consistent") {
        Frobenius fr(builtin("k3-full"));
        auto p = predict_genus1(Genus1(fr));
        CHECK_FALSE(p.unique);
        CHECK_FALSE(p.f1);
        CHECK(p.tower_rank < fr.size());
        CHECK(p.constrained.size() == p.tower_rank);
        CHECK(p.report.status == Status::Pass);
    }
}
