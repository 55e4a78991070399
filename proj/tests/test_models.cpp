#include <doctest.h>

#include "frobvir/errors.hpp"
#include "frobvir/foundations.hpp"
#include "frobvir/models.hpp"

using namespace frobvir;

namespace {

TruncatedSeries t(const Frobenius& fr, std::size_t alpha) {
    return fr.coordinate(alpha) - fr.constant(fr.model().base_point[alpha]);
}

bool field_equal(const VectorField& a, const VectorField& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal_up_to_common_order(a[i], b[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("builtin names") {
    CHECK(builtin("M(4)").name == builtin("M4").name);
    CHECK_THROWS_AS(builtin("nope"), ValidationError);
    CHECK(builtin_models().size() == 11);
    CHECK(builtin("cp1", 7).order == 7);
    CHECK(default_order("cp2") == 24);
}

TEST_CASE("cp1 three-point function of the point class is q e^t2") {
    Frobenius fr(builtin("cp1"));
    const auto g2 = fr.gamma(1);
    const auto got = fr.corr0(g2, g2, g2);
    const auto q = TruncatedSeries::variable(fr.table(), "q", fr.order());
    TruncatedSeries exp_t2 = fr.constant(0), power = fr.constant(1);
    for (int k = 0; k <= fr.order(); ++k) {
        exp_t2 += power * (1 / factorial(k));
        power = power * t(fr, 1);
    }
    CHECK(got.valid_order() >= fr.order() - 3);
    CHECK(equal_up_to_common_order(got, q * exp_t2));
    // gamma_1 is the unit.
    CHECK(field_equal(fr.product(fr.gamma(0), g2), g2));
}

TEST_CASE("curve-even Euler square") {
    Frobenius fr(builtin("curve-even"));
    const auto t1 = t(fr, 0);
    const auto expect = (fr.constant(0) - t1 * t1) * fr.euler_power(0) + (2 * t1) * fr.euler();
    CHECK(field_equal(fr.euler_power(2), expect));
}

TEST_CASE("foundations hold on small builtins") {
    for (const char* name : {"point", "cp1", "M4", "curve-even"}) {
        CAPTURE(name);
        Frobenius fr(builtin(name));
        CHECK(check_wdvv(fr).status == Status::Pass);
        CHECK(check_string(fr).status == Status::Pass);
        CHECK(check_quasi_homogeneity(fr).status == Status::Pass);
        CHECK(check_euler_bracket(fr, 1, 3).status == Status::Pass);
        CHECK(check_derivative_identities(fr).status == Status::Pass);
    }
}

TEST_CASE("Hodge-weight trace identity") {
    // lhs 1/2 sum b(1-b) - (b_1 + 1) chi/12 against -c1_cd1/12.
    CHECK(borisov_residual(builtin("cp1")) == 0);
    CHECK(borisov_residual(builtin("k3-full")) == 0);
    CHECK(borisov_residual(builtin("point")) == 0);
    // Even classes only: chi = 2 while c1_cd1 = 2 - 2g.
    for (int g = 0; g <= 3; ++g) CHECK(borisov_residual(builtin("curve-even", std::nullopt, g)) == rational(-g, 6));
    Frobenius fr(builtin("curve-even", std::nullopt, 2));
    auto r = check_borisov(fr);
    CHECK(r.status == Status::Fail);
    REQUIRE(r.witness);
    CHECK(r.witness->coefficient == rational(-1, 3));
}

TEST_CASE("WDVV solver recovers the plane curve counts") {
    auto sol = solve_wdvv_potential(cp2_template(4));
    REQUIRE(sol.coefficients.size() == 4);
    CHECK(sol.coefficients[0] == 1);
    CHECK(sol.coefficients[1] == 1);
    CHECK(sol.coefficients[2] == 12);
    CHECK(sol.coefficients[3] == 620);
    CHECK(sol.determining_orders[0] == 0);
    CHECK(sol.verified_order == sol.determining_orders.back() + 1);
}

TEST_CASE("WDVV solver scales with the seed") {
    // N_d -> 2^d N_d is a symmetry of the recursion (q -> 2q).
    auto sol = solve_wdvv_potential(cp2_template(4, {Rational(2)}));
    CHECK(sol.coefficients[1] == 4);
    CHECK(sol.coefficients[2] == 96);
    CHECK(sol.coefficients[3] == 9920);
}

TEST_CASE("WDVV solver rejects an ansatz with the wrong t3 power") {
    CHECK_THROWS_AS(solve_wdvv_potential(cp2_template(3, {Rational(1)}, 1)), InconsistentSystemError);
}

TEST_CASE("perturbing a plane curve count breaks associativity") {
    for (int d = 1; d <= 4; ++d) {
        CAPTURE(d);
        std::vector<Rational> n{1, 1, 12, 620};
        n[d - 1] += 1;
        // The degree-d term has weighted degree 6d - 1, so order 24 holds all four.
        ModelSpec spec = builtin("cp2", 24);
        spec.f0 = cp2_potential(n, 24);
        Frobenius fr(spec);
        auto r = check_wdvv(fr);
        CHECK(r.status == Status::Fail);
        REQUIRE(r.witness);
        CHECK(r.witness->coefficient != 0);
    }
    Frobenius ok(builtin("cp2", 24));
    CHECK(check_wdvv(ok).status == Status::Pass);
}
