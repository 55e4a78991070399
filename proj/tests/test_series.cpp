#include <doctest.h>

#include "frobvir/errors.hpp"
#include "frobvir/series.hpp"

using namespace frobvir;

namespace {

VariableTable xyq() { return VariableTable({"x", "y", "q"}, {1, 1, 3}); }

Monomial mono(std::initializer_list<unsigned> e) {
    Monomial m(e.size());
    std::size_t i = 0;
    for (unsigned v : e) m.set_exponent(i++, v);
    return m;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("-6/4") == rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(rational(2, -4)) == "-1/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK(binomial(6, 2) == 15);
    CHECK(factorial(8) == 40320);
}

TEST_CASE("weighted degree and truncation on construction") {
    auto t = xyq();
    CHECK(mono({1, 2, 1}).weighted_degree(t) == 6);
    SeriesBuilder b(t, 3);
    b.add(mono({0, 0, 1}), 2);
    b.add(mono({1, 0, 1}), 5);  // degree 4, dropped
    b.add(mono({1, 1, 0}), 0);  // zero, dropped
    auto s = std::move(b).build();
    CHECK(s.size() == 1);
    CHECK(s.coefficient(mono({0, 0, 1})) == 2);
}

TEST_CASE("product keeps the smaller valid order and the exact coefficients") {
    auto t = xyq();
    auto x = TruncatedSeries::variable(t, "x", 6);
    auto y = TruncatedSeries::variable(t, "y", 4);
    auto one = TruncatedSeries::constant(t, 1, 6);
    auto p = (one + x) * (one + y);
    CHECK(p.valid_order() == 4);
    auto cube = (one + x) * (one + x) * (one + x);
    // Binomial oracle.
    for (unsigned k = 0; k <= 3; ++k) CHECK(cube.coefficient(mono({k, 0, 0})) == binomial(3, static_cast<int>(k)));
    // Order propagation: a series exact to order 2 has valid order 2 after multiplying by 1 + x.
    auto low = TruncatedSeries::constant(t, 3, 2);
    auto prod = low * (one + x);
    CHECK(prod.valid_order() == 2);
    CHECK(prod.coefficient(mono({1, 0, 0})) == 3);
}

TEST_CASE("formatting spells out signs and unit coefficients") {
    auto t = xyq();
    SeriesBuilder b(t, 6);
    b.add(mono({2, 0, 0}), -1);
    b.add(mono({0, 1, 0}), rational(3, 2));
    b.add(mono({0, 0, 0}), 1);
    CHECK(std::move(b).build().to_string() == "1 + 3/2*y - x^2");
}

TEST_CASE("derivative lowers the valid order by the weight") {
    auto t = xyq();
    SeriesBuilder b(t, 9);
    b.add(mono({2, 0, 1}), 4);
    b.add(mono({0, 3, 0}), rational(1, 3));
    auto s = std::move(b).build();
    auto dq = derivative(s, "q");
    CHECK(dq.valid_order() == 6);
    CHECK(dq.coefficient(mono({2, 0, 0})) == 4);
    auto dy = derivative(s, "y");
    CHECK(dy.valid_order() == 8);
    CHECK(dy.coefficient(mono({0, 2, 0})) == 1);
    CHECK_THROWS_AS(derivative(s, "z"), UnknownVariableError);
}

TEST_CASE("antiderivative inverts the derivative on terms without a constant in that variable") {
    auto t = xyq();
    SeriesBuilder b(t, 7);
    b.add(mono({3, 1, 0}), 2);
    b.add(mono({1, 0, 1}), -5);
    auto s = std::move(b).build();
    auto round = antiderivative(derivative(s, std::size_t{0}), 0);
    CHECK(round.valid_order() == 7);
    CHECK(round == s);
}

TEST_CASE("shift by a constant matches the binomial expansion") {
    auto t = xyq();
    auto x = TruncatedSeries::variable(t, "x", 8);
    auto s = x * x * x * x;
    auto shifted = shift_variable(s, 0, 2);
    for (unsigned k = 0; k <= 4; ++k) {
        Rational expect = binomial(4, static_cast<int>(k));
        for (unsigned j = k; j < 4; ++j) expect *= 2;
        CHECK(shifted.coefficient(mono({k, 0, 0})) == expect);
    }
    CHECK(evaluate(shifted, {{"x", 1}, {"y", 0}, {"q", 0}}) == 81);
}

TEST_CASE("restriction to a weighted line") {
    auto t = xyq();
    SeriesBuilder b(t, 6);
    b.add(mono({1, 0, 0}), 1);
    b.add(mono({0, 1, 1}), 2);
    auto s = std::move(b).build();
    std::vector<Rational> dir{3, 5, 7};
    auto coeffs = restrict_to_line(s, dir);
    REQUIRE(coeffs.size() == 7);
    CHECK(coeffs[1] == 3);
    CHECK(coeffs[4] == 2 * 5 * 7);
    CHECK(coeffs[0] == 0);
}

TEST_CASE("mixing tables is a structural error") {
    auto a = TruncatedSeries::variable(xyq(), "x", 3);
    auto b = TruncatedSeries::variable(VariableTable({"x"}, {1}), "x", 3);
    CHECK_THROWS_AS(a + b, StructuralError);
}

TEST_CASE("formatting orders by weighted degree") {
    auto t = xyq();
    SeriesBuilder b(t, 6);
    b.add(mono({0, 0, 1}), -1);
    b.add(mono({1, 0, 0}), rational(1, 2));
    auto s = std::move(b).build();
    const std::string text = s.to_string();
    CHECK(text.find('x') < text.find('q'));
    CHECK(TruncatedSeries(t, 3).to_string() == "0");
}
