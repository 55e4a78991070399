#include <doctest.h>

#include "frobvir/errors.hpp"
#include "frobvir/genus1.hpp"
#include "frobvir/model_file.hpp"
#include "frobvir/models.hpp"

using namespace frobvir;

namespace {

const char* kCp1 = R"(# projective line
[model]
name = line
dim = 1
euler_char = 2
c1_cd1 = 2
order = 8

[novikov]
q 2

[basis]
one 0 0
pt 1 1

[eta]
0 1
1 0

[chern]
0 2
0 0

[f0]
1/2 ; t1^2 t2
1 ; q
1 ; q t2
1/2 ; q t2^2
1/6 ; q t2^3
1/24 ; q t2^4
1/120 ; q t2^5
1/720 ; q t2^6

[f1]
-1/24 ; t2
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("builtins survive a write and read") {
    for (const char* name : {"cp1", "cp2", "k3-full", "M4", "curve-even", "point"}) {
        CAPTURE(std::string(name));
        ModelSpec m = builtin(name);
        ModelSpec back = parse_model(serialize_model(m));
        CHECK(structurally_equal(m, back));
        CHECK(serialize_model(back) == serialize_model(m));
    }
}

TEST_CASE("a predicted genus-1 potential survives a write and read") {
    ModelSpec m = builtin("cp2", 9);
    Frobenius fr(m);
    auto p = predict_genus1(Genus1(fr));
    REQUIRE(p.f1);
    m.f1 = *p.f1;
    ModelSpec back = parse_model(serialize_model(m));
    REQUIRE(back.f1);
    CHECK(*back.f1 == *m.f1);
}

TEST_CASE("hand-written file reproduces the builtin cp1 correlators") {
    ModelSpec file = parse_model(kCp1);
    ModelSpec ref = builtin("cp1", 8);
    CHECK(file.f0.terms().size() == ref.f0.terms().size());
    CHECK(equal_up_to_common_order(file.f0, ref.f0));
    REQUIRE(file.f1);
    CHECK(equal_up_to_common_order(*file.f1, *ref.f1));
}

TEST_CASE("validation errors name the invariant") {
    std::string text = replace(kCp1, "[eta]\n0 1\n1 0", "[eta]\n0 1\n2 0");
    CHECK_THROWS_WITH_AS(parse_model(text), "eta not symmetric at (1,2)", ValidationError);
    // c1 raising the bidegree by (1,1) must also raise b by one; a (0,0) target does not.
    text = replace(kCp1, "[chern]\n0 2\n0 0", "[chern]\n0 0\n2 0");
    CHECK_THROWS_AS(parse_model(text), ValidationError);
}

TEST_CASE("parse errors carry line and column") {
    auto expect_at = [](const std::string& text, int line, int column) {
        try {
            parse_model(text);
            FAIL("no error");
        } catch (const ParseError& e) {
            const std::string message = e.what();
            CAPTURE(message);
            CHECK(e.line() == line);
            CHECK(e.column() == column);
        }
    };
    expect_at(replace(kCp1, "1/6 ; q t2^3", "1/6 ; q t7^3"), 29, 9);
    expect_at(replace(kCp1, "1/6 ; q t2^3", "1/x ; q t2^3"), 29, 1);
    expect_at(replace(kCp1, "[novikov]", "[novikovs]"), 9, 1);
    expect_at(replace(kCp1, "order = 8", "order = 8\ncolour = red"), 8, 1);
    // q t2^6 has weighted degree 8; at order 7 it is out of range.
    expect_at(replace(kCp1, "order = 8", "order = 7"), 32, 1);
    // A missing row is reported at the last row present.
    expect_at(replace(kCp1, "0 1\n1 0", "0 1"), 17, 1);
}
