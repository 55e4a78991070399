#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frobvir/linalg.hpp"
#include "frobvir/rational.hpp"
#include "frobvir/series.hpp"

namespace frobvir {

struct BasisClass {
    std::string label;
    int p = 0;
    int q = 0;
    bool operator==(const BasisClass&) const = default;
};

struct NovikovVariable {
    std::string name;
    int weight = 1;
    bool operator==(const NovikovVariable&) const = default;
};

/// A Frobenius model on the small phase space.
///
/// Coordinates are named t1..tN in basis order, followed by the Novikov
/// variables. `f0` and `f1` are stored in coordinates centred at
/// `base_point`: the variable ti stands for the displacement t^i - base_i.
struct ModelSpec {
    std::string name;
    int dim = 0;
    std::vector<BasisClass> basis;
    RationalMatrix eta;
    /// chern[a][b]: coefficient of gamma_b in c1 cup gamma_a.
    RationalMatrix chern;
    Rational euler_char;
    Rational c1_cd1;
    std::vector<NovikovVariable> novikov;
    TruncatedSeries f0;
    std::optional<TruncatedSeries> f1;
    std::vector<Rational> base_point;
    int order = 0;

    /// Builtin metadata only: checks known to fail on this model. Never read
    /// from or written to model files.
    std::set<std::string> expected_failures;
    std::string description;

    std::size_t size() const noexcept { return basis.size(); }
    const VariableTable& table() const { return f0.table(); }
};

/// Variable table t1..tN (weight 1) followed by the Novikov variables.
VariableTable make_table(std::size_t n, const std::vector<NovikovVariable>& novikov);
std::string coordinate_name(std::size_t alpha);

/// b_alpha = p_alpha - (d - 1)/2.
std::vector<Rational> b_weights(const ModelSpec& model);

/// Throws ValidationError naming the first violated invariant. Potentials are
/// checked in their centred form, so the low-degree test is skipped when the
/// base point is not the origin.
void validate(const ModelSpec& model);

/// Substitutes t^i -> t^i + base_i in a potential written in original coordinates.
TruncatedSeries recenter(const TruncatedSeries& f, const std::vector<Rational>& base_point);
/// Inverse of recenter.
TruncatedSeries uncenter(const TruncatedSeries& f, const std::vector<Rational>& base_point);

bool structurally_equal(const ModelSpec& a, const ModelSpec& b);

}  // namespace frobvir
