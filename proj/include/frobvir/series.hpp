#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "frobvir/rational.hpp"

namespace frobvir {

/// Ordered list of variables with positive truncation weights.
///
/// Cheap to copy: the data is shared and immutable. Two tables compare equal
/// when their names and weights agree.
class VariableTable {
public:
    VariableTable();
    VariableTable(std::vector<std::string> names, std::vector<int> weights);

    std::size_t size() const noexcept { return data_->names.size(); }
    const std::string& name(std::size_t i) const { return data_->names.at(i); }
    int weight(std::size_t i) const { return data_->weights.at(i); }
    const std::vector<std::string>& names() const noexcept { return data_->names; }
    const std::vector<int>& weights() const noexcept { return data_->weights; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws UnknownVariableError.
    std::size_t index(std::string_view name) const;

    bool operator==(const VariableTable& other) const;

private:
    struct Data {
        std::vector<std::string> names;
        std::vector<int> weights;
    };
    std::shared_ptr<const Data> data_;
};

/// Dense exponent vector, one byte per variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t variables) : exps_(variables, '\0') {}

    std::size_t size() const noexcept { return exps_.size(); }
    unsigned exponent(std::size_t i) const { return static_cast<unsigned char>(exps_[i]); }
    void set_exponent(std::size_t i, unsigned e);
    bool is_one() const;

    int weighted_degree(const VariableTable& table) const;
    Monomial operator*(const Monomial& other) const;

    const std::string& key() const noexcept { return exps_; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        int c = a.exps_.compare(b.exps_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    std::string exps_;
};

std::string format_monomial(const Monomial& m, const VariableTable& table);

struct Term {
    Monomial monomial;
    int degree = 0;
    Rational coeff;
};

/// Multivariate power series over the rationals, exact in every monomial whose
/// weighted degree is at most `valid_order`. Terms beyond the valid order are
/// never stored, nor are zero coefficients.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(VariableTable table, int valid_order);

    static TruncatedSeries constant(const VariableTable& table, const Rational& c, int valid_order);
    static TruncatedSeries variable(const VariableTable& table, std::string_view name, int valid_order);
    static TruncatedSeries monomial(const VariableTable& table, const Monomial& m, const Rational& c,
                                    int valid_order);

    const VariableTable& table() const noexcept { return table_; }
    int valid_order() const noexcept { return valid_order_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    /// True when the only possible term is the constant one.
    bool is_constant() const noexcept;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    /// Lowest term by (weighted degree, monomial); nullopt for the zero series.
    std::optional<Term> lowest_term() const;

    /// Drops terms above `order` and lowers the valid order to it (never raises).
    TruncatedSeries truncated(int order) const;

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& other);
    TruncatedSeries& operator-=(const TruncatedSeries& other);
    TruncatedSeries& operator*=(const Rational& c);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
    friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

    std::string to_string() const;

private:
    friend class SeriesBuilder;

    VariableTable table_;
    int valid_order_ = 0;
    std::vector<Term> terms_;  // sorted by monomial
};

/// Accumulates terms then produces a canonical TruncatedSeries.
class SeriesBuilder {
public:
    SeriesBuilder(VariableTable table, int valid_order);

    void add(const Monomial& m, const Rational& c);
    void add(Monomial&& m, const Rational& c);
    /// Also lowers the valid order to that of `s`.
    void add_series(const TruncatedSeries& s, const Rational& scale = 1);
    int valid_order() const noexcept { return valid_order_; }
    TruncatedSeries build() &&;

private:
    VariableTable table_;
    int valid_order_;
    std::unordered_map<std::string, Rational> acc_;
};

/// Formal partial derivative. The valid order drops by the variable's weight.
TruncatedSeries derivative(const TruncatedSeries& a, std::size_t var);
TruncatedSeries derivative(const TruncatedSeries& a, std::string_view var);

/// Formal antiderivative with zero constant of integration; valid order rises
/// by the variable's weight.
TruncatedSeries antiderivative(const TruncatedSeries& a, std::size_t var);

/// Evaluates the stored terms. Every variable must be assigned.
Rational evaluate(const TruncatedSeries& a, const std::map<std::string, Rational>& point);

/// Substitutes var -> var + shift exactly (binomial expansion of each term).
TruncatedSeries shift_variable(const TruncatedSeries& a, std::size_t var, const Rational& shift);

/// Sets the listed variables to zero.
TruncatedSeries restrict_to_zero(const TruncatedSeries& a, std::span<const std::size_t> vars);

/// a - b truncated to the smaller valid order.
bool equal_up_to_common_order(const TruncatedSeries& a, const TruncatedSeries& b);

/// Univariate restriction along a weighted line: x_i -> direction_i * lambda^{w_i}.
/// Returns the coefficients of lambda^0..lambda^{valid_order}.
std::vector<Rational> restrict_to_line(const TruncatedSeries& a, std::span<const Rational> direction);

}  // namespace frobvir
