#pragma once

#include <string>
#include <vector>

#include "frobvir/series.hpp"

namespace frobvir {

/// Components in the gamma basis. All components share a table and valid order.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<TruncatedSeries> components);
    static VectorField zero(const VariableTable& table, std::size_t n, int order);
    /// The coordinate field gamma_alpha.
    static VectorField basis(const VariableTable& table, std::size_t n, std::size_t alpha, int order);

    std::size_t size() const noexcept { return components_.size(); }
    const TruncatedSeries& operator[](std::size_t i) const { return components_.at(i); }
    const std::vector<TruncatedSeries>& components() const noexcept { return components_; }
    int valid_order() const;
    const VariableTable& table() const { return components_.at(0).table(); }
    bool is_zero() const;
    VectorField truncated(int order) const;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const TruncatedSeries& s, const VectorField& v);
    friend VectorField operator*(const Rational& c, const VectorField& v);
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.components_ == b.components_; }

    std::string to_string(const std::vector<std::string>& labels) const;

private:
    std::vector<TruncatedSeries> components_;
};

}  // namespace frobvir
