#include "frobvir/vector_field.hpp"

#include <algorithm>
#include <limits>

#include "frobvir/errors.hpp"

namespace frobvir {

VectorField::VectorField(std::vector<TruncatedSeries> components) : components_(std::move(components)) {
    if (components_.empty()) throw StructuralError("vector field with no components");
    int order = valid_order();
    for (auto& c : components_) {
        if (!(c.table() == components_[0].table())) throw StructuralError("vector field: table mismatch");
        if (c.valid_order() != order) c = c.truncated(order);
    }
}

VectorField VectorField::zero(const VariableTable& table, std::size_t n, int order) {
    return VectorField(std::vector<TruncatedSeries>(n, TruncatedSeries(table, order)));
}

VectorField VectorField::basis(const VariableTable& table, std::size_t n, std::size_t alpha, int order) {
    std::vector<TruncatedSeries> c(n, TruncatedSeries(table, order));
    c.at(alpha) = TruncatedSeries::constant(table, 1, order);
    return VectorField(std::move(c));
}

int VectorField::valid_order() const {
    int order = std::numeric_limits<int>::max();
    for (const auto& c : components_) order = std::min(order, c.valid_order());
    return order;
}

bool VectorField::is_zero() const {
    return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

VectorField VectorField::truncated(int order) const {
    std::vector<TruncatedSeries> c;
    for (const auto& s : components_) c.push_back(s.truncated(order));
    return VectorField(std::move(c));
}

VectorField& VectorField::operator+=(const VectorField& other) {
    if (other.size() != size()) throw StructuralError("vector field size mismatch");
    for (std::size_t i = 0; i < size(); ++i) components_[i] += other.components_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    if (other.size() != size()) throw StructuralError("vector field size mismatch");
    for (std::size_t i = 0; i < size(); ++i) components_[i] -= other.components_[i];
    return *this;
}

VectorField operator*(const TruncatedSeries& s, const VectorField& v) {
    std::vector<TruncatedSeries> c;
    for (const auto& x : v.components_) c.push_back(s * x);
    return VectorField(std::move(c));
}

VectorField operator*(const Rational& k, const VectorField& v) {
    std::vector<TruncatedSeries> c;
    for (const auto& x : v.components_) c.push_back(x * k);
    return VectorField(std::move(c));
}

std::string VectorField::to_string(const std::vector<std::string>& labels) const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (components_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + components_[i].to_string() + ")*" + (i < labels.size() ? labels[i] : std::to_string(i + 1));
    }
    return out.empty() ? "0" : out;
}

}  // namespace frobvir
