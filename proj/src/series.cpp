#include "frobvir/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "frobvir/errors.hpp"

namespace frobvir {

// ---------------------------------------------------------------- VariableTable

VariableTable::VariableTable() : data_(std::make_shared<const Data>()) {}

VariableTable::VariableTable(std::vector<std::string> names, std::vector<int> weights) {
    if (names.size() != weights.size()) throw StructuralError("variable table: names/weights size mismatch");
    if (names.size() > 255) throw StructuralError("variable table: too many variables");
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) throw StructuralError("variable table: empty variable name");
        if (weights[i] < 1) throw StructuralError("variable table: weight of '" + names[i] + "' must be >= 1");
        for (std::size_t j = 0; j < i; ++j)
            if (names[i] == names[j]) throw StructuralError("variable table: duplicate variable '" + names[i] + "'");
    }
    data_ = std::make_shared<const Data>(Data{std::move(names), std::move(weights)});
}

std::optional<std::size_t> VariableTable::find(std::string_view name) const {
    const auto& n = data_->names;
    for (std::size_t i = 0; i < n.size(); ++i)
        if (n[i] == name) return i;
    return std::nullopt;
}

std::size_t VariableTable::index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw UnknownVariableError("unknown variable '" + std::string(name) + "'");
    return *i;
}

bool VariableTable::operator==(const VariableTable& other) const {
    return data_ == other.data_ || (data_->names == other.data_->names && data_->weights == other.data_->weights);
}

// --------------------------------------------------------------------- Monomial

void Monomial::set_exponent(std::size_t i, unsigned e) {
    if (e > 255) throw TruncationError("exponent exceeds 255", 255);
    exps_[i] = static_cast<char>(static_cast<unsigned char>(e));
}

bool Monomial::is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](char c) { return c == '\0'; });
}

int Monomial::weighted_degree(const VariableTable& table) const {
    int d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += static_cast<int>(exponent(i)) * table.weight(i);
    return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        unsigned e = exponent(i) + other.exponent(i);
        r.set_exponent(i, e);
    }
    return r;
}

std::string format_monomial(const Monomial& m, const VariableTable& table) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        unsigned e = m.exponent(i);
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += table.name(i);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- SeriesBuilder

SeriesBuilder::SeriesBuilder(VariableTable table, int valid_order)
    : table_(std::move(table)), valid_order_(valid_order) {}

void SeriesBuilder::add(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    if (m.weighted_degree(table_) > valid_order_) return;
    auto [it, inserted] = acc_.try_emplace(m.key(), c);
    if (!inserted) it->second += c;
}

void SeriesBuilder::add(Monomial&& m, const Rational& c) { add(static_cast<const Monomial&>(m), c); }

void SeriesBuilder::add_series(const TruncatedSeries& s, const Rational& scale) {
    if (!(s.table() == table_)) throw StructuralError("series builder: table mismatch");
    valid_order_ = std::min(valid_order_, s.valid_order());
    for (const auto& t : s.terms()) {
        if (t.degree > valid_order_) continue;
        auto [it, inserted] = acc_.try_emplace(t.monomial.key(), t.coeff * scale);
        if (!inserted) it->second += t.coeff * scale;
    }
}

TruncatedSeries SeriesBuilder::build() && {
    TruncatedSeries s(table_, valid_order_);
    s.terms_.reserve(acc_.size());
    for (auto& [key, c] : acc_) {
        if (sgn(c) == 0) continue;
        Term t;
        t.monomial = Monomial(table_.size());
        for (std::size_t i = 0; i < key.size(); ++i) t.monomial.set_exponent(i, static_cast<unsigned char>(key[i]));
        t.degree = t.monomial.weighted_degree(table_);
        if (t.degree > valid_order_) continue;
        t.coeff = std::move(c);
        s.terms_.push_back(std::move(t));
    }
    std::sort(s.terms_.begin(), s.terms_.end(),
              [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
    return s;
}

// ------------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(VariableTable table, int valid_order)
    : table_(std::move(table)), valid_order_(valid_order) {
    if (valid_order < 0) throw TruncationError("negative valid order", 0);
}

TruncatedSeries TruncatedSeries::constant(const VariableTable& table, const Rational& c, int valid_order) {
    return monomial(table, Monomial(table.size()), c, valid_order);
}

TruncatedSeries TruncatedSeries::variable(const VariableTable& table, std::string_view name, int valid_order) {
    Monomial m(table.size());
    m.set_exponent(table.index(name), 1);
    return monomial(table, m, 1, valid_order);
}

TruncatedSeries TruncatedSeries::monomial(const VariableTable& table, const Monomial& m, const Rational& c,
                                          int valid_order) {
    TruncatedSeries s(table, valid_order);
    int deg = m.weighted_degree(table);
    if (sgn(c) != 0 && deg <= valid_order) s.terms_.push_back(Term{m, deg, c});
    return s;
}

bool TruncatedSeries::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().degree == 0);
}

Rational TruncatedSeries::constant_term() const {
    if (!terms_.empty() && terms_.front().degree == 0) return terms_.front().coeff;
    return 0;
}

Rational TruncatedSeries::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.monomial < key; });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return 0;
}

std::optional<Term> TruncatedSeries::lowest_term() const {
    if (terms_.empty()) return std::nullopt;
    const Term* best = &terms_.front();
    for (const auto& t : terms_) {
        if (t.degree < best->degree) best = &t;
        else if (t.degree == best->degree && t.monomial > best->monomial) best = &t;
    }
    // Among equal degrees prefer the lexicographically largest exponent
    // vector, which puts earlier variables first (t1 before t2).
    return *best;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    TruncatedSeries r(table_, std::min(order, valid_order_));
    for (const auto& t : terms_)
        if (t.degree <= r.valid_order_) r.terms_.push_back(t);
    return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

void require_same_table(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
    if (!(a.table() == b.table())) throw StructuralError(std::string(op) + ": variable table mismatch");
}

}  // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
    require_same_table(*this, other, "series_add");
    int order = std::min(valid_order_, other.valid_order_);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    while (i != terms_.end() || j != other.terms_.end()) {
        if (j == other.terms_.end() || (i != terms_.end() && i->monomial < j->monomial)) {
            if (i->degree <= order) merged.push_back(std::move(*i));
            ++i;
        } else if (i == terms_.end() || j->monomial < i->monomial) {
            if (j->degree <= order) merged.push_back(*j);
            ++j;
        } else {
            if (i->degree <= order) {
                i->coeff += j->coeff;
                if (sgn(i->coeff) != 0) merged.push_back(std::move(*i));
            }
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    valid_order_ = order;
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) { return *this += -other; }

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_table(a, b, "series_mul");
    int order = std::min(a.valid_order_, b.valid_order_);
    if (a.is_constant() || b.is_constant()) {
        const TruncatedSeries& c = a.is_constant() ? a : b;
        const TruncatedSeries& other = a.is_constant() ? b : a;
        TruncatedSeries r = other.truncated(order);
        return r *= c.constant_term();
    }
    SeriesBuilder builder(a.table_, order);
    for (const auto& ta : a.terms_) {
        if (ta.degree > order) continue;
        for (const auto& tb : b.terms_) {
            if (ta.degree + tb.degree > order) continue;
            builder.add(ta.monomial * tb.monomial, ta.coeff * tb.coeff);
        }
    }
    return std::move(builder).build();
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.table_ == b.table_) || a.valid_order_ != b.valid_order_ || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

std::string TruncatedSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> order;
    for (const auto& t : terms_) order.push_back(&t);
    // Weighted degree first, then earlier variables first.
    std::sort(order.begin(), order.end(), [](const Term* x, const Term* y) {
        if (x->degree != y->degree) return x->degree < y->degree;
        return x->monomial > y->monomial;
    });
    std::ostringstream out;
    bool first = true;
    for (const Term* t : order) {
        Rational c = t->coeff;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) out << (neg ? "-" : "");
        else out << (neg ? " - " : " + ");
        first = false;
        bool unit = t->monomial.is_one();
        if (unit) out << frobvir::to_string(c);
        else if (c == 1) out << format_monomial(t->monomial, table_);
        else out << frobvir::to_string(c) << "*" << format_monomial(t->monomial, table_);
    }
    return out.str();
}

// ------------------------------------------------------------- free functions

TruncatedSeries derivative(const TruncatedSeries& a, std::size_t var) {
    const auto& table = a.table();
    if (var >= table.size()) throw UnknownVariableError("derivative: variable index out of range");
    int order = a.valid_order() - table.weight(var);
    if (order < 0) throw TruncationError("derivative exhausts the valid order", a.valid_order());
    SeriesBuilder builder(table, order);
    for (const auto& t : a.terms()) {
        unsigned e = t.monomial.exponent(var);
        if (e == 0) continue;
        Monomial m = t.monomial;
        m.set_exponent(var, e - 1);
        builder.add(std::move(m), t.coeff * e);
    }
    return std::move(builder).build();
}

TruncatedSeries derivative(const TruncatedSeries& a, std::string_view var) {
    return derivative(a, a.table().index(var));
}

TruncatedSeries antiderivative(const TruncatedSeries& a, std::size_t var) {
    const auto& table = a.table();
    if (var >= table.size()) throw UnknownVariableError("antiderivative: variable index out of range");
    SeriesBuilder builder(table, a.valid_order() + table.weight(var));
    for (const auto& t : a.terms()) {
        Monomial m = t.monomial;
        unsigned e = m.exponent(var) + 1;
        m.set_exponent(var, e);
        builder.add(std::move(m), t.coeff / e);
    }
    return std::move(builder).build();
}

Rational evaluate(const TruncatedSeries& a, const std::map<std::string, Rational>& point) {
    const auto& table = a.table();
    std::vector<Rational> values(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto it = point.find(table.name(i));
        if (it == point.end()) throw StructuralError("evaluate: no value for variable '" + table.name(i) + "'");
        values[i] = it->second;
    }
    Rational sum = 0;
    for (const auto& t : a.terms()) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < table.size(); ++i) {
            unsigned e = t.monomial.exponent(i);
            if (e == 0) continue;
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), values[i].get_num_mpz_t(), e);
            mpz_pow_ui(den.get_mpz_t(), values[i].get_den_mpz_t(), e);
            Rational p(num, den);
            p.canonicalize();
            v *= p;
        }
        sum += v;
    }
    return sum;
}

TruncatedSeries shift_variable(const TruncatedSeries& a, std::size_t var, const Rational& shift) {
    if (sgn(shift) == 0) return a;
    const auto& table = a.table();
    SeriesBuilder builder(table, a.valid_order());
    for (const auto& t : a.terms()) {
        unsigned e = t.monomial.exponent(var);
        Rational power = 1;  // shift^(e - j) accumulated from j = e downwards
        for (int j = static_cast<int>(e); j >= 0; --j) {
            Monomial m = t.monomial;
            m.set_exponent(var, static_cast<unsigned>(j));
            builder.add(std::move(m), t.coeff * binomial(static_cast<int>(e), j) * power);
            power *= shift;
        }
    }
    return std::move(builder).build();
}

TruncatedSeries restrict_to_zero(const TruncatedSeries& a, std::span<const std::size_t> vars) {
    SeriesBuilder builder(a.table(), a.valid_order());
    for (const auto& t : a.terms()) {
        bool vanishes = false;
        for (std::size_t v : vars)
            if (t.monomial.exponent(v) != 0) vanishes = true;
        if (!vanishes) builder.add(t.monomial, t.coeff);
    }
    return std::move(builder).build();
}

bool equal_up_to_common_order(const TruncatedSeries& a, const TruncatedSeries& b) { return (a - b).is_zero(); }

std::vector<Rational> restrict_to_line(const TruncatedSeries& a, std::span<const Rational> direction) {
    const auto& table = a.table();
    if (direction.size() != table.size()) throw StructuralError("restrict_to_line: direction size mismatch");
    std::vector<Rational> coeffs(static_cast<std::size_t>(a.valid_order()) + 1);
    for (const auto& t : a.terms()) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < table.size(); ++i) {
            unsigned e = t.monomial.exponent(i);
            for (unsigned k = 0; k < e; ++k) v *= direction[i];
        }
        coeffs[static_cast<std::size_t>(t.degree)] += v;
    }
    return coeffs;
}

}  // namespace frobvir
