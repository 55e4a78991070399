#include "frobvir/model.hpp"

#include "frobvir/errors.hpp"

namespace frobvir {

std::string coordinate_name(std::size_t alpha) { return "t" + std::to_string(alpha + 1); }

VariableTable make_table(std::size_t n, const std::vector<NovikovVariable>& novikov) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(coordinate_name(i));
        weights.push_back(1);
    }
    for (const auto& v : novikov) {
        names.push_back(v.name);
        weights.push_back(v.weight);
    }
    return VariableTable(std::move(names), std::move(weights));
}

std::vector<Rational> b_weights(const ModelSpec& model) {
    std::vector<Rational> b;
    Rational shift(model.dim - 1, 2);
    shift.canonicalize();
    for (const auto& c : model.basis) b.push_back(Rational(c.p) - shift);
    return b;
}

namespace {

std::string pair_name(std::size_t a, std::size_t b) {
    return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

}  // namespace

void validate(const ModelSpec& m) {
    const std::size_t n = m.basis.size();
    if (n == 0) throw ValidationError("basis is empty");
    if (m.dim < 0) throw ValidationError("negative complex dimension");
    if (m.basis[0].p != 0 || m.basis[0].q != 0) throw ValidationError("first basis class must have bidegree (0,0)");
    for (const auto& c : m.basis)
        if (c.p < 0 || c.q < 0 || c.p > m.dim || c.q > m.dim)
            throw ValidationError("bidegree of '" + c.label + "' out of range");
    auto square = [n](const RationalMatrix& a) {
        if (a.size() != n) return false;
        for (const auto& row : a)
            if (row.size() != n) return false;
        return true;
    };
    if (!square(m.eta)) throw ValidationError("eta is not " + std::to_string(n) + "x" + std::to_string(n));
    if (!square(m.chern)) throw ValidationError("chern is not " + std::to_string(n) + "x" + std::to_string(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (m.eta[a][b] != m.eta[b][a]) throw ValidationError("eta not symmetric at " + pair_name(a, b));
    if (!inverse(m.eta)) throw ValidationError("eta is singular");

    const auto b = b_weights(m);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            if (sgn(m.eta[a][c]) != 0) {
                if (m.basis[a].p + m.basis[c].p != m.dim || m.basis[a].q + m.basis[c].q != m.dim)
                    throw ValidationError("eta nonzero at " + pair_name(a, c) + " between non-complementary degrees");
                if (b[a] != 1 - b[c])
                    throw ValidationError("eta nonzero at " + pair_name(a, c) + " but b_alpha != 1 - b_beta");
            }
            if (sgn(m.chern[a][c]) != 0) {
                if (m.basis[c].p != m.basis[a].p + 1 || m.basis[c].q != m.basis[a].q + 1)
                    throw ValidationError("chern nonzero at " + pair_name(a, c) + " but degree does not rise by (1,1)");
                if (b[c] != 1 + b[a])
                    throw ValidationError("chern nonzero at " + pair_name(a, c) + " but b_beta != 1 + b_alpha");
            }
        }
    RationalMatrix ce = multiply(m.chern, m.eta);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < a; ++c)
            if (ce[a][c] != ce[c][a]) throw ValidationError("chern*eta not symmetric at " + pair_name(a, c));

    VariableTable expected = make_table(n, m.novikov);
    if (!(m.f0.table() == expected)) throw ValidationError("f0 variable table does not match basis and novikov data");
    if (m.f1 && !(m.f1->table() == expected)) throw ValidationError("f1 variable table does not match basis and novikov data");
    if (m.base_point.size() != n) throw ValidationError("base point has wrong length");
    if (m.order < 3) throw ValidationError("order must be at least 3");

    bool centred_at_origin = true;
    for (const auto& x : m.base_point)
        if (sgn(x) != 0) centred_at_origin = false;
    if (centred_at_origin) {
        for (const auto& t : m.f0.terms()) {
            int phase_degree = 0;
            for (std::size_t i = 0; i < n; ++i) phase_degree += static_cast<int>(t.monomial.exponent(i));
            bool pure_phase = t.degree == phase_degree;
            if (pure_phase && phase_degree < 2)
                throw ValidationError("f0 has a constant or linear term " + format_monomial(t.monomial, expected));
        }
    }
}

TruncatedSeries recenter(const TruncatedSeries& f, const std::vector<Rational>& base_point) {
    TruncatedSeries r = f;
    for (std::size_t i = 0; i < base_point.size(); ++i) r = shift_variable(r, i, base_point[i]);
    return r;
}

TruncatedSeries uncenter(const TruncatedSeries& f, const std::vector<Rational>& base_point) {
    TruncatedSeries r = f;
    for (std::size_t i = 0; i < base_point.size(); ++i) r = shift_variable(r, i, -base_point[i]);
    return r;
}

bool structurally_equal(const ModelSpec& a, const ModelSpec& b) {
    return a.name == b.name && a.dim == b.dim && a.basis == b.basis && a.eta == b.eta && a.chern == b.chern &&
           a.euler_char == b.euler_char && a.c1_cd1 == b.c1_cd1 && a.novikov == b.novikov && a.f0 == b.f0 &&
           a.f1 == b.f1 && a.base_point == b.base_point && a.order == b.order;
}

}  // namespace frobvir
