#include "frobvir/euler_span.hpp"

#include "frobvir/errors.hpp"
#include "frobvir/linalg.hpp"

namespace frobvir {

namespace {

std::string sub(const char* name, std::size_t i) { return std::string(name) + "_" + std::to_string(i); }

// D[k][i] = E^k f_i through the derivative recursion, for k <= kmax.
std::vector<std::vector<TruncatedSeries>> recursion_table(const Frobenius& fr, const EulerSpan& span, int kmax) {
    const std::size_t n = span.n;
    std::vector<std::vector<TruncatedSeries>> d(static_cast<std::size_t>(kmax) + 1);
    for (std::size_t i = 0; i < n; ++i) d[0].push_back(Rational(-static_cast<long>(i + 1)) * span.f[i + 1]);
    d[0].push_back(fr.constant(Rational(static_cast<long>(n + 1))).truncated(span.f[n].valid_order()));
    for (std::size_t k = 1; k < d.size(); ++k) {
        const TruncatedSeries& top = d[k - 1][n];
        d[k].push_back(span.f[0] * top);
        for (std::size_t i = 1; i <= n; ++i) d[k].push_back(span.f[i] * top + d[k - 1][i - 1]);
    }
    return d;
}

bool in_generic_span(const std::vector<VectorField>& basis, const VectorField& v, std::size_t base_rank) {
    std::vector<SeriesVector> rows;
    for (const auto& b : basis) rows.push_back(b.components());
    rows.push_back(v.components());
    return coefficient_rank(rows, min_valid_order(rows)) == base_rank;
}

}  // namespace

EulerSpan minimal_euler_relation(const Frobenius& fr, std::optional<std::size_t> max_n) {
    const std::size_t limit = max_n.value_or(fr.size() - 1);
    EulerSpan span;
    span.tower.push_back(fr.euler_power(0));
    std::vector<SeriesVector> rows = {span.tower[0].components()};
    for (std::size_t n = 0; n <= limit; ++n) {
        span.tower.push_back(fr.euler_power(static_cast<int>(n + 1)));
        rows.push_back(span.tower.back().components());
        const int order = min_valid_order(rows);
        if (coefficient_rank(rows, order) == n + 1) {
            span.n = n;
            span.rank_order = order;
            const std::size_t dim = fr.size();
            SeriesMatrix a(dim);
            SeriesVector b;
            for (std::size_t al = 0; al < dim; ++al) {
                for (std::size_t i = 0; i <= n; ++i) a[al].push_back(span.tower[i][al]);
                b.push_back(span.tower[n + 1][al]);
            }
            span.f = solve_series_system(a, b);
            return span;
        }
    }
    throw TruncationError("Euler tower rank did not stabilize by n = " + std::to_string(limit),
                          min_valid_order(rows));
}

CheckReport check_f_recursion(const Frobenius& fr, const EulerSpan& span) {
    const std::size_t n = span.n;
    const auto& f = span.f;
    Residuals r;
    auto along = [&](int k, const TruncatedSeries& s) { return fr.apply(fr.euler_power(k), s); };
    for (std::size_t i = 0; i <= n; ++i) {
        TruncatedSeries e0 = along(0, f[i]);
        if (i < n) e0 += Rational(static_cast<long>(i + 1)) * f[i + 1];
        else e0 -= fr.constant(Rational(static_cast<long>(n + 1)));
        r.add(sub("E^0 f", i), e0);
        r.add(sub("E f", i), along(1, f[i]) - Rational(static_cast<long>(n + 1 - i)) * f[i]);
        TruncatedSeries e2 = along(2, f[i]) - f[n] * f[i];
        if (i > 0) e2 -= Rational(static_cast<long>(n + 2 - i)) * f[i - 1];
        r.add(sub("E^2 f", i), e2);
    }
    // Directional derivatives against the recursion table.
    auto d = recursion_table(fr, span, 4);
    for (int k = 0; k <= 4; ++k)
        for (std::size_t i = 0; i <= n; ++i)
            r.add("E^" + std::to_string(k) + " " + sub("f", i), along(k, f[i]) - d[static_cast<std::size_t>(k)][i]);
    return r.report("f-recursion", "E^k f_i from the recursion in k");
}

VectorField Z_field(const Frobenius& fr, const EulerSpan& span, int k) {
    VectorField z = fr.zero_field();
    VectorField ek = fr.euler_power(k);
    for (std::size_t i = 0; i <= span.n; ++i) z += fr.apply(ek, span.f[i]) * span.tower[i];
    return z;
}

CheckReport check_z_fields(const Frobenius& fr, const EulerSpan& span) {
    const std::size_t n = span.n;
    Residuals r;
    std::vector<VectorField> z;
    for (std::size_t k = 0; k <= 2 * n + 2; ++k) z.push_back(Z_field(fr, span, static_cast<int>(k)));
    auto add_field = [&](const std::string& where, const VectorField& v) {
        for (std::size_t a = 0; a < v.size(); ++a) r.add(where + "[" + std::to_string(a + 1) + "]", v[a]);
    };
    for (std::size_t k = 0; k <= n; ++k)
        add_field(sub("Z", k), z[k] - fr.product(fr.euler_power(static_cast<int>(k)), z[0]));
    for (std::size_t k = 0; k <= 1; ++k) {
        VectorField rhs = fr.zero_field();
        for (std::size_t i = 0; i <= n; ++i) rhs += span.f[i] * z[i + k];
        add_field(sub("Z", n + 1 + k), z[n + 1 + k] - rhs);
    }
    return r.report("z-fields", "Z_k = E^k . Z_0 and Z_{n+1+k} = sum f_i Z_{i+k}");
}

CheckReport check_z_annihilates_h2(const Genus1& g, const EulerSpan& span) {
    const Frobenius& fr = g.frobenius();
    Residuals r;
    TruncatedSeries h2 = g.h(2);
    for (std::size_t k = 0; k <= span.n; ++k)
        r.add(sub("Z", k) + " h_2", fr.apply(Z_field(fr, span, static_cast<int>(k)), h2));
    return r.report("z-annihilates-h2", "Z_k h_2 = 0");
}

TruncatedSeries philinear_residual(const Genus1& g, const EulerSpan& span, int m) {
    const int n = static_cast<int>(span.n);
    TruncatedSeries res = g.phi(m + n + 1);
    for (int k = 0; k <= n; ++k) res -= span.f[static_cast<std::size_t>(k)] * g.phi(m + k);
    return res;
}

CheckReport check_philinear(const Genus1& g, const EulerSpan& span, int max_m) {
    Residuals r;
    for (int m = 0; m <= max_m; ++m) r.add("m=" + std::to_string(m), philinear_residual(g, span, m));
    return r.report("philinear", "phi_{m+n+1} = sum f_k phi_{m+k}");
}

std::vector<TruncatedSeries> relation_polynomial(const EulerSpan& span) {
    std::vector<TruncatedSeries> p;
    for (const auto& fi : span.f) p.push_back(-fi);
    const auto& t = span.f[0];
    p.push_back(TruncatedSeries::constant(t.table(), 1, t.valid_order()));
    return p;
}

SeriesMatrix resultant_matrix(const Frobenius& fr, const EulerSpan& span) {
    const std::size_t n = span.n;
    auto d = recursion_table(fr, span, static_cast<int>(n));
    SeriesMatrix a(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) a[i].push_back(d[n - i][n - j]);
    return a;
}

ResultantEvidence resultant_criterion(const Frobenius& fr, const EulerSpan& span) {
    ResultantEvidence ev;
    auto p = relation_polynomial(span);
    ev.resultant = resultant(p, polynomial_derivative(p));
    ev.det_a = determinant(resultant_matrix(fr, span));
    ev.agree = (ev.resultant - ev.det_a).is_zero();
    ev.nonzero = !ev.resultant.is_zero();
    return ev;
}

SemisimplicityEvidence semisimplicity_check(const Frobenius& fr, const EulerSpan& span) {
    SemisimplicityEvidence ev;
    const std::size_t dim = fr.size();
    // With a smaller Euler span the minimal polynomial has lower degree than N,
    // so E. has a repeated eigenvalue and the characteristic polynomial is not square-free.
    if (span.n + 1 < dim) return ev;
    SeriesMatrix m(dim, SeriesVector(dim));
    const VectorField& e = fr.euler();
    for (std::size_t b = 0; b < dim; ++b) {
        VectorField col = fr.product(e, fr.gamma(b));
        for (std::size_t a = 0; a < dim; ++a) m[a][b] = col[a];
    }
    ev.characteristic = characteristic_polynomial(m);
    auto p = relation_polynomial(span);
    bool same = true;
    for (std::size_t i = 0; i < p.size(); ++i) same = same && (ev.characteristic[i] - p[i]).is_zero();
    ev.matches_relation = same;
    ev.square_free = !resultant(ev.characteristic, polynomial_derivative(ev.characteristic)).is_zero();
    return ev;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SemisimpleType: return "semisimple-type";
        case Verdict::NonDegenerate: return "non-degenerate";
        case Verdict::Degenerate: return "degenerate";
        case Verdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

Classification classify(const Frobenius& fr, std::optional<int> mmax) {
    Classification c;
    EulerSpan span;
    try {
        span = minimal_euler_relation(fr);
    } catch (const TruncationError& e) {
        c.witness = e.what();
        return c;
    }
    c.n = span.n;
    const std::size_t dim = span.n + 1;
    ResultantEvidence res = resultant_criterion(fr, span);
    c.resultant_agrees = res.agree;
    SemisimplicityEvidence ss = semisimplicity_check(fr, span);

    if (dim <= 2) {
        c.verdict = Verdict::NonDegenerate;
        c.witness = "Euler span dimension " + std::to_string(dim) + " <= 2";
    } else if (res.nonzero) {
        c.verdict = Verdict::NonDegenerate;
        auto t = res.resultant.lowest_term();
        c.witness = "resultant leading term " + to_string(t->coeff) + "*" + format_monomial(t->monomial, fr.table());
    } else {
        const int limit = mmax.value_or(2 * static_cast<int>(span.n) + 2);
        std::vector<VectorField> basis = {fr.euler_power(0)};
        for (std::size_t k = 0; k <= span.n; ++k) basis.push_back(Z_field(fr, span, static_cast<int>(k)));
        std::vector<SeriesVector> rows;
        for (const auto& b : basis) rows.push_back(b.components());
        const std::size_t base_rank = coefficient_rank(rows, min_valid_order(rows));
        const int precision = min_valid_order(rows);
        for (int m = 1; m <= limit; ++m) {
            if (!in_generic_span(basis, fr.euler_power(m), base_rank)) continue;
            // E^m can differ from the span first in degree m - 1 when E is nilpotent
            // modulo the identity at the base point; an equal rank below that proves nothing.
            if (precision < m) {
                c.witness = "E^" + std::to_string(m) + " indistinguishable from span{E^0, Z_0..Z_n} at order " +
                            std::to_string(precision) + "; raise the order";
            } else {
                c.verdict = Verdict::NonDegenerate;
                c.witness = "E^" + std::to_string(m) + " lies in span{E^0, Z_0..Z_n}";
            }
            break;
        }
        if (c.verdict == Verdict::Undetermined && c.witness.empty()) {
            c.verdict = Verdict::Degenerate;
            c.witness = "span{E^0, Z_0..Z_n} has rank " + std::to_string(base_rank) + " and misses E^1..E^" +
                        std::to_string(limit);
        }
    }
    if (ss.square_free && c.verdict == Verdict::NonDegenerate) {
        c.semisimple = true;
        c.verdict = Verdict::SemisimpleType;
    }
    return c;
}

}  // namespace frobvir
