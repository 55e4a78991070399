#include "frobvir/linalg.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>

#include "frobvir/errors.hpp"

namespace frobvir {

RationalMatrix identity_matrix(std::size_t n) {
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& input) {
    const std::size_t n = input.size();
    RationalMatrix a = input;
    RationalMatrix inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational scale = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || sgn(a[i][col]) == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::size_t rank(RationalMatrix a) {
    std::size_t r = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (sgn(a[i][col]) == 0) continue;
            Rational f = a[i][col] / a[r][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

RationalMatrix transpose(const RationalMatrix& m) {
    if (m.empty()) return {};
    RationalMatrix t(m[0].size(), std::vector<Rational>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    RationalMatrix c(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RationalMatrix constant_part(const SeriesMatrix& m) {
    RationalMatrix c(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& s : m[i]) c[i].push_back(s.constant_term());
    return c;
}

TruncatedSeries homogeneous_part(const TruncatedSeries& s, int degree) {
    SeriesBuilder b(s.table(), s.valid_order());
    for (const auto& t : s.terms())
        if (t.degree == degree) b.add(t.monomial, t.coeff);
    return std::move(b).build();
}

int min_valid_order(const SeriesVector& v) {
    int order = std::numeric_limits<int>::max();
    for (const auto& s : v) order = std::min(order, s.valid_order());
    return order;
}

int min_valid_order(const SeriesMatrix& m) {
    int order = std::numeric_limits<int>::max();
    for (const auto& row : m) order = std::min(order, min_valid_order(row));
    return order;
}

SeriesVector multiply(const SeriesMatrix& a, const SeriesVector& x) {
    SeriesVector out;
    out.reserve(a.size());
    for (const auto& row : a) {
        if (row.size() != x.size()) throw StructuralError("matrix-vector size mismatch");
        int order = std::min(min_valid_order(row), min_valid_order(x));
        SeriesBuilder b(x.at(0).table(), order);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero() || x[j].is_zero()) continue;
            b.add_series(row[j] * x[j]);
        }
        out.push_back(std::move(b).build());
    }
    return out;
}

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    int order = std::min(min_valid_order(a), min_valid_order(b));
    const VariableTable& table = a.at(0).at(0).table();
    SeriesMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            SeriesBuilder acc(table, order);
            for (std::size_t l = 0; l < k; ++l) {
                if (a[i][l].is_zero() || b[l][j].is_zero()) continue;
                acc.add_series(a[i][l] * b[l][j]);
            }
            c[i].push_back(std::move(acc).build());
        }
    return c;
}

// ------------------------------------------------------------ generic rank

namespace {

using Univariate = std::vector<Rational>;  // coefficients of lambda^0..

int valuation(const Univariate& u, int precision) {
    for (int i = 0; i < precision && i < static_cast<int>(u.size()); ++i)
        if (sgn(u[static_cast<std::size_t>(i)]) != 0) return i;
    return precision;
}

// Inverse of a unit modulo lambda^precision.
Univariate unit_inverse(const Univariate& u, int precision) {
    Univariate inv(static_cast<std::size_t>(precision));
    Rational a0inv = 1 / u[0];
    for (int k = 0; k < precision; ++k) {
        Rational sum = k == 0 ? Rational(1) : Rational(0);
        for (int i = 1; i <= k && i < static_cast<int>(u.size()); ++i)
            sum -= u[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
        inv[static_cast<std::size_t>(k)] = sum * a0inv;
    }
    return inv;
}

Univariate mul_trunc(const Univariate& a, const Univariate& b, int precision) {
    Univariate c(static_cast<std::size_t>(precision));
    for (int i = 0; i < precision && i < static_cast<int>(a.size()); ++i) {
        if (sgn(a[static_cast<std::size_t>(i)]) == 0) continue;
        for (int j = 0; i + j < precision && j < static_cast<int>(b.size()); ++j)
            c[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return c;
}

std::size_t rank_along_line(std::vector<std::vector<Univariate>> m, int precision) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::vector<bool> row_used(rows, false), col_used(cols, false);
    std::size_t r = 0;
    while (precision > 0) {
        int best = precision;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i]) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_used[j]) continue;
                int v = valuation(m[i][j], precision);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (best >= precision) break;
        const int v = best;
        const int next = precision - v;
        Univariate unit(m[pi][pj].begin() + v, m[pi][pj].begin() + precision);
        Univariate uinv = unit_inverse(unit, next);
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i] || i == pi) continue;
            Univariate shifted(m[i][pj].begin() + v, m[i][pj].begin() + precision);
            Univariate factor = mul_trunc(shifted, uinv, next);
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_used[j]) continue;
                Univariate prod = mul_trunc(factor, m[pi][j], next);
                m[i][j].resize(static_cast<std::size_t>(next));
                for (int k = 0; k < next; ++k) m[i][j][static_cast<std::size_t>(k)] -= prod[static_cast<std::size_t>(k)];
            }
        }
        row_used[pi] = true;
        col_used[pj] = true;
        precision = next;
        ++r;
    }
    return r;
}

}  // namespace

std::size_t coefficient_rank(const std::vector<SeriesVector>& vectors, int order) {
    if (vectors.empty()) throw StructuralError("coefficient_rank: empty input");
    const std::size_t width = vectors[0].size();
    if (width == 0) return 0;
    const VariableTable& table = vectors[0][0].table();
    int precision = order;
    for (const auto& v : vectors) {
        if (v.size() != width) throw StructuralError("coefficient_rank: vectors of different sizes");
        for (const auto& s : v) {
            if (!(s.table() == table)) throw StructuralError("coefficient_rank: variable table mismatch");
            precision = std::min(precision, s.valid_order());
        }
    }
    precision += 1;  // coefficients of lambda^0..lambda^order are exact

    std::mt19937_64 rng(0x6a09e667f3bcc908ULL);
    std::uniform_int_distribution<long> numerator(1, 97), denominator(1, 11);
    std::size_t best = 0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Rational> direction;
        for (std::size_t i = 0; i < table.size(); ++i) {
            long p = numerator(rng), q = denominator(rng);
            direction.push_back(rational(attempt % 2 == 0 ? p : -p, q));
        }
        std::vector<std::vector<Univariate>> m;
        for (const auto& v : vectors) {
            std::vector<Univariate> row;
            for (const auto& s : v) {
                Univariate u = restrict_to_line(s.truncated(precision - 1), direction);
                u.resize(static_cast<std::size_t>(precision));
                row.push_back(std::move(u));
            }
            m.push_back(std::move(row));
        }
        best = std::max(best, rank_along_line(std::move(m), precision));
        if (best == std::min(vectors.size(), width)) break;
    }
    return best;
}

// ------------------------------------------------------- series linear solve

SeriesVector solve_series_system(const SeriesMatrix& a, const SeriesVector& b) {
    const std::size_t rows = a.size();
    if (rows != b.size()) throw StructuralError("solve_series_system: row count mismatch");
    if (rows == 0) return {};
    const std::size_t cols = a[0].size();
    if (cols > rows) throw StructuralError("solve_series_system: more unknowns than equations");
    const VariableTable& table = b[0].table();
    const int order = std::min(min_valid_order(a), min_valid_order(b));

    // Greedy choice of rows whose constant parts are independent.
    RationalMatrix a0 = constant_part(a);
    std::vector<std::size_t> chosen;
    RationalMatrix basis;
    for (std::size_t i = 0; i < rows && chosen.size() < cols; ++i) {
        RationalMatrix trial = basis;
        trial.push_back(a0[i]);
        if (rank(trial) == trial.size()) {
            basis = std::move(trial);
            chosen.push_back(i);
        }
    }
    if (chosen.size() < cols)
        throw SingularLeadingMatrixError(
            "leading coefficient matrix is singular at the base point; recenter the model at a generic point");
    auto inv = inverse(basis);
    SeriesMatrix a_rows;
    SeriesVector b_rows;
    for (std::size_t i : chosen) {
        a_rows.push_back(a[i]);
        b_rows.push_back(b[i].truncated(order));
    }

    SeriesVector x(cols, TruncatedSeries(table, order));
    for (int degree = 0; degree <= order; ++degree) {
        SeriesVector ax = multiply(a_rows, x);
        std::vector<TruncatedSeries> r;
        for (std::size_t i = 0; i < cols; ++i) r.push_back(homogeneous_part(b_rows[i] - ax[i], degree));
        for (std::size_t i = 0; i < cols; ++i) {
            SeriesBuilder acc(table, order);
            acc.add_series(x[i]);
            for (std::size_t j = 0; j < cols; ++j)
                if (sgn((*inv)[i][j]) != 0) acc.add_series(r[j], (*inv)[i][j]);
            x[i] = std::move(acc).build();
        }
    }

    SeriesVector check = multiply(a, x);
    int lowest = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < rows; ++i) {
        auto t = (b[i] - check[i]).lowest_term();
        if (t) lowest = std::min(lowest, t->degree);
    }
    if (lowest != std::numeric_limits<int>::max())
        throw InconsistentSystemError("series system is inconsistent at weighted order " + std::to_string(lowest));
    return x;
}

// ------------------------------------------------------------- determinants

TruncatedSeries determinant(const SeriesMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw StructuralError("determinant of an empty matrix");
    if (n > 20) throw StructuralError("determinant: matrix too large for subset expansion");
    const VariableTable& table = m[0][0].table();
    const int order = min_valid_order(m);
    std::vector<std::optional<TruncatedSeries>> dp(std::size_t{1} << n);
    dp[0] = TruncatedSeries::constant(table, 1, order);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (!dp[mask] || dp[mask]->is_zero()) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        if (row == n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            if (m[row][j].is_zero()) continue;
            int inversions = std::popcount(mask >> (j + 1));
            TruncatedSeries term = *dp[mask] * m[row][j];
            if (inversions % 2) term = -term;
            auto& slot = dp[mask | (std::size_t{1} << j)];
            if (slot) *slot += term;
            else slot = std::move(term);
        }
    }
    auto& full = dp.back();
    return full ? *full : TruncatedSeries(table, order);
}

SeriesVector characteristic_polynomial(const SeriesMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) throw StructuralError("characteristic polynomial of an empty matrix");
    const VariableTable& table = a[0][0].table();
    const int order = min_valid_order(a);
    SeriesVector c(n + 1, TruncatedSeries(table, order));
    c[n] = TruncatedSeries::constant(table, 1, order);
    SeriesMatrix mk(n, SeriesVector(n, TruncatedSeries(table, order)));
    for (std::size_t k = 1; k <= n; ++k) {
        SeriesMatrix next = multiply(a, mk);
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        mk = std::move(next);
        SeriesBuilder trace(table, order);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (!a[i][l].is_zero() && !mk[l][i].is_zero()) trace.add_series(a[i][l] * mk[l][i]);
        c[n - k] = std::move(trace).build() * rational(-1, static_cast<long>(k));
    }
    return c;
}

SeriesMatrix sylvester_matrix(const SeriesVector& p, const SeriesVector& q) {
    if (p.size() < 2 && q.size() < 2) throw StructuralError("sylvester_matrix: both polynomials constant");
    const std::size_t m = p.size() - 1, n = q.size() - 1, size = m + n;
    const VariableTable& table = p[0].table();
    const int order = std::min(min_valid_order(p), min_valid_order(q));
    SeriesMatrix s(size, SeriesVector(size, TruncatedSeries(table, order)));
    // Rows 0..n-1 carry shifted copies of p, rows n.. of q; highest coefficient first.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) s[i][i + k] = p[m - k].truncated(order);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) s[n + i][i + k] = q[n - k].truncated(order);
    return s;
}

TruncatedSeries resultant(const SeriesVector& p, const SeriesVector& q) {
    if (p.size() == 1) return q.size() == 1 ? TruncatedSeries::constant(p[0].table(), 1, p[0].valid_order()) : p[0];
    if (q.size() == 1) {
        // res(p, c) = c^deg p
        TruncatedSeries r = TruncatedSeries::constant(q[0].table(), 1, q[0].valid_order());
        for (std::size_t i = 1; i < p.size(); ++i) r = r * q[0];
        return r;
    }
    return determinant(sylvester_matrix(p, q));
}

SeriesVector polynomial_derivative(const SeriesVector& p) {
    SeriesVector d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    if (d.empty() && !p.empty()) d.push_back(TruncatedSeries(p[0].table(), p[0].valid_order()));
    return d;
}

}  // namespace frobvir
