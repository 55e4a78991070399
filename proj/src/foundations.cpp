#include "frobvir/foundations.hpp"

#include <map>

#include "frobvir/errors.hpp"

namespace frobvir {

namespace {

std::string idx(std::initializer_list<std::size_t> list) {
    std::string s = "(";
    bool first = true;
    for (std::size_t i : list) {
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + ")";
}

}  // namespace

std::vector<std::size_t> sample_indices(const Frobenius& fr) {
    const std::size_t n = fr.size();
    std::vector<std::size_t> out;
    if (n <= 6) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(i);
    } else {
        out = {0, 1, 2, n - 2, n - 1};
    }
    return out;
}

std::vector<VectorField> default_samples(const Frobenius& fr) {
    std::vector<VectorField> s;
    for (std::size_t i : sample_indices(fr)) s.push_back(fr.gamma(i));
    s.push_back(fr.euler());
    s.push_back(fr.euler_power(2));
    return s;
}

std::vector<std::pair<std::string, TruncatedSeries>> wdvv_residuals(const Frobenius& fr) {
    const std::size_t n = fr.size();
    // third[a][b][r] = <<gamma_a gamma_b gamma_r>>, raised[a][b] = gamma_a . gamma_b.
    std::vector<std::vector<std::vector<TruncatedSeries>>> third(n, std::vector<std::vector<TruncatedSeries>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t r = 0; r < n; ++r) third[a][b].push_back(fr.partial(0, {a, b, r}));
    std::vector<std::vector<std::vector<TruncatedSeries>>> raised(n, std::vector<std::vector<TruncatedSeries>>(n));
    const auto& inv = fr.eta_inverse();
    const int order = fr.order() - 3;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t s = 0; s < n; ++s) {
                SeriesBuilder acc(fr.table(), order);
                for (std::size_t r = 0; r < n; ++r)
                    if (sgn(inv[s][r]) != 0 && !third[a][b][r].is_zero()) acc.add_series(third[a][b][r], inv[s][r]);
                raised[a][b].push_back(std::move(acc).build());
            }
    auto contraction = [&](std::size_t a, std::size_t b, std::size_t m, std::size_t v) {
        SeriesBuilder acc(fr.table(), order);
        for (std::size_t r = 0; r < n; ++r) {
            const auto& x = raised[a][b][r];
            const auto& y = third[r][m][v];
            if (x.is_zero() || y.is_zero()) continue;
            acc.add_series(x * y);
        }
        return std::move(acc).build();
    };
    std::vector<std::pair<std::string, TruncatedSeries>> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t v = a + 1; v < n; ++v)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t m = b + 1; m < n; ++m)
                    out.emplace_back(idx({a, b, m, v}), contraction(a, b, m, v) - contraction(a, m, b, v));
    return out;
}

CheckReport check_wdvv(const Frobenius& fr, std::optional<int> order) {
    Residuals r;
    for (auto& [where, s] : wdvv_residuals(fr)) r.add(where, order ? s.truncated(*order) : s);
    // A single class has no residual to form; the identity holds to the third-derivative order.
    if (fr.size() == 1) r.add("(1,1,1,1)", TruncatedSeries(fr.table(), order.value_or(fr.order() - 3)));
    return r.report("wdvv", "associativity of the quantum product");
}

CheckReport check_string(const Frobenius& fr) {
    const std::size_t n = fr.size();
    Residuals r;
    VectorField one = fr.gamma(0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            r.add("<<1 " + idx({a, b}) + ">>",
                  fr.corr0(one, fr.gamma(a), fr.gamma(b)) - fr.constant(fr.model().eta[a][b]));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c) r.add("<<1 " + idx({a, b, c}) + ">>", fr.partial(0, {0, a, b, c}));
    if (fr.order() >= 5)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                for (std::size_t c = b; c < n; ++c)
                    for (std::size_t d = c; d < n; ++d)
                        r.add("<<1 " + idx({a, b, c, d}) + ">>", fr.partial(0, {0, a, b, c, d}));
    return r.report("string", "string equation for genus-0 correlators");
}

CheckReport check_quantum_product(const Frobenius& fr) {
    Residuals r;
    auto samples = default_samples(fr);
    VectorField one = fr.gamma(0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        VectorField left = fr.product(one, samples[i]) - samples[i];
        for (std::size_t a = 0; a < fr.size(); ++a) r.add("1.v" + std::to_string(i + 1), left[a]);
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            VectorField c = fr.product(samples[i], samples[j]) - fr.product(samples[j], samples[i]);
            for (std::size_t a = 0; a < fr.size(); ++a)
                r.add("v" + std::to_string(i + 1) + ".v" + std::to_string(j + 1), c[a]);
        }
    }
    return r.report("quantum-product", "identity and commutativity of the quantum product");
}

CheckReport check_quasi_homogeneity(const Frobenius& fr) {
    const std::size_t n = fr.size();
    const auto& b = fr.b();
    const auto& c = fr.chern_lowered();
    const VectorField& e = fr.euler();
    Residuals r;

    // (i)
    {
        SeriesBuilder quad(fr.table(), fr.order());
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t d = 0; d < n; ++d)
                if (sgn(c[a][d]) != 0) quad.add_series(fr.coordinate(a) * fr.coordinate(d), c[a][d] / 2);
        r.add("(i)", fr.corr0(e) - fr.model().f0 * (2 * (b[0] + 1)) - std::move(quad).build());
    }
    // (ii), (iii)
    for (std::size_t a = 0; a < n; ++a) {
        VectorField ga = fr.gamma(a);
        SeriesBuilder lin(fr.table(), fr.order());
        for (std::size_t d = 0; d < n; ++d)
            if (sgn(c[a][d]) != 0) lin.add_series(fr.coordinate(d), c[a][d]);
        r.add("(ii)" + idx({a}), fr.corr0(e, ga) - fr.corr0(ga) * (b[a] + b[0] + 1) - std::move(lin).build());
        for (std::size_t d = a; d < n; ++d) {
            VectorField gd = fr.gamma(d);
            r.add("(iii)" + idx({a, d}),
                  fr.corr0(e, ga, gd) - fr.constant(c[a][d]) - fr.corr0(ga, gd) * (b[a] + b[d]));
        }
    }
    // (iv), (v) on sorted index tuples
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t d = a; d < n; ++d)
            for (std::size_t m = d; m < n; ++m) {
                VectorField ga = fr.gamma(a), gd = fr.gamma(d), gm = fr.gamma(m);
                r.add("(iv)" + idx({a, d, m}),
                      fr.corr0(e, ga, gd, gm) - fr.partial(0, {a, d, m}) * (b[a] + b[d] + b[m] - b[0] - 1));
                if (fr.order() < 5) continue;
                for (std::size_t v = m; v < n; ++v) {
                    TruncatedSeries four = fr.partial(0, {a, d, m, v});
                    VectorField gv = fr.gamma(v);
                    TruncatedSeries lhs = fr.corr0(e, ga, gd, gm, gv);
                    r.add("(v)" + idx({a, d, m, v}), lhs - four * (b[a] + b[d] + b[m] + b[v] - 2 * b[0] - 2));
                }
            }
    return r.report("quasi-homogeneity", "Euler-field homogeneity of genus-0 correlators");
}

CheckReport check_euler_coefficients(const Frobenius& fr, int max_k) {
    Residuals r;
    for (int k = 0; k <= max_k; ++k) {
        VectorField diff = fr.euler_power(k) - fr.euler_coefficients(k);
        for (std::size_t a = 0; a < fr.size(); ++a) r.add("E^" + std::to_string(k) + idx({a}), diff[a]);
    }
    return r.report("euler-coefficients", "components of E^k as <<gamma_1 E^k gamma^a>>");
}

CheckReport check_euler_bracket(const Frobenius& fr, int k, int m) {
    Residuals r;
    VectorField lhs = fr.bracket(fr.euler_power(k), fr.euler_power(m));
    if (m + k - 1 >= 0 && m != k) lhs -= Rational(m - k) * fr.euler_power(m + k - 1);
    for (std::size_t a = 0; a < fr.size(); ++a) r.add("component" + idx({a}), lhs[a]);
    return r.report("euler-bracket(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")",
                    "[E^k, E^m] = (m-k) E^{m+k-1}");
}

CheckReport check_derivative_identities(const Frobenius& fr, const std::vector<VectorField>& given) {
    const std::vector<VectorField> samples = given.empty() ? default_samples(fr) : given;
    const auto indices = sample_indices(fr);
    const auto& b = fr.b();
    const std::size_t n = fr.size();
    Residuals r;
    auto label = [](const char* what, std::size_t i, std::size_t j, std::size_t k) {
        return std::string(what) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
               std::to_string(k + 1) + ")";
    };

    // Product rule for the flat connection.
    for (std::size_t u = 0; u < samples.size(); ++u)
        for (std::size_t v = 0; v < samples.size(); ++v)
            for (std::size_t w = v; w < samples.size(); ++w) {
                const auto &U = samples[u], &V = samples[v], &W = samples[w];
                const VectorField* args[] = {&U, &V, &W};
                VectorField res = fr.covariant(U, fr.product(V, W)) - fr.product(fr.covariant(U, V), W) -
                                  fr.product(V, fr.covariant(U, W)) - fr.contract(0, args);
                for (std::size_t a = 0; a < n; ++a) r.add(label("product-rule", u, v, w), res[a]);
            }

    // Euler derivative of 3-point functions.
    for (std::size_t v = 0; v < samples.size(); ++v)
        for (std::size_t a : indices)
            for (std::size_t c : indices) {
                if (c < a) continue;
                VectorField ga = fr.gamma(a), gc = fr.gamma(c);
                r.add(label("euler-derivative", v, a, c),
                      fr.apply(samples[v], fr.corr0(fr.euler(), ga, gc)) -
                          fr.corr0(samples[v], ga, gc) * (b[a] + b[c]));
            }

    // Derivative of <<gamma^a E^i gamma_b>> along E^k.
    auto raised3 = [&](std::size_t a, int i, std::size_t c) {
        VectorField up = fr.gamma_up(a), ei = fr.euler_power(i), gc = fr.gamma(c);
        return fr.corr0(up, ei, gc);
    };
    for (int i = 1; i <= 2; ++i)
        for (int k = 1; k <= 2; ++k)
            for (std::size_t a : indices)
                for (std::size_t c : indices) {
                    TruncatedSeries lhs = fr.apply(fr.euler_power(k), raised3(a, i, c));
                    TruncatedSeries rhs = raised3(a, k + i - 1, c) * (b[c] - b[a] + i);
                    for (int j = 1; j <= std::min(i, k) - 1; ++j)
                        for (std::size_t mu = 0; mu < n; ++mu) {
                            if (sgn(b[mu]) == 0) continue;
                            rhs -= raised3(a, j, mu) * raised3(mu, k + i - 1 - j, c) * b[mu];
                            rhs += raised3(a, k + i - 1 - j, mu) * raised3(mu, j, c) * b[mu];
                        }
                    r.add("euler-power-derivative(i=" + std::to_string(i) + ",k=" + std::to_string(k) + ")" +
                              idx({a, c}),
                          lhs - rhs);
                }

    // Exchange identities obtained by differentiating associativity.
    const VectorField& e = fr.euler();
    VectorField e2 = fr.euler_power(2);
    VectorField last = fr.gamma(n - 1);
    std::vector<std::pair<const VectorField*, const VectorField*>> uv = {{&e, &e}, {&e, &e2}, {&last, &e}};
    std::vector<VectorField> w;
    for (std::size_t a : indices) w.push_back(fr.gamma(a));
    w.push_back(e);
    for (const auto& [u, v] : uv) {
        for (std::size_t x = 0; x < w.size(); ++x)
            for (std::size_t y = 0; y < w.size(); ++y)
                for (std::size_t z = 0; z < w.size(); ++z) {
                    const VectorField *w1 = &w[x], *w2 = &w[y], *w3 = &w[z];
                    auto side = [&](const VectorField* p, const VectorField* q) {
                        return fr.pair(0, {p, w1, w2}, 0, {q, w3}) + fr.pair(0, {p, w1}, 0, {q, w2, w3});
                    };
                    r.add(label("exchange-4", x, y, z), side(u, v) - side(v, u));
                }
        // Five-field version on a fixed set of index patterns.
        const std::size_t m = w.size();
        for (std::size_t t = 0; t < m; ++t) {
            const VectorField *w1 = &w[t], *w2 = &w[(t + 1) % m], *w3 = &w[(t + 2) % m], *w4 = &w[(t + 3) % m];
            auto side = [&](const VectorField* p, const VectorField* q) {
                return fr.pair(0, {p, w1, w2}, 0, {q, w3, w4}) + fr.pair(0, {p, w1, w3}, 0, {q, w2, w4}) +
                       fr.pair(0, {p, w1, w2, w3}, 0, {q, w4}) + fr.pair(0, {p, w1}, 0, {q, w2, w3, w4});
            };
            r.add("exchange-5(" + std::to_string(t + 1) + ")", side(u, v) - side(v, u));
        }
    }

    // Half-sum of b over traces.
    auto half_sum = [&](int genus, std::vector<const VectorField*> extra, const std::string& where) {
        SeriesBuilder weighted(fr.table(), fr.order());
        SeriesBuilder plain(fr.table(), fr.order());
        for (std::size_t a = 0; a < n; ++a) {
            VectorField lo = fr.gamma(a), up = fr.gamma_up(a);
            std::vector<const VectorField*> args = {&lo, &up};
            args.insert(args.end(), extra.begin(), extra.end());
            TruncatedSeries c = fr.correlator(genus, args);
            weighted.add_series(c, b[a]);
            plain.add_series(c, Rational(1, 2));
        }
        r.add(where, std::move(weighted).build() - std::move(plain).build());
    };
    half_sum(0, {}, "half-sum<<>>");
    half_sum(0, {&e}, "half-sum<<E>>");
    half_sum(0, {&e, &e}, "half-sum<<EE>>");
    for (std::size_t a : indices) {
        VectorField g = fr.gamma(a);
        half_sum(0, {&g}, "half-sum<<" + idx({a}) + ">>");
    }
    if (fr.has_genus1()) {
        half_sum(1, {}, "half-sum genus 1");
        half_sum(1, {&e}, "half-sum genus 1 <<E>>");
    }
    return r.report("derivative-identities", "flat-connection derivative identities for correlators");
}

Rational borisov_residual(const ModelSpec& model) {
    auto b = b_weights(model);
    Rational sum = 0;
    for (const auto& x : b) sum += x * (1 - x);
    return sum / 2 - (b[0] + 1) * model.euler_char / 12 + model.c1_cd1 / 12;
}

CheckReport check_borisov(const Frobenius& fr) {
    Residuals r;
    r.add_scalar("scalar", borisov_residual(fr.model()));
    CheckReport rep = r.report("borisov", "1/2 sum b(1-b) - (b_1+1) chi/12 = -(1/12) int c1 c_{d-1}");
    auto b = b_weights(fr.model());
    Rational lhs = 0;
    for (const auto& x : b) lhs += x * (1 - x);
    lhs = lhs / 2 - (b[0] + 1) * fr.model().euler_char / 12;
    rep.note = "lhs " + to_string(lhs) + ", rhs " + to_string(-fr.model().c1_cd1 / 12);
    return rep;
}

}  // namespace frobvir
