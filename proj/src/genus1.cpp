#include "frobvir/genus1.hpp"

#include <random>

#include "frobvir/errors.hpp"
#include "frobvir/euler_span.hpp"
#include "frobvir/linalg.hpp"

namespace frobvir {

namespace {

// The six 2-element subsets of {0,1,2,3} with their complements.
constexpr std::size_t kPairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                      {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};

TruncatedSeries add_all(std::vector<TruncatedSeries> terms) {
    TruncatedSeries sum = std::move(terms.at(0));
    for (std::size_t i = 1; i < terms.size(); ++i) sum += terms[i];
    return sum;
}

std::string power_label(int k) { return k == 0 ? "E^0" : (k == 1 ? "E" : "E^" + std::to_string(k)); }

void require_genus1(const Frobenius& fr) {
    if (!fr.has_genus1()) throw CapabilityError("model '" + fr.model().name + "' has no genus-1 potential");
}

}  // namespace

TruncatedSeries Genus1::G0(const VectorField& v1, const VectorField& v2, const VectorField& v3,
                           const VectorField& v4) const {
    const std::array<const VectorField*, 4> v = {&v1, &v2, &v3, &v4};
    const std::size_t n = fr_.size();
    std::vector<TruncatedSeries> terms;

    // (1/6) sum over S4 of <<v v v gamma^a>><<gamma_a v gamma_b gamma^b>>: each v_i in the last slot 6 times.
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<const VectorField*> others;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) others.push_back(v[j]);
        VectorField w = fr_.contract(0, others);
        terms.push_back(fr_.trace0(w, *v[i]));
    }
    // (1/24) sum over S4 of <<v v v v gamma^a>><<gamma_a gamma_b gamma^b>>.
    terms.push_back(fr_.trace0(fr_.contract(0, v)));

    // -(1/4) sum over S4 of <<v v gamma^a gamma^b>><<gamma_a gamma_b v v>>: each split {a,b}|{c,d} 4 times
    // and symmetric under exchange of its halves.
    // u[p][s] = (v_a . v_b . gamma_s) with 4-point contraction, i.e. u[p][s]^r = <<v_a v_b gamma_s gamma^r>>.
    std::vector<std::vector<VectorField>> u(6);
    for (std::size_t p = 0; p < 6; ++p)
        for (std::size_t s = 0; s < n; ++s) {
            VectorField gs = fr_.gamma(s);
            const VectorField* args[] = {v[kPairs[p][0]], v[kPairs[p][1]], &gs};
            u[p].push_back(fr_.contract(0, args));
        }
    for (std::size_t p = 0; p < 3; ++p) {
        const std::size_t q = 5 - p;  // complement pair
        SeriesBuilder acc(fr_.table(), std::min(u[p][0].valid_order(), u[q][0].valid_order()));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) {
                const auto& x = u[p][s][r];
                const auto& y = u[q][r][s];
                if (x.is_zero() || y.is_zero()) continue;
                acc.add_series(x * y, Rational(-2));
            }
        terms.push_back(std::move(acc).build());
    }
    return add_all(std::move(terms));
}

TruncatedSeries Genus1::G1(const VectorField& v1, const VectorField& v2, const VectorField& v3,
                           const VectorField& v4) const {
    require_genus1(fr_);
    const std::array<const VectorField*, 4> v = {&v1, &v2, &v3, &v4};
    std::vector<TruncatedSeries> terms;
    std::vector<VectorField> prod(6);
    for (std::size_t p = 0; p < 6; ++p) prod[p] = fr_.product(*v[kPairs[p][0]], *v[kPairs[p][1]]);

    // 3 <<(v.v)(v.v)>>_1 over S4: each unordered split 8 times.
    for (std::size_t p = 0; p < 3; ++p) terms.push_back(Rational(24) * fr_.corr1(prod[p], prod[5 - p]));
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<const VectorField*> others;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) others.push_back(v[j]);
        // -4 <<(v.v.v) v>>_1: each v_i last 6 times.
        VectorField triple = fr_.product(fr_.product(*others[0], *others[1]), *others[2]);
        terms.push_back(Rational(-24) * fr_.corr1(triple, *v[i]));
        // 2 sum_a <<v v v gamma^a>>_0 <<gamma_a . v>>_1: each v_i last 6 times.
        VectorField w = fr_.contract(0, others);
        terms.push_back(Rational(12) * fr_.corr1(fr_.product(w, *v[i])));
    }
    // -sum_a <<(v.v) v v gamma^a>>_0 <<gamma_a>>_1: each pair {a,b} 4 times.
    for (std::size_t p = 0; p < 6; ++p)
        terms.push_back(Rational(-4) *
                        fr_.pair(0, {&prod[p], v[kPairs[p][2]], v[kPairs[p][3]]}, 1, {}));
    return add_all(std::move(terms));
}

TruncatedSeries Genus1::G1_derivative_form(const VectorField& v1, const VectorField& v2, const VectorField& v3,
                                           const VectorField& v4) const {
    require_genus1(fr_);
    const std::array<const VectorField*, 4> v = {&v1, &v2, &v3, &v4};
    std::vector<TruncatedSeries> terms;
    std::vector<VectorField> prod(6);
    for (std::size_t p = 0; p < 6; ++p) prod[p] = fr_.product(*v[kPairs[p][0]], *v[kPairs[p][1]]);

    // 3 (v.v)<<v.v>>_1: each ordered split 4 times.
    for (std::size_t p = 0; p < 6; ++p)
        terms.push_back(Rational(12) * fr_.apply(prod[p], fr_.corr1(prod[5 - p])));
    // -4 v<<v.v.v>>_1: each v_i outside 6 times.
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<const VectorField*> others;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) others.push_back(v[j]);
        VectorField triple = fr_.product(fr_.product(*others[0], *others[1]), *others[2]);
        terms.push_back(Rational(-24) * fr_.apply(*v[i], fr_.corr1(triple)));
    }
    // -6 <<[v.v, v] . v>>_1: each (pair, third) twice.
    for (std::size_t p = 0; p < 6; ++p)
        for (int side = 0; side < 2; ++side) {
            const VectorField& c = *v[kPairs[p][2 + side]];
            const VectorField& d = *v[kPairs[p][3 - side]];
            terms.push_back(Rational(-12) * fr_.corr1(fr_.product(fr_.bracket(prod[p], c), d)));
        }
    return add_all(std::move(terms));
}

const std::vector<std::vector<TruncatedSeries>>& Genus1::euler_matrix(int j) const {
    {
        std::lock_guard lock(mutex_);
        auto it = matrices_.find(j);
        if (it != matrices_.end()) return it->second;
    }
    VectorField ej = fr_.euler_power(j);
    std::vector<std::vector<TruncatedSeries>> m;
    for (std::size_t a = 0; a < fr_.size(); ++a) m.push_back(fr_.product(fr_.gamma(a), ej).components());
    std::lock_guard lock(mutex_);
    return matrices_.emplace(j, std::move(m)).first->second;
}

const std::vector<TruncatedSeries>& Genus1::trace_vector() const {
    {
        std::lock_guard lock(mutex_);
        if (traces_) return *traces_;
    }
    std::vector<TruncatedSeries> t;
    for (std::size_t a = 0; a < fr_.size(); ++a) t.push_back(fr_.trace0(fr_.gamma(a)));
    std::lock_guard lock(mutex_);
    if (!traces_) traces_ = std::move(t);
    return *traces_;
}

TruncatedSeries Genus1::phi_closed(int m) const {
    if (m < 1) throw StructuralError("closed form needs k >= 1");
    const std::size_t n = fr_.size();
    const auto& b = fr_.b();
    const auto& tau = trace_vector();
    std::vector<const std::vector<std::vector<TruncatedSeries>>*> mats;
    for (int j = 0; j < m; ++j) mats.push_back(&euler_matrix(j));
    int order = (*mats.back())[0][0].valid_order();
    for (const auto* mat : mats) order = std::min(order, (*mat)[0][0].valid_order());
    order = std::min(order, tau[0].valid_order());

    SeriesBuilder acc(fr_.table(), order);
    for (int k = 0; k < m; ++k) {
        const auto& mk = *mats[static_cast<std::size_t>(k)];
        const auto& ml = *mats[static_cast<std::size_t>(m - 1 - k)];
        for (std::size_t a = 0; a < n; ++a) {
            // -(1/24) b_a x_k^a <<gamma_a E^l gamma^b>> tau_b, with x_k^a = <<gamma_1 E^k gamma^a>>.
            if (sgn(b[a]) != 0 && !mk[0][a].is_zero()) {
                SeriesBuilder inner(fr_.table(), order);
                for (std::size_t c = 0; c < n; ++c)
                    if (!ml[a][c].is_zero() && !tau[c].is_zero()) inner.add_series(ml[a][c] * tau[c]);
                TruncatedSeries s = std::move(inner).build();
                if (!s.is_zero()) acc.add_series(mk[0][a] * s, -b[a] / 24);
            }
            // -(1/4) b_a b_c <<gamma_a E^k gamma^c>><<gamma_c E^l gamma^a>>.
            for (std::size_t c = 0; c < n; ++c) {
                Rational w = b[a] * b[c];
                if (sgn(w) == 0 || mk[a][c].is_zero() || ml[c][a].is_zero()) continue;
                acc.add_series(mk[a][c] * ml[c][a], -w / 4);
            }
        }
    }
    const auto& last = *mats.back();
    for (std::size_t s = 0; s < n; ++s) acc.add_series(last[s][s], rational(m, 12));
    return std::move(acc).build();
}

TruncatedSeries Genus1::phi(int k) const {
    if (k < 0) throw StructuralError("phi_k needs k >= 0");
    {
        std::lock_guard lock(mutex_);
        auto it = phi_cache_.find(k);
        if (it != phi_cache_.end()) return it->second;
    }
    TruncatedSeries result;
    if (k == 0) {
        result = fr_.constant(0);
    } else if (k == 1) {
        result = fr_.constant(-fr_.model().c1_cd1 / 24);
    } else if (k == 2) {
        const auto& b = fr_.b();
        const VectorField& e = fr_.euler();
        SeriesBuilder acc(fr_.table(), fr_.order() - 4);
        acc.add_series(fr_.trace0(e, e), rational(-1, 24));
        for (std::size_t a = 0; a < fr_.size(); ++a) {
            Rational w = (b[a] * (1 - b[a]) - (b[0] + 1) / 6) / 2;
            if (sgn(w) == 0) continue;
            acc.add_series(fr_.corr0(fr_.gamma(a), fr_.gamma_up(a)), w);
        }
        result = std::move(acc).build();
    } else {
        result = phi_closed(k);
    }
    std::lock_guard lock(mutex_);
    return phi_cache_.emplace(k, std::move(result)).first->second;
}

TruncatedSeries Genus1::phi_recursive(int k) const {
    if (k < 2) throw StructuralError("recursive form needs k >= 2");
    TruncatedSeries result = rational(k, 2) * fr_.apply(fr_.euler_power(k - 1), phi(2));
    const VectorField& e = fr_.euler();
    for (int i = 1; i <= k - 2; ++i)
        result += rational(1, 48) * G0(fr_.euler_power(k - 1 - i), fr_.euler_power(i), e, e);
    return result;
}

TruncatedSeries Genus1::h(int k) const {
    require_genus1(fr_);
    return fr_.corr1(fr_.euler_power(k)) - phi(k);
}

std::vector<std::array<VectorField, 4>> getzler_samples(const Frobenius& fr) {
    const std::size_t n = fr.size();
    std::vector<std::array<VectorField, 4>> out;
    if (n <= 6) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                for (std::size_t c = b; c < n; ++c)
                    for (std::size_t d = c; d < n; ++d)
                        out.push_back({fr.gamma(a), fr.gamma(b), fr.gamma(c), fr.gamma(d)});
    } else {
        // FNV-1a of the model name seeds the sample.
        std::uint64_t seed = 0xcbf29ce484222325ULL;
        for (unsigned char ch : fr.model().name) seed = (seed ^ ch) * 0x100000001b3ULL;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int i = 0; i < 50; ++i) out.push_back({fr.gamma(pick(rng)), fr.gamma(pick(rng)),
                                                    fr.gamma(pick(rng)), fr.gamma(pick(rng))});
    }
    const VectorField& e = fr.euler();
    VectorField top = fr.gamma(n - 1);
    out.push_back({e, e, e, e});
    out.push_back({fr.euler_power(2), e, e, e});
    out.push_back({top, top, e, e});
    return out;
}

namespace {

std::string quad_label(std::size_t i) { return "sample[" + std::to_string(i) + "]"; }

}  // namespace

CheckReport check_getzler(const Genus1& g, const std::vector<std::array<VectorField, 4>>& given) {
    const Frobenius& fr = g.frobenius();
    require_genus1(fr);
    const auto samples = given.empty() ? getzler_samples(fr) : given;
    Residuals r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& q = samples[i];
        r.add(quad_label(i), g.G0(q[0], q[1], q[2], q[3]) + g.G1(q[0], q[1], q[2], q[3]));
    }
    return r.report("getzler", "G0 + G1 = 0 on sampled quadruples");
}

CheckReport check_prop_G1(const Genus1& g, const std::vector<std::array<VectorField, 4>>& given) {
    const Frobenius& fr = g.frobenius();
    require_genus1(fr);
    const auto samples = given.empty() ? getzler_samples(fr) : given;
    Residuals r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& q = samples[i];
        r.add(quad_label(i), g.G1(q[0], q[1], q[2], q[3]) - g.G1_derivative_form(q[0], q[1], q[2], q[3]));
    }
    return r.report("G1-derivative-form", "G1 through directional derivatives and brackets");
}

CheckReport check_g0g1(const Genus1& g, int m) {
    const Frobenius& fr = g.frobenius();
    require_genus1(fr);
    if (m < 2) throw StructuralError("check needs m >= 2");
    Residuals r;
    const VectorField& e = fr.euler();
    TruncatedSeries lhs = rational(m - 1, 2) * fr.apply(fr.euler_power(m - 2), fr.corr1(fr.euler_power(2))) -
                          fr.corr1(fr.euler_power(m - 1));
    for (int i = 1; i <= m - 3; ++i)
        lhs += rational(1, 48) * g.G0(fr.euler_power(m - 2 - i), fr.euler_power(i), e, e);
    r.add("identity", lhs);

    // G1 on Euler powers (m1, m2, 1, 1) with m1 + m2 = m - 2.
    for (int i = 0; i <= m - 2; ++i) {
        const int ms[4] = {m - 2 - i, i, 1, 1};
        VectorField v[4];
        for (int j = 0; j < 4; ++j) v[j] = fr.euler_power(ms[j]);
        TruncatedSeries res = rational(1, 24) * g.G1(v[0], v[1], v[2], v[3]);
        res -= Rational(2 * ms[0] + m) * fr.corr1(fr.euler_power(m - 1));
        for (int j = 1; j < 4; ++j)
            res -= fr.apply(fr.euler_power(ms[0] + ms[j]), fr.corr1(fr.euler_power(m - ms[0] - ms[j])));
        for (int j = 0; j < 4; ++j) res += fr.apply(v[j], fr.corr1(fr.euler_power(m - ms[j])));
        r.add("euler-quadruple(" + std::to_string(ms[0]) + "," + std::to_string(ms[1]) + ",1,1)", res);
    }
    return r.report("g0g1(m=" + std::to_string(m) + ")",
                    "((m-1)/2) E^{m-2}<<E^2>>_1 - <<E^{m-1}>>_1 = -sum G0(E^{m-2-i}, E^i, E, E)/48");
}

CheckReport check_E0E1F1(const Genus1& g) {
    const Frobenius& fr = g.frobenius();
    require_genus1(fr);
    Residuals r;
    r.add("<<E^0>>_1", fr.corr1(fr.euler_power(0)));
    r.add("<<E>>_1", fr.corr1(fr.euler()) + fr.constant(fr.model().c1_cd1 / 24));
    for (int m = 0; m <= 4; ++m) {
        TruncatedSeries cm = fr.corr1(fr.euler_power(m));
        TruncatedSeries e0 = fr.apply(fr.euler_power(0), cm);
        if (m > 0) e0 -= Rational(m) * fr.corr1(fr.euler_power(m - 1));
        r.add("E^0<<" + power_label(m) + ">>_1", e0);
        r.add("E<<" + power_label(m) + ">>_1", fr.apply(fr.euler(), cm) - Rational(m - 1) * cm);
    }
    return r.report("genus1-string", "<<E^0>>_1 = 0, <<E>>_1 = -c1_cd1/24 and their E^0, E derivatives");
}

CheckReport check_phi_equivalence(const Genus1& g, int k) {
    Residuals r;
    r.add("closed-recursive", g.phi_closed(k) - g.phi_recursive(k));
    if (k == 2) r.add("closed-trace", g.phi_closed(2) - g.phi(2));
    return r.report("phi-equivalence(k=" + std::to_string(k) + ")", "closed and recursive phi_k agree");
}

CheckReport check_phi_virasoro(const Genus1& g, int k, int m) {
    const Frobenius& fr = g.frobenius();
    Residuals r;
    TruncatedSeries res = fr.apply(fr.euler_power(k), g.phi(m)) - fr.apply(fr.euler_power(m), g.phi(k));
    if (m != k && k + m - 1 >= 0) res -= Rational(m - k) * g.phi(k + m - 1);
    r.add("residual", res);
    return r.report("phi-virasoro(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")",
                    "E^k phi_m - E^m phi_k = (m-k) phi_{k+m-1}");
}

CheckReport check_h_representation(const Genus1& g) {
    const Frobenius& fr = g.frobenius();
    require_genus1(fr);
    Residuals r;
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= 3; ++k) {
            TruncatedSeries res = rational(1, m) * fr.apply(fr.euler_power(k), g.h(m));
            if (m > 1) res -= rational(m - 1, m + k - 1) * g.h(m + k - 1);
            r.add("E^" + std::to_string(k) + "(h_" + std::to_string(m) + ")", res);
        }
    for (int k = 2; k <= 5; ++k)
        r.add("h_" + std::to_string(k), g.h(k) - rational(k, 2) * fr.apply(fr.euler_power(k - 1), g.h(2)));
    return r.report("h-representation", "E^k(h_m/m) = (m-1) h_{m+k-1}/(m+k-1) and h_k = (k/2) E^{k-1} h_2");
}

CheckReport genus1_verdict(const Genus1& g) {
    Residuals r;
    r.add("h_2", g.h(2));
    return r.report("genus1-verdict", "E^2 F1 = phi_2");
}

GenusOnePrediction predict_genus1(const Genus1& g) {
    const Frobenius& fr = g.frobenius();
    const std::size_t n = fr.size();
    GenusOnePrediction out;

    std::vector<SeriesVector> tower;
    for (std::size_t k = 0; k < n; ++k) tower.push_back(fr.euler_power(static_cast<int>(k)).components());
    const int rank_order = min_valid_order(tower);
    out.tower_rank = coefficient_rank(tower, rank_order);

    if (out.tower_rank < n) {
        EulerSpan span = minimal_euler_relation(fr);
        out.tower_rank = span.n + 1;
        for (std::size_t k = 0; k <= span.n; ++k) out.constrained.push_back(g.phi(static_cast<int>(k)));
        Residuals r;
        for (int m = 0; m <= 2; ++m) r.add("philinear(m=" + std::to_string(m) + ")", philinear_residual(g, span, m));
        out.report = r.report("predict-genus1", "<<E^k>>_1 = phi_k on the Euler span");
        out.report.note = "underdetermined: tower rank " + std::to_string(out.tower_rank) + " < " + std::to_string(n);
        return out;
    }

    out.unique = true;
    SeriesMatrix a;
    SeriesVector rhs;
    for (std::size_t k = 0; k < n; ++k) {
        a.push_back(tower[k]);
        rhs.push_back(g.phi(static_cast<int>(k)));
    }
    out.gradient = solve_series_system(a, rhs);

    Residuals r;
    for (std::size_t al = 0; al < n; ++al)
        for (std::size_t be = al + 1; be < n; ++be)
            r.add("d" + std::to_string(be + 1) + "g" + std::to_string(al + 1) + "-d" + std::to_string(al + 1) + "g" +
                      std::to_string(be + 1),
                  derivative(out.gradient[al], be) - derivative(out.gradient[be], al));

    // Integrate along t1, then the t1-free part of g2 along t2, and so on.
    std::vector<std::size_t> zeroed;
    TruncatedSeries f1;
    for (std::size_t al = 0; al < n; ++al) {
        TruncatedSeries piece = antiderivative(restrict_to_zero(out.gradient[al], zeroed), al);
        f1 = al == 0 ? piece : f1 + piece;
        zeroed.push_back(al);
    }
    for (std::size_t al = 0; al < n; ++al)
        r.add("d" + std::to_string(al + 1) + "F1", derivative(f1, al) - out.gradient[al]);
    out.f1 = f1;
    out.report = r.report("predict-genus1", "<<E^k>>_1 = phi_k for 0 <= k < N");
    out.report.note = "unique gradient; tower rank " + std::to_string(n);
    return out;
}

}  // namespace frobvir
