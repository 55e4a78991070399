#include "frobvir/frobenius.hpp"

#include <algorithm>
#include <functional>

#include "frobvir/errors.hpp"

namespace frobvir {

Frobenius::Frobenius(ModelSpec model) : model_(std::move(model)), n_(model_.basis.size()) {
    validate(model_);
    b_ = b_weights(model_);
    eta_inv_ = *inverse(model_.eta);
    chern_low_ = multiply(model_.chern, model_.eta);

    std::vector<TruncatedSeries> e;
    for (std::size_t a = 0; a < n_; ++a) {
        Rational slope = b_[0] + 1 - b_[a];
        e.push_back(constant(model_.chern[0][a]) + coordinate(a) * slope);
    }
    euler_ = VectorField(std::move(e));
    powers_.push_back(gamma(0));
    powers_.push_back(euler_);
}

VectorField Frobenius::gamma(std::size_t alpha) const { return VectorField::basis(table(), n_, alpha, order()); }

VectorField Frobenius::gamma_up(std::size_t alpha) const {
    std::vector<TruncatedSeries> c;
    for (std::size_t b = 0; b < n_; ++b) c.push_back(constant(eta_inv_[alpha][b]));
    return VectorField(std::move(c));
}

VectorField Frobenius::zero_field() const { return VectorField::zero(table(), n_, order()); }

TruncatedSeries Frobenius::constant(const Rational& c) const { return TruncatedSeries::constant(table(), c, order()); }

TruncatedSeries Frobenius::coordinate(std::size_t alpha) const {
    return constant(model_.base_point.at(alpha)) + TruncatedSeries::variable(table(), coordinate_name(alpha), order());
}

Frobenius::DerivativePtr Frobenius::potential_derivative(int genus, const std::string& key) const {
    // Caller holds cache_mutex_.
    auto& cache = derivatives_[genus];
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    DerivativePtr result;
    if (key.empty()) {
        result = std::make_shared<const TruncatedSeries>(genus == 0 ? model_.f0 : *model_.f1);
    } else {
        // Differentiate the parent obtained by dropping the largest index.
        std::string parent = key.substr(0, key.size() - 1);
        DerivativePtr p = potential_derivative(genus, parent);
        auto var = static_cast<std::size_t>(static_cast<unsigned char>(key.back()));
        if (p->is_zero()) {
            int o = p->valid_order() - table().weight(var);
            result = std::make_shared<const TruncatedSeries>(table(), std::max(o, 0));
            if (o < 0) throw TruncationError("correlator needs more derivatives than the valid order allows",
                                             p->valid_order());
        } else {
            result = std::make_shared<const TruncatedSeries>(derivative(*p, var));
        }
    }
    cache.emplace(key, result);
    return result;
}

TruncatedSeries Frobenius::correlator(int genus, std::span<const VectorField* const> args) const {
    if (genus == 1 && !model_.f1) throw CapabilityError("model '" + model_.name + "' has no genus-1 potential");
    if (genus != 0 && genus != 1) throw CapabilityError("only genus 0 and 1 are supported");
    const TruncatedSeries& f = genus == 0 ? model_.f0 : *model_.f1;
    const int k = static_cast<int>(args.size());
    if (k > f.valid_order())
        throw TruncationError(std::to_string(k) + "-point function exceeds the valid order", f.valid_order());
    int order = f.valid_order() - k;
    for (const VectorField* a : args) order = std::min(order, a->valid_order());
    if (k == 0) return f;

    // Symmetric in the arguments: visit the sparsest first to limit branching.
    std::vector<const VectorField*> sorted(args.begin(), args.end());
    auto nonzero = [](const VectorField* v) {
        return std::count_if(v->components().begin(), v->components().end(),
                             [](const auto& s) { return !s.is_zero(); });
    };
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const VectorField* x, const VectorField* y) { return nonzero(x) < nonzero(y); });

    SeriesBuilder acc(table(), order);
    std::function<void(std::size_t, const std::string&, const TruncatedSeries&)> visit =
        [&](std::size_t j, const std::string& key, const TruncatedSeries& coef) {
            DerivativePtr d;
            {
                std::lock_guard lock(cache_mutex_);
                d = potential_derivative(genus, key);
            }
            if (d->is_zero()) return;
            if (j == sorted.size()) {
                acc.add_series(coef * *d);
                return;
            }
            const VectorField& v = *sorted[j];
            for (std::size_t a = 0; a < n_; ++a) {
                if (v[a].is_zero()) continue;
                std::string child = key;
                child.insert(std::upper_bound(child.begin(), child.end(), static_cast<char>(a),
                                              [](char x, char y) {
                                                  return static_cast<unsigned char>(x) <
                                                         static_cast<unsigned char>(y);
                                              }),
                             static_cast<char>(a));
                visit(j + 1, child, coef * v[a]);
            }
        };
    visit(0, std::string(), constant(1).truncated(order));
    return std::move(acc).build();
}

TruncatedSeries Frobenius::trace(int genus, std::span<const VectorField* const> args) const {
    std::vector<const VectorField*> full(args.begin(), args.end());
    full.insert(full.begin(), {nullptr, nullptr});
    TruncatedSeries sum;
    bool first = true;
    for (std::size_t a = 0; a < n_; ++a) {
        VectorField lo = gamma(a), up = gamma_up(a);
        full[0] = &lo;
        full[1] = &up;
        TruncatedSeries term = correlator(genus, full);
        if (first) sum = std::move(term);
        else sum += term;
        first = false;
    }
    return sum;
}

VectorField Frobenius::contract(int genus, std::span<const VectorField* const> args) const {
    std::vector<const VectorField*> full(args.begin(), args.end());
    std::vector<TruncatedSeries> lowered;
    for (std::size_t r = 0; r < n_; ++r) {
        VectorField g = gamma(r);
        full.push_back(&g);
        lowered.push_back(correlator(genus, full));
        full.pop_back();
    }
    int order = lowered[0].valid_order();
    std::vector<TruncatedSeries> comps;
    for (std::size_t s = 0; s < n_; ++s) {
        SeriesBuilder b(table(), order);
        for (std::size_t r = 0; r < n_; ++r)
            if (sgn(eta_inv_[s][r]) != 0) b.add_series(lowered[r], eta_inv_[s][r]);
        comps.push_back(std::move(b).build());
    }
    return VectorField(std::move(comps));
}

TruncatedSeries Frobenius::pair(int gl, std::vector<const VectorField*> lhs, int gr,
                                std::vector<const VectorField*> rhs) const {
    VectorField w = contract(gl, lhs);
    rhs.push_back(&w);
    return correlator(gr, rhs);
}

TruncatedSeries Frobenius::partial(int genus, std::vector<std::size_t> indices) const {
    if (genus == 1 && !model_.f1) throw CapabilityError("model '" + model_.name + "' has no genus-1 potential");
    std::sort(indices.begin(), indices.end());
    std::string key;
    for (std::size_t i : indices) key.push_back(static_cast<char>(i));
    std::lock_guard lock(cache_mutex_);
    return *potential_derivative(genus, key);
}

VectorField Frobenius::product(const VectorField& u, const VectorField& v) const {
    const VectorField* a[] = {&u, &v};
    return contract(0, a);
}

VectorField Frobenius::euler_power(int k) const {
    if (k < 0) throw StructuralError("negative Euler power");
    std::lock_guard lock(power_mutex_);
    while (static_cast<int>(powers_.size()) <= k) powers_.push_back(product(euler_, powers_.back()));
    return powers_[static_cast<std::size_t>(k)];
}

VectorField Frobenius::euler_coefficients(int k) const {
    VectorField ek = euler_power(k);
    VectorField one = gamma(0);
    std::vector<TruncatedSeries> c;
    for (std::size_t a = 0; a < n_; ++a) c.push_back(corr0(one, ek, gamma_up(a)));
    return VectorField(std::move(c));
}

TruncatedSeries Frobenius::apply(const VectorField& u, const TruncatedSeries& f) const {
    if (f.valid_order() < 1) throw TruncationError("directional derivative of an order-0 series", 0);
    SeriesBuilder b(table(), std::min(f.valid_order() - 1, u.valid_order()));
    for (std::size_t a = 0; a < n_; ++a) {
        if (u[a].is_zero()) continue;
        TruncatedSeries d = derivative(f, a);
        if (d.is_zero()) continue;
        b.add_series(u[a] * d);
    }
    return std::move(b).build();
}

VectorField Frobenius::covariant(const VectorField& u, const VectorField& v) const {
    std::vector<TruncatedSeries> c;
    for (std::size_t a = 0; a < n_; ++a) c.push_back(apply(u, v[a]));
    return VectorField(std::move(c));
}

VectorField Frobenius::bracket(const VectorField& u, const VectorField& v) const {
    return covariant(u, v) - covariant(v, u);
}

}  // namespace frobvir
