#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "frobvir/model.hpp"
#include "frobvir/vector_field.hpp"

namespace frobvir {

/// Correlators, quantum product and Euler powers of a validated model.
///
/// Derivatives of the potentials and Euler powers are memoized behind a mutex;
/// every result equals a fresh recomputation.
class Frobenius {
public:
    explicit Frobenius(ModelSpec model);

    const ModelSpec& model() const noexcept { return model_; }
    std::size_t size() const noexcept { return n_; }
    const VariableTable& table() const noexcept { return model_.f0.table(); }
    /// Valid order of the genus-0 potential.
    int order() const noexcept { return model_.f0.valid_order(); }
    bool has_genus1() const noexcept { return model_.f1.has_value(); }
    const std::vector<Rational>& b() const noexcept { return b_; }
    const RationalMatrix& eta_inverse() const noexcept { return eta_inv_; }
    /// C_{ab} = sum_c C_a^c eta_{cb}.
    const RationalMatrix& chern_lowered() const noexcept { return chern_low_; }

    VectorField gamma(std::size_t alpha) const;
    /// gamma^alpha = sum_b eta^{alpha b} gamma_b.
    VectorField gamma_up(std::size_t alpha) const;
    VectorField zero_field() const;
    TruncatedSeries constant(const Rational& c) const;
    /// The coordinate t^alpha as a series about the base point.
    TruncatedSeries coordinate(std::size_t alpha) const;

    /// <<v1 ... vk>> at genus 0 or 1. Throws CapabilityError for genus 1
    /// without f1, TruncationError when k exceeds the valid order.
    TruncatedSeries correlator(int genus, std::span<const VectorField* const> args) const;

    template <class... V>
    TruncatedSeries corr0(const V&... v) const {
        const VectorField* a[] = {&v...};
        return correlator(0, a);
    }
    template <class... V>
    TruncatedSeries corr1(const V&... v) const {
        const VectorField* a[] = {&v...};
        return correlator(1, a);
    }
    TruncatedSeries corr0() const { return correlator(0, {}); }
    TruncatedSeries corr1() const { return correlator(1, {}); }

    /// sum_alpha <<gamma_alpha gamma^alpha v1 ... vk>> at the given genus.
    TruncatedSeries trace(int genus, std::span<const VectorField* const> args) const;
    template <class... V>
    TruncatedSeries trace0(const V&... v) const {
        const VectorField* a[] = {&v...};
        return trace(0, std::span<const VectorField* const>(a, sizeof...(V)));
    }
    TruncatedSeries trace0() const { return trace(0, {}); }

    /// sum_a <<lhs gamma_a>>_{gl} <<gamma^a rhs>>_{gr}.
    TruncatedSeries pair(int gl, std::vector<const VectorField*> lhs, int gr,
                         std::vector<const VectorField*> rhs) const;

    /// Cached partial derivative of F_g along the given coordinate indices.
    TruncatedSeries partial(int genus, std::vector<std::size_t> indices) const;

    /// (u.v)^s = sum_r eta^{sr} <<u v gamma_r>>.
    VectorField product(const VectorField& u, const VectorField& v) const;
    /// Vector field whose components are sum_r eta^{sr} <<args gamma_r>>.
    VectorField contract(int genus, std::span<const VectorField* const> args) const;

    const VectorField& euler() const noexcept { return euler_; }
    /// k-fold quantum power of E; E^0 = gamma_1.
    VectorField euler_power(int k) const;
    /// x_k^alpha recomputed as <<gamma_1 E^k gamma^alpha>>.
    VectorField euler_coefficients(int k) const;

    /// u(f) = sum_a u^a d_a f.
    TruncatedSeries apply(const VectorField& u, const TruncatedSeries& f) const;
    /// Flat connection: (nabla_u v)^a = u(v^a).
    VectorField covariant(const VectorField& u, const VectorField& v) const;
    VectorField bracket(const VectorField& u, const VectorField& v) const;

private:
    using DerivativePtr = std::shared_ptr<const TruncatedSeries>;
    DerivativePtr potential_derivative(int genus, const std::string& key) const;

    ModelSpec model_;
    std::size_t n_;
    std::vector<Rational> b_;
    RationalMatrix eta_inv_;
    RationalMatrix chern_low_;
    VectorField euler_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::string, DerivativePtr> derivatives_[2];
    mutable std::mutex power_mutex_;
    mutable std::vector<VectorField> powers_;
};

}  // namespace frobvir
