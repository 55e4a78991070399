#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "frobvir/frobenius.hpp"
#include "frobvir/report.hpp"

namespace frobvir {

/// Genus-1 quantities of a model: the 4-tensors G0 and G1, phi_k and h_k.
/// phi_k values are cached; the cache is guarded by a mutex.
class Genus1 {
public:
    explicit Genus1(const Frobenius& fr) : fr_(fr) {}

    const Frobenius& frobenius() const noexcept { return fr_; }

    /// Genus-0 tensor with the 1/6, 1/24, -1/4 weighted sums over S4.
    TruncatedSeries G0(const VectorField& v1, const VectorField& v2, const VectorField& v3,
                       const VectorField& v4) const;
    /// Genus-1 tensor; requires f1.
    TruncatedSeries G1(const VectorField& v1, const VectorField& v2, const VectorField& v3,
                       const VectorField& v4) const;
    /// G1 rewritten through directional derivatives and brackets.
    TruncatedSeries G1_derivative_form(const VectorField& v1, const VectorField& v2, const VectorField& v3,
                                       const VectorField& v4) const;

    /// phi_0 = 0, phi_1 = -c1_cd1/24, phi_2 from its trace form, phi_k (k >= 3) from the closed form.
    TruncatedSeries phi(int k) const;
    /// Closed form built from <<gamma_a E^j gamma^b>> matrices (k >= 1).
    TruncatedSeries phi_closed(int k) const;
    /// phi_k = (k/2) E^{k-1} phi_2 + sum_{i=1}^{k-2} G0(E^{k-1-i}, E^i, E, E)/48 (k >= 2).
    TruncatedSeries phi_recursive(int k) const;
    /// h_k = <<E^k>>_1 - phi_k; requires f1.
    TruncatedSeries h(int k) const;

private:
    /// M[a][b] = <<gamma_a E^j gamma^b>>.
    const std::vector<std::vector<TruncatedSeries>>& euler_matrix(int j) const;
    const std::vector<TruncatedSeries>& trace_vector() const;

    const Frobenius& fr_;
    mutable std::mutex mutex_;
    mutable std::map<int, TruncatedSeries> phi_cache_;
    mutable std::map<int, std::vector<std::vector<TruncatedSeries>>> matrices_;
    mutable std::optional<std::vector<TruncatedSeries>> traces_;
};

/// Sample quadruples for Getzler-type checks: all basis multisets when N <= 6,
/// otherwise 50 pseudo-random ones seeded by the model name; plus a few Euler-power quadruples.
std::vector<std::array<VectorField, 4>> getzler_samples(const Frobenius& fr);

CheckReport check_getzler(const Genus1& g, const std::vector<std::array<VectorField, 4>>& samples = {});
CheckReport check_prop_G1(const Genus1& g, const std::vector<std::array<VectorField, 4>>& samples = {});
/// ((m-1)/2) E^{m-2}<<E^2>>_1 - <<E^{m-1}>>_1 + sum_i G0(E^{m-2-i}, E^i, E, E)/48, together with the
/// Euler-power expansion of G1 on the quadruples (m-2-i, i, 1, 1).
CheckReport check_g0g1(const Genus1& g, int m);
CheckReport check_E0E1F1(const Genus1& g);
/// phi_closed(k) against phi_recursive(k), and phi(2) against phi_closed(2).
CheckReport check_phi_equivalence(const Genus1& g, int k);
/// E^k phi_m - E^m phi_k - (m-k) phi_{k+m-1}.
CheckReport check_phi_virasoro(const Genus1& g, int k, int m);
/// E^k(h_m/m) - (m-1) h_{m+k-1}/(m+k-1) for 1 <= m <= 3, 0 <= k <= 3, and h_k - (k/2) E^{k-1} h_2.
CheckReport check_h_representation(const Genus1& g);
/// PASS iff h_2 vanishes up to the order.
CheckReport genus1_verdict(const Genus1& g);

struct GenusOnePrediction {
    /// True when the Euler tower spans every direction and the gradient is unique.
    bool unique = false;
    /// d_a F1 for every a when unique.
    std::vector<TruncatedSeries> gradient;
    std::optional<TruncatedSeries> f1;
    /// Rank of the Euler tower at a generic point.
    std::size_t tower_rank = 0;
    /// phi_k for 0 <= k < tower_rank: the values <<E^k>>_1 is forced to take.
    std::vector<TruncatedSeries> constrained;
    /// Integrability when unique; consistency of the remaining equations otherwise.
    CheckReport report;
};

/// Imposes <<E^k>>_1 = phi_k and solves for the gradient of F1.
GenusOnePrediction predict_genus1(const Genus1& g);

}  // namespace frobvir
