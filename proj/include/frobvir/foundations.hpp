#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobvir/frobenius.hpp"
#include "frobvir/report.hpp"

namespace frobvir {

/// Residuals of eta(a.b, m.n) - eta(a.m, b.n) for a < n, b < m.
std::vector<std::pair<std::string, TruncatedSeries>> wdvv_residuals(const Frobenius& fr);

/// Associativity. `order` lowers the verified order when given.
CheckReport check_wdvv(const Frobenius& fr, std::optional<int> order = std::nullopt);
CheckReport check_string(const Frobenius& fr);
/// gamma_1 is the identity and the product commutes on sample fields.
CheckReport check_quantum_product(const Frobenius& fr);
CheckReport check_quasi_homogeneity(const Frobenius& fr);
/// Components of E^k against <<gamma_1 E^k gamma^a>> for k <= max_k.
CheckReport check_euler_coefficients(const Frobenius& fr, int max_k = 4);
/// [E^k, E^m] - (m - k) E^{m+k-1}.
CheckReport check_euler_bracket(const Frobenius& fr, int k, int m);
/// Product rule, Euler derivative, Euler-power derivative, derived WDVV
/// exchanges and the index half-sum. Empty `samples` selects the defaults.
CheckReport check_derivative_identities(const Frobenius& fr, const std::vector<VectorField>& samples = {});
CheckReport check_borisov(const Frobenius& fr);

/// Default sample fields: basis fields (a subset when N > 6), E and E^2.
std::vector<VectorField> default_samples(const Frobenius& fr);
/// Basis indices used for sampling: all when N <= 6, else a fixed subset.
std::vector<std::size_t> sample_indices(const Frobenius& fr);

/// Scalar residual 1/2 sum b(1 - b) - (b_1 + 1) chi / 12 + c1_cd1 / 12.
Rational borisov_residual(const ModelSpec& model);

}  // namespace frobvir
