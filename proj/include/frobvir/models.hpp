#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frobvir/model.hpp"

namespace frobvir {

struct BuiltinInfo {
    std::string name;
    std::string summary;
};

std::vector<BuiltinInfo> builtin_models();

/// Resolves point, cp1, cp2, curve-even, k3-full, k3-sublocus, M2..M6 (also
/// written M(n)). `genus` applies to curve-even only. Throws ValidationError
/// for unknown names.
ModelSpec builtin(const std::string& name, std::optional<int> order = std::nullopt, int genus = 2);

int default_order(const std::string& name);

ModelSpec make_point(int order);
ModelSpec make_cp1(int order);
/// Genus-0 potential built from the WDVV solver; no genus-1 potential.
ModelSpec make_cp2(int order);
ModelSpec make_curve_even(int genus, int order);
ModelSpec make_k3_full(int order);
ModelSpec make_k3_sublocus(int order);
/// Cohomology ring of CP^n viewed as a Frobenius manifold with trivial product deformation.
ModelSpec make_projective_ring(int n, int order);

/// Unknown-coefficient ansatz for a genus-0 potential: classical part plus
/// sum_d N_d * instanton(d).
struct WdvvTemplate {
    ModelSpec classical;
    /// Unit-coefficient degree-d contribution expanded to the given order.
    std::function<TruncatedSeries(int degree, int order)> instanton;
    /// Given N_1..N_s.
    std::vector<Rational> seeds;
    int max_degree = 1;
};

struct WdvvSolution {
    /// N_1..N_max.
    std::vector<Rational> coefficients;
    /// Weighted order at which each unknown was fixed (0 for seeds).
    std::vector<int> determining_orders;
    /// Assembled potential at verified_order.
    TruncatedSeries f0;
    /// Order of the independent WDVV re-check, one above the last determining order.
    int verified_order = 0;
};

/// Fixes the unknown coefficients one degree at a time by making the WDVV
/// residual vanish at the lowest order where each appears. Throws
/// InconsistentSystemError when no value works or ValidationError when the
/// residual does not depend on the unknown.
WdvvSolution solve_wdvv_potential(const WdvvTemplate& tpl);

/// CP^2 ansatz N_d q^d e^{d t2} t3^{3d-1+t3_shift}/(3d-1+t3_shift)! with q of weight 3.
WdvvTemplate cp2_template(int max_degree, std::vector<Rational> seeds = {Rational(1)}, int t3_shift = 0);
/// Potential of CP^2 from given N_1.. at the given order.
TruncatedSeries cp2_potential(const std::vector<Rational>& n, int order, int t3_shift = 0);

}  // namespace frobvir
