#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frobvir/frobenius.hpp"
#include "frobvir/genus1.hpp"
#include "frobvir/report.hpp"

namespace frobvir {

/// E^{n+1} = sum_{i <= n} f_i E^i with E^0..E^n generically independent.
struct EulerSpan {
    std::size_t n = 0;
    std::vector<TruncatedSeries> f;
    /// E^0 .. E^{n+1}.
    std::vector<VectorField> tower;
    /// Order whose coefficients were used for the rank decision.
    int rank_order = 0;
};

/// Smallest n with E^{n+1} in the generic span of E^0..E^n. Throws
/// SingularLeadingMatrixError when the base point is too special.
EulerSpan minimal_euler_relation(const Frobenius& fr, std::optional<std::size_t> max_n = std::nullopt);

/// Residuals of the derivative laws for f_i under E^0, E, E^2 and E^k (k <= 3).
CheckReport check_f_recursion(const Frobenius& fr, const EulerSpan& span);

/// Z_k = sum_i (E^k f_i) E^i.
VectorField Z_field(const Frobenius& fr, const EulerSpan& span, int k);
/// Z_k = E^k . Z_0 for 0 <= k <= n and Z_{n+1+k} = sum_i f_i Z_{i+k} for k <= 1.
CheckReport check_z_fields(const Frobenius& fr, const EulerSpan& span);
/// Z_k h_2 = 0 for 0 <= k <= n.
CheckReport check_z_annihilates_h2(const Genus1& g, const EulerSpan& span);

/// phi_{m+n+1} - sum_k f_k phi_{m+k}.
TruncatedSeries philinear_residual(const Genus1& g, const EulerSpan& span, int m);
CheckReport check_philinear(const Genus1& g, const EulerSpan& span, int max_m = 2);

/// Ascending coefficients of p_t(x) = x^{n+1} - sum f_i x^i.
std::vector<TruncatedSeries> relation_polynomial(const EulerSpan& span);

/// A_{ij} = E^{n-i} f_{n-j}, built through the derivative recursion for f_i.
SeriesMatrix resultant_matrix(const Frobenius& fr, const EulerSpan& span);

struct ResultantEvidence {
    TruncatedSeries resultant;
    TruncatedSeries det_a;
    bool agree = false;
    bool nonzero = false;
};
ResultantEvidence resultant_criterion(const Frobenius& fr, const EulerSpan& span);

struct SemisimplicityEvidence {
    /// det(x - E.) in ascending coefficients.
    std::vector<TruncatedSeries> characteristic;
    /// Set when n + 1 = N: whether the characteristic polynomial equals p_t.
    std::optional<bool> matches_relation;
    bool square_free = false;
};
SemisimplicityEvidence semisimplicity_check(const Frobenius& fr, const EulerSpan& span);

enum class Verdict { SemisimpleType, NonDegenerate, Degenerate, Undetermined };
std::string to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::Undetermined;
    /// Non-degenerate and semisimple-type at once; never set without non-degeneracy.
    bool semisimple = false;
    std::string witness;
    std::size_t n = 0;
    /// Whether the resultant equals det A.
    std::optional<bool> resultant_agrees;
};

/// Decision procedure: span dimension <= 2, nonzero resultant, then a search for
/// E^m in the span of E^0 and the Z_k up to mmax (default 2n + 2).
Classification classify(const Frobenius& fr, std::optional<int> mmax = std::nullopt);

}  // namespace frobvir
