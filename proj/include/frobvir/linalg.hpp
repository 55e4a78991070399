#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "frobvir/rational.hpp"
#include "frobvir/series.hpp"

namespace frobvir {

using RationalMatrix = std::vector<std::vector<Rational>>;
using SeriesVector = std::vector<TruncatedSeries>;
using SeriesMatrix = std::vector<SeriesVector>;

RationalMatrix identity_matrix(std::size_t n);
/// nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);
std::size_t rank(RationalMatrix m);
RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

/// Constant-term matrix of a series matrix.
RationalMatrix constant_part(const SeriesMatrix& m);

/// Terms of exactly weighted degree `degree`, at the series' valid order.
TruncatedSeries homogeneous_part(const TruncatedSeries& s, int degree);

int min_valid_order(const SeriesVector& v);
int min_valid_order(const SeriesMatrix& m);

SeriesVector multiply(const SeriesMatrix& a, const SeriesVector& x);
SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b);

/// Rank of a list of series vectors at a generic point of the formal
/// neighbourhood of the origin, using the coefficients up to `order`.
///
/// Each vector is restricted to weighted lines x_i = c_i * lambda^{w_i}
/// through deterministic pseudo-random directions and eliminated over the
/// truncated power series ring in lambda. The result never exceeds the true
/// generic rank and is monotone in `order`.
std::size_t coefficient_rank(const std::vector<SeriesVector>& vectors, int order);

/// Solves a * x = b for x where a is rows x cols (rows >= cols), order by
/// order. A cols x cols minor of the constant-term matrix must be invertible;
/// otherwise SingularLeadingMatrixError. Every row is checked afterwards and a
/// nonzero residual raises InconsistentSystemError naming the lowest order.
SeriesVector solve_series_system(const SeriesMatrix& a, const SeriesVector& b);

/// Determinant by expansion over column subsets (exponential in size).
TruncatedSeries determinant(const SeriesMatrix& m);

/// Coefficients c_0..c_n (c_n = 1) of det(x I - m).
SeriesVector characteristic_polynomial(const SeriesMatrix& m);

/// Sylvester matrix of p and q given by ascending coefficient lists.
SeriesMatrix sylvester_matrix(const SeriesVector& p, const SeriesVector& q);
TruncatedSeries resultant(const SeriesVector& p, const SeriesVector& q);

/// Ascending coefficients of the formal derivative.
SeriesVector polynomial_derivative(const SeriesVector& p);

}  // namespace frobvir
