#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobvir/rational.hpp"
#include "frobvir/series.hpp"

namespace frobvir {

enum class Status { Pass, Fail, ExpectedFail, Skipped, Undetermined };

std::string to_string(Status s);

/// Lowest nonzero residual term.
struct Witness {
    std::string location;
    std::string monomial;
    Rational coefficient;
};

struct CheckReport {
    std::string name;
    std::string anchor;
    int order = 0;
    Status status = Status::Pass;
    std::optional<Witness> witness;
    std::string note;
    /// Set by the suite runner when the outcome contradicts the annotation.
    bool unexpected = false;
};

/// Accumulates residual series of one check and turns them into a report.
class Residuals {
public:
    void add(const std::string& location, const TruncatedSeries& residual);
    void add_scalar(const std::string& location, const Rational& residual);

    bool all_zero() const noexcept { return !witness_.has_value(); }
    /// Minimum valid order over everything added (0 when only scalars were added).
    int order() const noexcept;
    const std::optional<Witness>& witness() const noexcept { return witness_; }

    CheckReport report(std::string name, std::string anchor) const;

private:
    std::optional<int> order_;
    std::optional<Witness> witness_;
    int witness_degree_ = 0;
};

struct SuiteResult {
    std::string model;
    std::vector<CheckReport> checks;
    double seconds = 0;

    std::size_t count(Status s) const;
    std::size_t unexpected() const;
};

}  // namespace frobvir
