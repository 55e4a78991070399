#pragma once

#include <optional>
#include <string_view>

#include "frobvir/model.hpp"
#include "frobvir/report.hpp"

namespace frobvir {

enum class Suite { Foundations, Genus1, Span, All };

std::optional<Suite> parse_suite(std::string_view name);

/// Runs the checks of a suite in a fixed order. Library errors become
/// SKIPPED (missing data) or UNDETERMINED (truncation, singular systems).
/// Expected failures of the model turn FAIL into EXPECTED-FAIL; a check
/// annotated to fail that passes is flagged unexpected.
SuiteResult run_suite(const ModelSpec& model, Suite suite);

/// Applies the model's expected-failure annotations to one report.
void apply_expectation(const ModelSpec& model, CheckReport& report);

}  // namespace frobvir
