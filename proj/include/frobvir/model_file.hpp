#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "frobvir/model.hpp"

namespace frobvir {

/// Parses the line-oriented model format. Potentials are read in original
/// coordinates and recentred at the base point; the result is validated.
/// Throws ParseError (with line and column) or ValidationError.
ModelSpec parse_model(std::string_view text);
ModelSpec load_model(const std::filesystem::path& path);

/// Writes a model in the same format, potentials in original coordinates.
/// Builtin metadata (expected failures, description) is not written.
std::string serialize_model(const ModelSpec& model);

/// One `coeff ; var^e ...` line per term, ordered as TruncatedSeries::to_string.
std::string serialize_terms(const TruncatedSeries& s);

}  // namespace frobvir
