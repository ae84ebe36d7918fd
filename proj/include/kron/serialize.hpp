#pragma once

/// JSON / CSV / matrix-file formats for the CLI and the harness.
///
/// Matrix files are row-major text, one row per line, entries separated by
/// whitespace; "p/q" (or plain integers / decimals) in exact mode, decimals
/// in float mode. Exact rationals serialize to "p/q" strings in JSON.

#include <string>
#include <vector>

#include <json.hpp>

#include "kron/lattice_space.hpp"
#include "kron/torus_gaps.hpp"

namespace kron {

using Json = nlohmann::ordered_json;

Json direction_to_json(const DirectionSet& dir);
Json lattice_to_json(const LatticeBasis& basis);

Json report_to_json(const KroneckerConfig& config, const GapReportQ& rep);
Json report_to_json(const KroneckerConfig& config, const GapReportF& rep);

/// Parses a square matrix from a text file.
MatQ parse_matrix_file_q(const std::string& path);
MatF parse_matrix_file_f(const std::string& path);

/// Parses a d x d lattice basis file in the requested mode (validates the
/// unimodularity invariant).
LatticeBasis parse_lattice_file(const std::string& path, Mode mode);

}  // namespace kron
