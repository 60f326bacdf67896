#pragma once

#include <string>

#include <json.hpp>

#include "barg/bargmann.hpp"
#include "barg/fock.hpp"
#include "barg/grid.hpp"
#include "barg/hermite.hpp"
#include "barg/stft.hpp"
#include "barg/verify.hpp"

namespace barg {

using json = nlohmann::ordered_json;

/// Coefficient maps serialize as {"dim", "max_degree", "coeffs": [{"alpha":
/// [..], "re": .., "im": ..}, ..]} with entries in graded lexicographic
/// order; entire-side coefficients additionally carry "space": "fock".
json expansion_to_json(const HermiteExpansion& e);
json taylor_to_json(const TaylorCoeffs& t);
HermiteExpansion expansion_from_json(const json& j);
TaylorCoeffs taylor_from_json(const json& j);

/// Grid descriptor {"x_axes": [{"half_width", "n"}, ..], "xi_axes": [..]}.
json grid_to_json(const PhaseGrid& grid);
PhaseGrid grid_from_json(const json& j);

/// Covering family {"R_max", "max_overlap", "balls": [{"center": [re, im],
/// "radius"}, ..]}.
json cover_to_json(const BallCover& cover);

/// Suite report {"schema": 1, "suite", "checks": [{"name", "passed",
/// "measured", "tolerance"}, ..]}; checks keep their canonical (sorted)
/// order, so serialization is byte-identical across runs.
json report_to_json(const SuiteReport& report);

/// Writes text to a file, creating parent directories; throws
/// std::invalid_argument when the path cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

/// Signal rows "x,re,im" under a header line (one dimension).
void write_signal_csv(const std::string& path, const Signal& f);
Signal read_signal_csv(const std::string& path);

/// Phase-field rows "x,xi,re,im" in grid flat order under a header line
/// (one dimension).
void write_phase_field_csv(const std::string& path, const PhaseField& F);
PhaseField read_phase_field_csv(const std::string& path);

/// Appends "name,p,q,weight,value" (12 significant digits, header created
/// on first use).
void append_norm_row(const std::string& path, const std::string& name,
                     double p, double q, const std::string& weight,
                     double value);

/// Formats a value with 12 significant digits, as printed by the norm
/// commands.
std::string format_norm_value(double value);

}  // namespace barg
