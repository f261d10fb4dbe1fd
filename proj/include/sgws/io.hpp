#pragma once

// JSON forms of decompositions and reports, and the textual coefficient
// format shared with the command line: a JSON list of [re, im] pairs whose
// entries are numbers or "p/q" rational strings.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sgws/complex_dense.hpp"
#include "sgws/sep.hpp"

namespace sgws::io {

using json = nlohmann::ordered_json;

/// Parses a decimal number or a rational "p/q".
double parse_real(std::string_view text);

/// Parses "[[re, im], ...]"; entries may be numbers or strings accepted by
/// parse_real.
std::vector<cplx> parse_coefficients(std::string_view text);

/// Row-major list of [re, im] pairs.
json matrix_to_json(const ComplexDense& m);
ComplexDense matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

/// {"d", "N", "terms": [{"weight", "factors": [[[re, im], ...], ...]}]}.
json to_json(const sep::ProductDecomposition& decomposition);
sep::ProductDecomposition decomposition_from_json(const json& j);

json to_json(const sep::Verification& verification);
json to_json(const sep::ToleranceRecord& tolerances);
/// Includes per-subsystem digit tuples of n, m, mu, nu for local dimension d.
json to_json(const sep::CsViolation& violation, std::size_t d, std::size_t N);
json to_json(const sep::PptResult& result);
json coefficients_to_json(const std::vector<cplx>& alpha);

}  // namespace sgws::io
