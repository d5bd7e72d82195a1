#pragma once

/*
 * JSON (de)serialization for every on-disk schema, plus locale-free number
 * formatting for text output.
 *
 *   matrix      {"rows": r, "cols": c, "data": [[re, im], ...]}  row-major
 *   polynomial  {"n": n, "m": m, "coeffs": [<matrix>, ...]}      A_0 first
 *   gen spec    {"family", "n", "m", "seed", "scale", "a", "b", "radius"}
 *   report      {"bound_id", "lhs", "rhs", "holds", "slack_ratio",
 *                "constants", "hypotheses_met", "failed_hypotheses"}
 *
 * Emission uses insertion-ordered objects so identical values serialize to
 * identical bytes.
 */

#include <string>

#include "json.hpp"
#include "polyspec/bounds.hpp"
#include "polyspec/genlab.hpp"

namespace polyspec {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

Json polynomial_to_json(const MatrixPolynomial& p);
MatrixPolynomial polynomial_from_json(const Json& j);

// Accepts either schema: a polynomial file is returned as is, a matrix
// file is wrapped as the degree-1 monic pencil z I - A.
MatrixPolynomial pencil_from_json(const Json& j);

Json report_to_json(const BoundReport& r);

Json genspec_to_json(const GenSpec& spec);
GenSpec genspec_from_json(const Json& j);

// Parses a file; wraps any syntax or schema problem in ParseError.
Json load_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

// Shortest text that round-trips the value (to_chars, up to 17 significant
// digits); locale independent.
std::string fmt_double(double v);

// "3+2i" / "1-0.5i" style.
std::string fmt_complex(Complex z);

}  // namespace polyspec
