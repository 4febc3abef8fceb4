#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptd/channels.hpp"
#include "ptd/matrix.hpp"
#include "ptd/measurements.hpp"
#include "ptd/states.hpp"

// Text formats. Every file is a JSON object with a "kind" field:
//   state       dim, re, im             (dim x dim)
//   operator    rows, cols, re, im
//   kraus_list  dim_in, dim_out, operators: [{re, im}]   (dim_out x dim_in each)
//   povm        dim, elements: [{re, im}]
//   vector      values
// The canonical emitter writes keys in that order, two-space indentation,
// numeric arrays on one line, and doubles with 17 significant digits, so
// emit(parse(f)) == f for any emitted file.
namespace ptd::io {

using Json = nlohmann::ordered_json;

enum class FileKind { State, Operator, KrausList, Povm, Vector };
std::string_view to_string(FileKind kind);

// Throws ParseError carrying "line L, column C".
Json parse_json(std::string_view text);
std::string emit_json(const Json& value);

// "%.17g"; negative zero prints as 0.
std::string format_number(double value);

// Throws ParseError when "kind" is missing or unknown.
FileKind file_kind(const Json& document);

// Structural errors throw ParseError naming the offending field, e.g.
// "re[1][0]"; validation errors come from the module validators.
ComplexMatrix parse_state_matrix(std::string_view text);
DensityMatrix parse_state(std::string_view text, double tol = kStateTolerance);
ComplexMatrix parse_operator(std::string_view text);
std::vector<ComplexMatrix> parse_kraus_operators(std::string_view text);
KrausChannel parse_kraus(std::string_view text);
Povm parse_povm(std::string_view text);
std::vector<double> parse_vector(std::string_view text);

Json state_json(const ComplexMatrix& rho);
Json operator_json(const ComplexMatrix& m);
Json kraus_json(std::span<const ComplexMatrix> kraus);
Json povm_json(std::span<const ComplexMatrix> elements);
Json vector_json(std::span<const double> values);

std::string emit_state(const DensityMatrix& rho);
std::string emit_state(const ComplexMatrix& rho);
std::string emit_operator(const ComplexMatrix& m);
std::string emit_kraus(const KrausChannel& channel);
std::string emit_kraus(std::span<const ComplexMatrix> kraus);
std::string emit_povm(const Povm& povm);
std::string emit_vector(std::span<const double> values);

// Parses any file kind structurally (no validation) and re-emits it.
std::string canonicalize(std::string_view text);

// "-" reads stdin / writes stdout. I/O failures throw ParseError.
std::string read_text(const std::string& path);
void write_text(const std::string& path, std::string_view text);

// Comma-separated table; cells are written verbatim.
std::string emit_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace ptd::io
