#include "ptd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ptd/error.hpp"

namespace ptd::io {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

const Json& member(const Json& object, const std::string& key, const std::string& path = "") {
  const std::string field = path.empty() ? key : path + "." + key;
  if (!object.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) fail(field, "missing");
  return *it;
}

std::size_t positive_size(const Json& object, const std::string& key) {
  const Json& v = member(object, key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    fail(key, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

double number_at(const Json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::vector<double> number_array(const Json& v, const std::string& field,
                                 std::optional<std::size_t> length) {
  if (!v.is_array()) fail(field, "expected an array");
  if (length && v.size() != *length) {
    fail(field, "expected " + std::to_string(*length) + " entries, found " +
                    std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number_at(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// re and im as rows x cols nested arrays; im may be omitted for real data.
ComplexMatrix complex_block(const Json& object, std::size_t rows, std::size_t cols,
                            const std::string& path) {
  auto read = [&](const std::string& key, std::vector<double>& into) {
    const std::string field = path.empty() ? key : path + "." + key;
    const Json& m = member(object, key, path);
    if (!m.is_array() || m.size() != rows) {
      fail(field, "expected " + std::to_string(rows) + " rows");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const auto row = number_array(m[r], field + "[" + std::to_string(r) + "]", cols);
      into.insert(into.end(), row.begin(), row.end());
    }
  };
  std::vector<double> re;
  std::vector<double> im;
  read("re", re);
  if (object.contains("im")) {
    read("im", im);
  } else {
    im.assign(re.size(), 0.0);
  }
  std::vector<Complex> data(re.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(data));
}

Json real_rows(const ComplexMatrix& m, bool imaginary) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json block_json(const ComplexMatrix& m) {
  Json j = Json::object();
  j["re"] = real_rows(m, false);
  j["im"] = real_rows(m, true);
  return j;
}

Json document(FileKind kind) {
  Json j = Json::object();
  j["kind"] = std::string(to_string(kind));
  return j;
}

void expect_kind(const Json& doc, FileKind kind) {
  const FileKind found = file_kind(doc);
  if (found != kind) {
    fail("kind", "expected \"" + std::string(to_string(kind)) + "\", found \"" +
                     std::string(to_string(found)) + "\"");
  }
}

std::vector<ComplexMatrix> operator_list(const Json& doc, const std::string& key,
                                         std::size_t rows, std::size_t cols) {
  const Json& list = member(doc, key);
  if (!list.is_array() || list.empty()) fail(key, "expected a non-empty array");
  std::vector<ComplexMatrix> out;
  for (std::size_t m = 0; m < list.size(); ++m) {
    out.push_back(complex_block(list[m], rows, cols, key + "[" + std::to_string(m) + "]"));
  }
  return out;
}

bool inline_array(const Json& v) {
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void emit_value(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        emit_value(value, indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (inline_array(v)) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          emit_value(v[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit_value(v[i], indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string_view to_string(FileKind kind) {
  switch (kind) {
    case FileKind::State: return "state";
    case FileKind::Operator: return "operator";
    case FileKind::KrausList: return "kraus_list";
    case FileKind::Povm: return "povm";
    case FileKind::Vector: return "vector";
  }
  return "unknown";
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte is one past the offending character
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": malformed text");
  }
}

std::string emit_json(const Json& value) {
  std::string out;
  emit_value(value, 0, out);
  out += "\n";
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

FileKind file_kind(const Json& doc) {
  const Json& kind = member(doc, "kind");
  if (!kind.is_string()) fail("kind", "expected a string");
  const auto name = kind.get<std::string>();
  for (FileKind k : {FileKind::State, FileKind::Operator, FileKind::KrausList, FileKind::Povm,
                     FileKind::Vector}) {
    if (name == to_string(k)) return k;
  }
  fail("kind", "unknown kind \"" + name + "\"");
}

ComplexMatrix parse_state_matrix(std::string_view text) {
  const Json doc = parse_json(text);
  expect_kind(doc, FileKind::State);
  const std::size_t dim = positive_size(doc, "dim");
  return complex_block(doc, dim, dim, "");
}

DensityMatrix parse_state(std::string_view text, double tol) {
  return DensityMatrix::validate(parse_state_matrix(text), tol);
}

ComplexMatrix parse_operator(std::string_view text) {
  const Json doc = parse_json(text);
  expect_kind(doc, FileKind::Operator);
  return complex_block(doc, positive_size(doc, "rows"), positive_size(doc, "cols"), "");
}

std::vector<ComplexMatrix> parse_kraus_operators(std::string_view text) {
  const Json doc = parse_json(text);
  expect_kind(doc, FileKind::KrausList);
  const std::size_t dim_in = positive_size(doc, "dim_in");
  const std::size_t dim_out = positive_size(doc, "dim_out");
  return operator_list(doc, "operators", dim_out, dim_in);
}

KrausChannel parse_kraus(std::string_view text) {
  return KrausChannel::build(parse_kraus_operators(text));
}

Povm parse_povm(std::string_view text) {
  const Json doc = parse_json(text);
  expect_kind(doc, FileKind::Povm);
  const std::size_t dim = positive_size(doc, "dim");
  return Povm::validate(operator_list(doc, "elements", dim, dim));
}

std::vector<double> parse_vector(std::string_view text) {
  const Json doc = parse_json(text);
  expect_kind(doc, FileKind::Vector);
  return number_array(member(doc, "values"), "values", std::nullopt);
}

Json state_json(const ComplexMatrix& rho) {
  Json j = document(FileKind::State);
  j["dim"] = rho.rows();
  j["re"] = real_rows(rho, false);
  j["im"] = real_rows(rho, true);
  return j;
}

Json operator_json(const ComplexMatrix& m) {
  Json j = document(FileKind::Operator);
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = real_rows(m, false);
  j["im"] = real_rows(m, true);
  return j;
}

Json kraus_json(std::span<const ComplexMatrix> kraus) {
  Json j = document(FileKind::KrausList);
  j["dim_in"] = kraus.empty() ? 0 : kraus.front().cols();
  j["dim_out"] = kraus.empty() ? 0 : kraus.front().rows();
  j["operators"] = Json::array();
  for (const auto& e : kraus) j["operators"].push_back(block_json(e));
  return j;
}

Json povm_json(std::span<const ComplexMatrix> elements) {
  Json j = document(FileKind::Povm);
  j["dim"] = elements.empty() ? 0 : elements.front().rows();
  j["elements"] = Json::array();
  for (const auto& m : elements) j["elements"].push_back(block_json(m));
  return j;
}

Json vector_json(std::span<const double> values) {
  Json j = document(FileKind::Vector);
  j["values"] = Json::array();
  for (double v : values) j["values"].push_back(v);
  return j;
}

std::string emit_state(const DensityMatrix& rho) { return emit_json(state_json(rho.matrix())); }
std::string emit_state(const ComplexMatrix& rho) { return emit_json(state_json(rho)); }
std::string emit_operator(const ComplexMatrix& m) { return emit_json(operator_json(m)); }
std::string emit_kraus(const KrausChannel& channel) { return emit_kraus(channel.kraus()); }
std::string emit_kraus(std::span<const ComplexMatrix> kraus) {
  return emit_json(kraus_json(kraus));
}
std::string emit_povm(const Povm& povm) { return emit_json(povm_json(povm.elements())); }
std::string emit_vector(std::span<const double> values) {
  return emit_json(vector_json(values));
}

std::string canonicalize(std::string_view text) {
  switch (file_kind(parse_json(text))) {
    case FileKind::State: return emit_state(parse_state_matrix(text));
    case FileKind::Operator: return emit_operator(parse_operator(text));
    case FileKind::KrausList: return emit_kraus(parse_kraus_operators(text));
    case FileKind::Povm: {
      const Json doc = parse_json(text);
      const std::size_t dim = positive_size(doc, "dim");
      return emit_json(povm_json(operator_list(doc, "elements", dim, dim)));
    }
    case FileKind::Vector: return emit_vector(parse_vector(text));
  }
  return {};
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, std::string_view text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::ParseError, "write to '" + path + "' failed");
}

std::string emit_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      out += cells[i];
    }
    out += "\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
  return out;
}

}  // namespace ptd::io
