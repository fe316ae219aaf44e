#include "ginv/io.hpp"

#include <json.hpp>

namespace ginv {

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw parse_error("field " + field + ": " + what);
}

double number_at(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

}  // namespace

AlgebraElement parse_element(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw parse_error("line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) field_error("<root>", "expected an object");
  if (!doc.contains("shape")) field_error("shape", "missing");
  if (!doc.contains("blocks")) field_error("blocks", "missing");
  const json& shape = doc["shape"];
  if (!shape.is_array() || shape.empty()) field_error("shape", "expected a nonempty array of block sizes");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const std::string f = "shape[" + std::to_string(i) + "]";
    if (!shape[i].is_number_integer() && !shape[i].is_number_unsigned()) field_error(f, "expected an integer");
    const auto v = shape[i].get<long long>();
    if (v < 1) throw validation_error("field " + f + ": block size must be at least 1");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  const json& blocks = doc["blocks"];
  if (!blocks.is_array()) field_error("blocks", "expected an array");
  if (blocks.size() != sizes.size())
    throw validation_error("field blocks: " + std::to_string(blocks.size()) + " blocks for " +
                           std::to_string(sizes.size()) + " shape entries");
  std::vector<ComplexMatrix> mats;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string fb = "blocks[" + std::to_string(b) + "]";
    const json& rows = blocks[b];
    if (!rows.is_array()) field_error(fb, "expected an array of rows");
    const std::size_t n = sizes[b];
    if (rows.size() != n) throw validation_error("field " + fb + ": expected " + std::to_string(n) + " rows");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string fr = fb + "[" + std::to_string(i) + "]";
      if (!rows[i].is_array()) field_error(fr, "expected an array of entries");
      if (rows[i].size() != n) throw validation_error("field " + fr + ": expected " + std::to_string(n) + " entries");
      for (std::size_t j = 0; j < n; ++j) {
        const std::string fe = fr + "[" + std::to_string(j) + "]";
        const json& e = rows[i][j];
        if (!e.is_array() || e.size() != 2) field_error(fe, "expected a [re, im] pair");
        m(i, j) = {number_at(e[0], fe + "[0]"), number_at(e[1], fe + "[1]")};
      }
    }
    if (!m.all_finite()) throw validation_error("field " + fb + ": entries must be finite");
    mats.push_back(std::move(m));
  }
  return {AlgebraShape(std::move(sizes)), std::move(mats)};
}

std::string serialize_element(const AlgebraElement& a) {
  json doc;
  doc["shape"] = json::array();
  for (std::size_t n : a.shape().block_sizes()) doc["shape"].push_back(n);
  doc["blocks"] = json::array();
  for (const ComplexMatrix& m : a.blocks()) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
      rows.push_back(std::move(row));
    }
    doc["blocks"].push_back(std::move(rows));
  }
  return doc.dump();
}

}  // namespace ginv
