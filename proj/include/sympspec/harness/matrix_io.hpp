#pragma once
// Matrix files: JSON {"dim": N, "entries": [[...], ...]} (rectangular input
// may give "rows"/"cols" instead of "dim") or plain CSV rows.

#include <string>

#include <json.hpp>

#include "sympspec/error.hpp"
#include "sympspec/linalg/matrix.hpp"

namespace sympspec::harness {

/// Malformed input file: unreadable, bad JSON/CSV, ragged rows, non-numeric
/// entries, declared size not matching the entries.
class ParseError : public Error {
 public:
  using Error::Error;
};

linalg::Matrix parse_matrix_json(const std::string& text);
linalg::Matrix parse_matrix_csv(const std::string& text);

/// Chooses the format by extension (.csv) or, failing that, by whether the
/// first non-blank character is '{'.
linalg::Matrix read_matrix(const std::string& path);

nlohmann::json matrix_to_json(const linalg::Matrix& m);
nlohmann::json vector_to_json(const linalg::Vector& v);

void write_text(const std::string& path, const std::string& text);

}  // namespace sympspec::harness
