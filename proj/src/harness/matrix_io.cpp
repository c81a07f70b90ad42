#include "sympspec/harness/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sympspec::harness {

using linalg::Matrix;
using nlohmann::json;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ParseError("matrix has no entries");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw ParseError("ragged matrix: row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(m.cols()));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(rows[i][j])) throw ParseError("non-finite matrix entry");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

std::size_t size_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("\"") + key + "\" must be a count");
  return v.get<std::size_t>();
}

}  // namespace

Matrix parse_matrix_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("entries")) throw ParseError("matrix JSON needs \"entries\"");
  const auto& e = j["entries"];
  if (!e.is_array()) throw ParseError("\"entries\" must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : e) {
    if (!row.is_array()) throw ParseError("\"entries\" must be an array of rows");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw ParseError("non-numeric matrix entry");
      r.push_back(x.get<double>());
    }
    rows.push_back(std::move(r));
  }
  Matrix m = from_rows(rows);
  if (j.contains("dim")) {
    const std::size_t dim = size_field(j, "dim");
    if (m.rows() != dim || m.cols() != dim) {
      throw ParseError("\"dim\" is " + std::to_string(dim) + " but entries are " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
  }
  if (j.contains("rows") && size_field(j, "rows") != m.rows()) throw ParseError("\"rows\" mismatch");
  if (j.contains("cols") && size_field(j, "cols") != m.cols()) throw ParseError("\"cols\" mismatch");
  return m;
}

Matrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw ParseError("empty CSV cell");
      const std::string tok = cell.substr(b, e - b + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("non-numeric CSV cell '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("non-numeric CSV cell '" + tok + "'");
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  return from_rows(rows);
}

Matrix read_matrix(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const bool csv_ext = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv_ext) return parse_matrix_csv(text);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_csv(text);
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  json out;
  if (m.is_square()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["entries"] = std::move(rows);
  return out;
}

json vector_to_json(const linalg::Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed: " + path);
}

}  // namespace sympspec::harness
