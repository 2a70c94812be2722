#include "latlab/serialize.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace latlab {

using nlohmann::json;

std::string lattice_to_json(const LatticeBasis& b) {
  json j;
  j["k"] = b.k();
  if (b.mode() == Mode::Exact) {
    j["mode"] = "exact";
    const MatQ& m = b.exact_basis();
    json cols = json::array();
    for (int c = 0; c < m.n(); ++c) {
      json col = json::array();
      for (int r = 0; r < m.n(); ++r) col.push_back(rat_to_string(m(r, c)));
      cols.push_back(col);
    }
    j["columns"] = cols;
  } else {
    j["mode"] = "float";
    const MatD& m = b.float_basis();
    json cols = json::array();
    for (int c = 0; c < m.n(); ++c) {
      json col = json::array();
      for (int r = 0; r < m.n(); ++r) col.push_back(m(r, c));
      cols.push_back(col);
    }
    j["columns"] = cols;
  }
  return j.dump(2);
}

LatticeBasis lattice_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw contract_error(std::string("lattice_from_json: ") + e.what());
  }
  if (!j.contains("k") || !j.contains("mode") || !j.contains("columns"))
    throw contract_error("lattice_from_json: need fields k, mode, columns");
  const int k = j["k"].get<int>();
  const std::string mode = j["mode"].get<std::string>();
  const auto& cols = j["columns"];
  if (static_cast<int>(cols.size()) != k)
    throw contract_error("lattice_from_json: column count mismatch");
  if (mode == "exact") {
    MatQ m(k);
    for (int c = 0; c < k; ++c) {
      if (static_cast<int>(cols[c].size()) != k)
        throw contract_error("lattice_from_json: ragged column");
      for (int r = 0; r < k; ++r)
        m(r, c) = cols[c][r].is_string() ? rat_from_string(cols[c][r].get<std::string>())
                                         : Rational(cols[c][r].get<double>());
    }
    return LatticeBasis(std::move(m));
  }
  if (mode != "float") throw contract_error("lattice_from_json: mode must be float or exact");
  MatD m(k);
  for (int c = 0; c < k; ++c) {
    if (static_cast<int>(cols[c].size()) != k)
      throw contract_error("lattice_from_json: ragged column");
    for (int r = 0; r < k; ++r) m(r, c) = cols[c][r].get<double>();
  }
  return LatticeBasis(std::move(m));
}

std::string matrix_to_json(const MatD& m) {
  json j;
  j["k"] = m.n();
  json rows = json::array();
  for (int r = 0; r < m.n(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.n(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2);
}

MatD matrix_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw contract_error(std::string("matrix_from_json: ") + e.what());
  }
  if (!j.contains("k") || !j.contains("rows"))
    throw contract_error("matrix_from_json: need fields k, rows");
  const int k = j["k"].get<int>();
  const auto& rows = j["rows"];
  if (static_cast<int>(rows.size()) != k) throw contract_error("matrix_from_json: row count mismatch");
  MatD m(k);
  for (int r = 0; r < k; ++r) {
    if (static_cast<int>(rows[r].size()) != k) throw contract_error("matrix_from_json: ragged row");
    for (int c = 0; c < k; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw contract_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw contract_error("cannot open '" + path + "' for writing");
  out << body;
}

}  // namespace latlab
