#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace latlab {

// Deterministic CSV accumulator: %.17g round-trips doubles exactly, so data
// files reproduce byte-for-byte under identical configs.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
  static std::string num(long long v) { return std::to_string(v); }
  static std::string flag(bool b) { return b ? "1" : "0"; }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out += ',';
      out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace latlab
