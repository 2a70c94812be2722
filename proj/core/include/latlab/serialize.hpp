#pragma once

#include <string>

#include "latlab/forms.hpp"
#include "latlab/lattice.hpp"

namespace latlab {

// LatticeBasis wire format:
//   {"k": int, "mode": "exact"|"float", "columns": [[...], ...]}
// with entries as numbers in float mode and "p/q" strings in exact mode.
std::string lattice_to_json(const LatticeBasis& b);
LatticeBasis lattice_from_json(const std::string& text);

// Plain matrix files (shear inputs, forms matrices):
//   {"k": int, "rows": [[...], ...]}
std::string matrix_to_json(const MatD& m);
MatD matrix_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& body);

}  // namespace latlab
