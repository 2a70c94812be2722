#pragma once

#include <stdexcept>
#include <string>

namespace latlab {

// Contract violations: bad arguments, unmet preconditions, exceeded budgets.
// The CLI maps these to exit code 2.
class contract_error : public std::invalid_argument {
public:
  explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numeric failures: degenerate bases, overflow, lost pivots.
// The CLI maps these to exit code 3.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// CUV factorization pivot loss (input outside the factorizable neighborhood).
class decomposition_error : public numeric_error {
public:
  explicit decomposition_error(const std::string& what) : numeric_error(what) {}
};

// Scan budgets (box too large etc.).
class budget_error : public contract_error {
public:
  explicit budget_error(const std::string& what) : contract_error(what) {}
};

// find_shear_time called on an element of L (no shear direction available).
class no_shear_error : public contract_error {
public:
  explicit no_shear_error(const std::string& what) : contract_error(what) {}
};

}  // namespace latlab
