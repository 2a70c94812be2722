#pragma once

#include <optional>
#include <span>
#include <vector>

#include "latlab/lattice.hpp"

namespace latlab {

// Rows are the linear forms; the product of the k forms is the scan target.
struct FormsMatrix {
  MatD m;

  explicit FormsMatrix(MatD mm) : m(std::move(mm)) {
    if (m.n() < 2) throw contract_error("FormsMatrix: need k >= 2");
    if (std::fabs(m.det() - 1.0) > 1e-9)
      throw contract_error("FormsMatrix: matrix must be unimodular");
  }
  int k() const { return m.n(); }
};

// f_m(x) = prod_i (row_i . x)
double f_m_eval(const FormsMatrix& m, std::span<const long long> x);

struct FormsScanResult {
  double min_abs;
  std::vector<long long> argmin;  // sign-normalized, lexicographic tie-break
  long long evaluations;
  bool exact_zero;
};

// Exact minimum of |f_m| over 0 < ||x||_inf <= N, iterating by shells so an
// exact zero stops the scan early. Budget: N^k <= 1e9.
FormsScanResult forms_min_scan(const FormsMatrix& m, long long N);

struct FormWitness {
  std::vector<long long> x;
  double value;  // f_m(x)
  double bound;  // eps^k
};

// When delta(alpha^a m) < eps (sup norm), the short vector's coefficients
// give |f_m(x)| < eps^k. Returns nullopt when the orbit point is not yet
// that deep in the cusp.
std::optional<FormWitness> orbit_to_form_witness(const FormsMatrix& m, const DiagParam& a,
                                                 double eps);

}  // namespace latlab
